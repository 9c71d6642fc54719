"""On-disk cache for transition matrices.

Files are JSON, named by a sha256 of (rectangle, class member, mode) and
written via a temporary file plus an atomic rename, so concurrent writers
never expose a half-written entry.  Unreadable or tampered files are treated
as misses and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path

from .diagrams import Bipartition
from .exactfield import parse
from .regbasis import TransitionMatrix
from .spectrum import EquivClass

ENV_VAR = "JACKLAURENT_CACHE_DIR"
FORMAT = 1


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "jacklaurent"


def resolve_cache_dir(configured: str | os.PathLike | None) -> Path:
    """The environment variable wins over the configured directory."""
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    if configured:
        return Path(configured)
    return default_cache_dir()


def _digest(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


class ResultCache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = None if root is None else Path(root)
        self._warned = False

    @staticmethod
    def key(E: EquivClass, mode_tag: str) -> str:
        return _digest({"rect": [E.pt.n, E.pt.m], "member": E.alpha_min.to_json(), "mode": mode_tag})

    def _path(self, key: str, mode_tag: str) -> Path:
        # probe results live apart from exact ones
        sub = "exact" if mode_tag == "exact" else "probe"
        return self.root / sub / f"{key}.json"

    def _warn(self, exc: OSError):
        if not self._warned:
            warnings.warn(f"cache disabled: {exc}", RuntimeWarning, stacklevel=3)
            self._warned = True
        self.root = None

    def load_matrix(self, E: EquivClass, mode_tag: str, k) -> TransitionMatrix | None:
        if self.root is None:
            return None
        path = self._path(self.key(E, mode_tag), mode_tag)
        try:
            doc = json.loads(path.read_text())
            body = doc["body"]
            if doc.get("format") != FORMAT or doc.get("sha256") != _digest(body):
                return None
            if body["mode"] != mode_tag or [Bipartition.from_json(b) for b in body["basis"]] != list(E.members):
                return None
            entries = tuple(tuple(parse(x) for x in row) for row in body["entries"])
        except (OSError, ValueError, KeyError, TypeError):
            return None
        return TransitionMatrix(E, entries, k)

    def store_matrix(self, A: TransitionMatrix, mode_tag: str) -> None:
        if self.root is None:
            return
        body = dict(A.to_json(), mode=mode_tag)
        doc = {"format": FORMAT, "sha256": _digest(body), "body": body}
        path = self._path(self.key(A.E, mode_tag), mode_tag)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump(doc, fh, sort_keys=True)
                os.replace(tmp, path)
            except BaseException:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise
        except OSError as exc:
            self._warn(exc)
