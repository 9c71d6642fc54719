"""Young diagrams, bipartitions and the box-set geometry inside a rectangle.

Boxes are ``(i, j)`` with 1-based row ``i`` (growing downward) and column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

BoxSet = frozenset


class Box(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "∅"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, r: int) -> int:
        """lambda_r with the convention lambda_r = 0 outside 1..length."""
        return self.parts[r - 1] if 1 <= r <= len(self.parts) else 0

    def conj_part(self, j: int) -> int:
        return sum(1 for p in self.parts if p >= j) if j >= 1 else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(self.conj_part(j) for j in range(1, self.parts[0] + 1)))

    def boxes(self) -> frozenset[Box]:
        return frozenset(Box(i, j) for i, p in enumerate(self.parts, 1) for j in range(1, p + 1))

    def __contains__(self, x) -> bool:
        i, j = x
        return i >= 1 and j >= 1 and self.part(i) >= j

    def removable(self) -> list[Box]:
        return [Box(i, p) for i, p in enumerate(self.parts, 1) if self.part(i + 1) < p]

    def addable(self) -> list[Box]:
        out = []
        for i in range(1, len(self.parts) + 2):
            j = self.part(i) + 1
            if i == 1 or self.part(i - 1) >= j:
                out.append(Box(i, j))
        return out

    def add_box(self, x) -> "Partition | None":
        if x in self:
            return None
        return from_boxes(self.boxes() | {Box(*x)})

    def remove_box(self, x) -> "Partition | None":
        if x not in self:
            return None
        return from_boxes(self.boxes() - {Box(*x)})

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = Partition(())


def is_young(s: Iterable) -> bool:
    return from_boxes(s) is not None


def from_boxes(s: Iterable) -> Partition | None:
    """The partition whose box set is ``s``, or None if ``s`` is not Young."""
    s = set(s)
    if not s:
        return EMPTY
    rows: dict[int, int] = {}
    for i, j in s:
        if i < 1 or j < 1:
            return None
        rows[i] = rows.get(i, 0) + 1
    n = max(rows)
    parts = [rows.get(i, 0) for i in range(1, n + 1)]
    if any(p == 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        return None
    for i, j in s:
        if j > parts[i - 1]:
            return None
    return Partition(tuple(parts))


@dataclass(frozen=True)
class Rectangle:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("rectangle needs n >= 1 and m >= 1")

    def boxes(self) -> frozenset[Box]:
        return frozenset(Box(i, j) for i in range(1, self.n + 1) for j in range(1, self.m + 1))

    def partition(self) -> Partition:
        return Partition((self.m,) * self.n)

    def __contains__(self, x) -> bool:
        i, j = x
        return 1 <= i <= self.n and 1 <= j <= self.m

    def contains_set(self, s: Iterable) -> bool:
        return all(x in self for x in s)


def theta(x, rect: Rectangle) -> Box:
    """Central symmetry of the rectangle."""
    if x not in rect:
        raise ValueError(f"box {tuple(x)} outside {rect.n}x{rect.m} rectangle")
    return Box(rect.n - x[0] + 1, rect.m - x[1] + 1)


def theta_set(s: Iterable, rect: Rectangle) -> frozenset[Box]:
    return frozenset(theta(x, rect) for x in s)


@dataclass(frozen=True, order=True)
class Bipartition:
    lam: Partition = EMPTY
    mu: Partition = EMPTY

    @classmethod
    def of(cls, lam=(), mu=()) -> "Bipartition":
        return cls(Partition(tuple(lam)), Partition(tuple(mu)))

    @classmethod
    def from_box_sets(cls, lam_boxes, mu_boxes) -> "Bipartition | None":
        lam = from_boxes(lam_boxes)
        mu = from_boxes(mu_boxes)
        if lam is None or mu is None:
            return None
        return cls(lam, mu)

    def boxes(self) -> tuple[frozenset[Box], frozenset[Box]]:
        return self.lam.boxes(), self.mu.boxes()

    @property
    def size(self) -> int:
        return self.lam.size + self.mu.size

    def __str__(self) -> str:
        return f"({self.lam};{self.mu})"

    def to_json(self) -> dict:
        return {"lambda": self.lam.to_json(), "mu": self.mu.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "Bipartition":
        return cls.of(d["lambda"], d["mu"])

    def fits(self, rect: Rectangle) -> bool:
        return rect.contains_set(self.lam.boxes()) and rect.contains_set(self.mu.boxes())


Pair = tuple  # (frozenset[Box], frozenset[Box])


def _pair(a) -> Pair:
    if isinstance(a, Bipartition):
        return a.boxes()
    return (frozenset(a[0]), frozenset(a[1]))


def union(a, b) -> Pair:
    a, b = _pair(a), _pair(b)
    return (a[0] | b[0], a[1] | b[1])


def intersection(a, b) -> Pair:
    a, b = _pair(a), _pair(b)
    return (a[0] & b[0], a[1] & b[1])


def difference(a, b) -> Pair:
    a, b = _pair(a), _pair(b)
    return (a[0] - b[0], a[1] - b[1])


def issubset(a, b) -> bool:
    a, b = _pair(a), _pair(b)
    return a[0] <= b[0] and a[1] <= b[1]


def omega(a: Bipartition, rect: Rectangle) -> Bipartition:
    """(lambda, mu) -> (lambda, pi \\ theta(mu))."""
    if not a.fits(rect):
        raise ValueError(f"{a} does not fit in {rect.n}x{rect.m}")
    mu = from_boxes(rect.boxes() - theta_set(a.mu.boxes(), rect))
    if mu is None:  # pragma: no cover - complement of a rotated diagram is Young
        raise AssertionError("complement is not a Young diagram")
    return Bipartition(a.lam, mu)


def connected_components(s: Iterable) -> list[frozenset[Box]]:
    """Edge-connected components, north-east first.

    Ordered by increasing minimal row, ties broken by decreasing minimal column.
    """
    left = set(Box(*x) for x in s)
    comps = []
    while left:
        seed = left.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            i, j = stack.pop()
            for y in (Box(i + 1, j), Box(i - 1, j), Box(i, j + 1), Box(i, j - 1)):
                if y in left:
                    left.remove(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (min(x.i for x in c), -min(x.j for x in c)))
    return comps


def render_ascii(a: Bipartition, rect: Rectangle) -> str:
    """Grid picture of lambda and theta(mu) inside the rectangle.

    ``L`` marks lambda only, ``T`` theta(mu) only, ``#`` the intersection
    and ``.`` neither.  The grid is followed by one line per paired
    component nu_i (intersection components and components of the
    uncovered region, in canonical order).
    """
    P = rect.boxes()
    lam = a.lam.boxes() & P
    tmu = theta_set(a.mu.boxes() & P, rect)
    rows = []
    for i in range(1, rect.n + 1):
        row = []
        for j in range(1, rect.m + 1):
            x = Box(i, j)
            if x in lam and x in tmu:
                row.append("#")
            elif x in lam:
                row.append("L")
            elif x in tmu:
                row.append("T")
            else:
                row.append(".")
        rows.append("".join(row))
    comps = connected_components((lam & tmu) | (P - (lam | tmu)))
    for idx, comp in enumerate(comps, 1):
        cells = " ".join(f"({x.i},{x.j})" for x in sorted(comp))
        rows.append(f"nu_{idx}: {cells}")
    return "\n".join(rows)


def partitions_in_rectangle(n: int, m: int) -> list[Partition]:
    """All partitions fitting in n rows and m columns."""
    out = [EMPTY]

    def rec(prefix: tuple, cap: int):
        if len(prefix) == n:
            return
        for p in range(1, cap + 1):
            q = prefix + (p,)
            out.append(Partition(q))
            rec(q, p)

    rec((), m)
    return out


def bipartitions_in_rectangle(n: int, m: int) -> list[Bipartition]:
    ps = partitions_in_rectangle(n, m)
    return [Bipartition(a, b) for a in ps for b in ps]
