import pytest


def pytest_configure(config):
    config._criteria = {}


@pytest.fixture
def criterion(request):
    """Record and print a one-line verdict for an acceptance criterion."""

    def report(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        request.config._criteria[number] = line
        with request.config.pluginmanager.get_plugin("capturemanager").global_and_fixture_disabled():
            print("\n" + line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_criteria", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
