import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    label = marker.args[0]
    detail = getattr(item, "criterion_detail", "")
    if rep.failed:
        msg = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
        detail = f"{detail}; {msg}" if detail else msg
    _RESULTS[label] = ("PASS" if rep.passed else "FAIL", detail)


@pytest.fixture
def record(request):
    """Attach a one-line summary to the running acceptance criterion."""

    def _record(text: str) -> None:
        request.node.criterion_detail = text

    return _record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): an acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: (len(s), s)):
        status, detail = _RESULTS[label]
        terminalreporter.write_line(f"criterion {label}: {status}  {detail}")


from hypothesis import settings  # noqa: E402

settings.register_profile("modquot", deadline=None, derandomize=True)
settings.load_profile("modquot")
