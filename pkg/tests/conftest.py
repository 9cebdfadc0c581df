import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from monofact.words import FIBONACCI, THUE_MORSE, InfiniteWord  # noqa: E402

TM_TEXT = "morphic:0->01,1->10;seed=0"


@pytest.fixture
def tm():
    return InfiniteWord(THUE_MORSE)


@pytest.fixture
def fib():
    return InfiniteWord(FIBONACCI)


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if _criteria.get(n, ("PASS",))[0] != "FAIL":
            _criteria[n] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title = _criteria[n]
        terminalreporter.write_line(f"[{status}] criterion {n:2d}: {title}")
