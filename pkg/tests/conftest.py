import functools
import importlib
import pkgutil
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import cbmw  # noqa: E402

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


def _clear_all_caches():
    for info in pkgutil.walk_packages(cbmw.__path__, "cbmw."):
        if info.name.endswith("__main__"):
            continue
        module = importlib.import_module(info.name)
        for obj in vars(module).values():
            if isinstance(obj, functools._lru_cache_wrapper):
                obj.cache_clear()


@pytest.fixture
def cold_caches():
    """Drop memoized tables so a timed criterion pays for its own computation."""
    _clear_all_caches()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    number, label = marker.args
    status = "PASS" if report.passed else "FAIL"
    if number not in _RESULTS or status == "FAIL":
        _RESULTS[number] = (status, f"{label} ({report.duration:.1f}s)")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        status, text = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")
