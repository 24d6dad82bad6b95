import pytest
from hypothesis import settings

from waterhammer.core import reference_scenario
from waterhammer.driver import Recording, run

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def reference_run():
    """The reference scenario at Co = 0.5 with probes at L/2 and next to the valve."""
    return run(reference_scenario(), Recording(probes=(10.0, 19.9), stride=50))


_ACCEPTANCE = {}


@pytest.fixture()
def verdict(request):
    """Record one acceptance line; call as verdict(number, title, passed, detail)."""

    def record(number, title, passed, detail):
        _ACCEPTANCE[number] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:2d}. {title}: {detail}")
