import pytest

from a2g_paths.fresnel import SPEED_OF_LIGHT, LinkGeometry
from a2g_paths.scenario import preset

PRESET_NAMES = ["suburban", "urban", "dense-urban", "high-rise-urban"]


def link_for_wavelength(h_tx, h_rx, d_tr, wavelength):
    return LinkGeometry(h_tx, h_rx, d_tr, SPEED_OF_LIGHT / wavelength)


@pytest.fixture
def urban():
    return preset("urban")


@pytest.fixture(params=PRESET_NAMES)
def any_preset(request):
    return preset(request.param)


def pytest_terminal_summary(terminalreporter):
    import re

    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_c(\d+)_", getattr(rep, "nodeid", ""))
            if m is None or (rep.when != "call" and outcome != "error"):
                continue
            n = int(m.group(1))
            passed, total = verdicts.get(n, (0, 0))
            verdicts[n] = (passed + (outcome == "passed"), total + 1)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        passed, total = verdicts[n]
        status = "PASS" if passed == total else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} ({passed}/{total} checks)")
