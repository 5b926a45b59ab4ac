import os

import pytest

LONG = os.environ.get("PCARR_LONG") == "1"

long_only = pytest.mark.skipif(not LONG, reason="long run; set PCARR_LONG=1")


@pytest.fixture(scope="session")
def fixtures():
    from pcarr.classifier import load_fixtures
    return load_fixtures()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, 11):
        line = mod.RESULTS.get(k, "NOT RUN")
        terminalreporter.write_line(f"ACCEPTANCE {k}: {line}")
