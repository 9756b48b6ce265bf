import sys

import pytest

from ptacc.model import SwansonParams

# Omega = 0.88 (real spectrum) and Omega = -1 (complex-conjugate pairs)
SYMMETRIC = SwansonParams(1.0, 0.3, 0.1)
BROKEN = SwansonParams(1.0, 1.0, 0.5)


@pytest.fixture(params=["symmetric", "broken"])
def preset(request):
    return {"symmetric": SYMMETRIC, "broken": BROKEN}[request.param]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
