import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from ecdesigns import constructions as C

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"
sys.path.insert(0, str(SCRIPTS))

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=30, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture(scope="session")
def netto():
    return C.netto13()


@pytest.fixture(scope="session")
def ts13_4():
    return C.ts13_4()


@pytest.fixture(scope="session")
def sqs8():
    return C.boolean_sqs8()


@pytest.fixture(scope="session")
def sqs16():
    return C.doubling_sqs(C.boolean_sqs8())


@pytest.fixture(scope="session")
def hole_design():
    from make_ts13_4_hole import ts13_4_with_hole

    return ts13_4_with_hole()


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion."""

    def record(label, ok, seconds, budget, detail=""):
        mark = "PASS" if ok else "FAIL"
        line = f"[{mark}] criterion {label:<6} {seconds:7.3f}s / {budget:g}s  {detail}".rstrip()
        request.config.acceptance_lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
