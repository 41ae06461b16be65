from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rrnetcode.curve import curve_make  # noqa: E402
from rrnetcode.gf import field_make  # noqa: E402
from rrnetcode.netcode import CodeSpec, code_build  # noqa: E402
from rrnetcode.rrspace import ambient_build  # noqa: E402


@pytest.fixture(scope="session")
def f4():
    return field_make(2, 2)


@pytest.fixture(scope="session")
def f9():
    return field_make(3, 2)


@pytest.fixture(scope="session")
def herm2():
    return curve_make("hermitian", 2)


@pytest.fixture(scope="session")
def herm3():
    return curve_make("hermitian", 3)


@pytest.fixture(scope="session")
def w_herm2_k1(herm2):
    return ambient_build(herm2, 1)


@pytest.fixture(scope="session")
def code_h2_k1_s2():
    return code_build(CodeSpec("hermitian", 2, 1, 2))


@pytest.fixture(scope="session")
def code_p1_q3_k2_s2():
    return code_build(CodeSpec("p1", 3, 2, 2))


@pytest.fixture(scope="session")
def code_h3_k3_s3_sampled():
    return code_build(CodeSpec("hermitian", 3, 3, 3, "sampled", 2000, 2016))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
