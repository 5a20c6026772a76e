import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mtgroups.catalog import abelian, cyclic, dihedral, symmetric  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}

GROUPS_DIR = Path(__file__).resolve().parent.parent / "groups"


@pytest.fixture
def s3():
    return symmetric(3)


@pytest.fixture
def c4():
    return cyclic(4)


@pytest.fixture
def klein():
    return dihedral(2)


@pytest.fixture
def c2xc2():
    return abelian(2, 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, msg = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {msg}")
