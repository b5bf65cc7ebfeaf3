import pytest

from qrdesigns.codes import dual, extended_qr_code
from qrdesigns.enumerators import orbit_jacobis
from qrdesigns.projective import orbit_partition

ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def q18():
    return extended_qr_code(17)


@pytest.fixture(scope="session")
def q42():
    return extended_qr_code(41)


@pytest.fixture(scope="session")
def orbits17():
    return orbit_partition(17)


@pytest.fixture(scope="session")
def orbits41():
    return orbit_partition(41)


@pytest.fixture(scope="session")
def q42_dual(q42):
    return dual(q42)


@pytest.fixture(scope="session")
def q42_jacobis(q42, orbits41):
    return orbit_jacobis(q42, orbits41)


@pytest.fixture(scope="session")
def q42_dual_jacobis(q42_dual, orbits41):
    return orbit_jacobis(q42_dual, orbits41)
