import pytest

from qadvantage.machines import A100_CLASS_ASIC, A100_DATASHEET, SEQUENTIAL_2GHZ, build_classical_machine
from qadvantage.qarith import QuantumMachineSpec, build_quantum_machine


@pytest.fixture(scope="session")
def gpu():
    return build_classical_machine("datasheet", A100_DATASHEET, label="gpu")


@pytest.fixture(scope="session")
def asic():
    return build_classical_machine("asic", A100_CLASS_ASIC, label="asic")


@pytest.fixture(scope="session")
def sequential():
    return build_classical_machine("depth_limited", SEQUENTIAL_2GHZ, label="depth_limited")


@pytest.fixture(scope="session")
def quantum():
    return build_quantum_machine(QuantumMachineSpec())


_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record one acceptance check; ``criterion(id, ok, detail)`` then asserts ``ok``."""

    def record(cid: str, ok: bool, detail: str) -> None:
        prev = _ACCEPTANCE.get(cid)
        # A criterion with several parametrized checks fails if any of them fails.
        if prev is None or prev[0]:
            _ACCEPTANCE[cid] = (ok, detail)
        assert ok, f"{cid}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: int(c[1:])):
        ok, detail = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {cid}: {detail}")
