from functools import reduce

import numpy as np
import pytest

from stabaut.catalog import CATALOG
from stabaut.pauli import PauliOperator

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(p: PauliOperator) -> np.ndarray:
    """Explicit 2^n x 2^n matrix, slot 1 as the leftmost Kronecker factor.

    Built from i**phase * X^a Z^b factor by factor, so it does not reuse the
    Y-absorption convention of the parser.
    """
    factors = []
    for a, b in zip(p.x_bits, p.z_bits):
        m = np.eye(2, dtype=complex)
        if a:
            m = m @ _MATS["X"]
        if b:
            m = m @ _MATS["Z"]
        factors.append(m)
    return (1j ** p.phase) * reduce(np.kron, factors)


def dense_letters(s: str) -> np.ndarray:
    sign = -1 if s.startswith("-") else 1
    return sign * reduce(np.kron, [_MATS[c] for c in s.lstrip("-")])


@pytest.fixture(scope="session")
def groups():
    return {name: e.group() for name, e in CATALOG.items()}


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
