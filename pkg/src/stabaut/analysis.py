"""Code parameters, codespace bases and the stabilizer correctability test."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd
from typing import Sequence

import numpy as np

from .group import StabilizerGroup
from .pauli import PauliOperator, multiply, popcount

MAX_BASIS_QUBITS = 14

# letter codes in the X < Y < Z enumeration order, as (x_bit, z_bit)
_XYZ = ((1, 0), (1, 1), (0, 1))


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: int
    degenerate_convention: bool
    witness: PauliOperator | None = field(default=None, compare=False)

    def __str__(self) -> str:
        tag = " (k=0 convention)" if self.degenerate_convention else ""
        return f"[[{self.n},{self.k},{self.d}]]{tag}"


def _placements(n: int, w: int):
    """Weight-``w`` Paulis as (x, z) masks: positions lexicographic, X<Y<Z."""
    for pos in combinations(range(n), w):
        for letters in product(_XYZ, repeat=w):
            x = z = 0
            for j, (a, b) in zip(pos, letters):
                x |= a << j
                z |= b << j
            yield x, z


def distance(S: StabilizerGroup) -> CodeParameters:
    """Minimum weight of N(S) - S, or of S - {I} when k = 0.

    Scans weight 1, 2, ... and returns the first hit, which makes the
    witness the lexicographically least minimal-weight operator.
    """
    n = S.n
    gens = S.generators
    # per-slot syndrome contributions of X and Z on that slot
    synd_x = [0] * n
    synd_z = [0] * n
    for i, g in enumerate(gens):
        for j in range(n):
            if (g.z >> j) & 1:
                synd_x[j] |= 1 << i
            if (g.x >> j) & 1:
                synd_z[j] |= 1 << i

    degenerate = S.k == 0
    for w in range(1, n + 1):
        for x, z in _placements(n, w):
            if degenerate:
                hit = S.in_rowspace(x, z)
            else:
                s = 0
                v = x
                while v:
                    j = (v & -v).bit_length() - 1
                    s ^= synd_x[j]
                    v &= v - 1
                v = z
                while v:
                    j = (v & -v).bit_length() - 1
                    s ^= synd_z[j]
                    v &= v - 1
                hit = s == 0 and not S.in_rowspace(x, z)
            if hit:
                wit = PauliOperator(n, popcount(x & z) % 4, x, z)
                return CodeParameters(n, S.k, w, degenerate, wit)
    raise AssertionError("no logical operator found; group is inconsistent")


# ---------------------------------------------------------------------------
# codespace basis


def _label(v: int, n: int) -> str:
    """Basis label with slot 1 as the leftmost character."""
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def _label_index(v: int, n: int) -> int:
    """Position of basis state ``v`` in label-lexicographic order."""
    return int(_label(v, n), 2)


@dataclass
class CodespaceBasis:
    """Unnormalized images of computational basis states under sum(S).

    ``vectors[i][idx]`` is the coefficient of the basis state whose label is
    ``basis_labels[idx]``; coefficients are Gaussian integers (stored as
    complex with integral parts).
    """

    n: int
    vectors: list[np.ndarray]

    @property
    def basis_labels(self) -> list[str]:
        return [format(i, f"0{self.n}b") for i in range(1 << self.n)]

    def terms(self, i: int) -> list[tuple[str, complex]]:
        vec = self.vectors[i]
        return [
            (format(int(idx), f"0{self.n}b"), complex(vec[idx]))
            for idx in np.flatnonzero(vec)
        ]

    def integer_terms(self, i: int) -> dict[str, int]:
        """Terms divided by their common factor; requires real coefficients."""
        terms = self.terms(i)
        if any(c.imag for _, c in terms):
            raise ValueError("vector has imaginary coefficients")
        vals = [int(c.real) for _, c in terms]
        g = 0
        for v in vals:
            g = gcd(g, v)
        return {lab: v // g for (lab, _), v in zip(terms, vals)}

    def format(self) -> str:
        blocks = []
        for i in range(len(self.vectors)):
            blocks.append("\n".join(_format_term(lab, c) for lab, c in self.terms(i)))
        return "\n\n".join(blocks)


def _format_term(label: str, c: complex) -> str:
    re_, im = int(c.real), int(c.imag)
    if im == 0:
        mag = abs(re_)
        return ("-" if re_ < 0 else "+") + ("" if mag == 1 else f"{mag}*") + label
    if re_ == 0:
        mag = abs(im)
        return ("-" if im < 0 else "+") + ("i" if mag == 1 else f"{mag}i") + "*" + label
    return f"+({re_}{im:+d}i)*{label}"


_IPOW = (1, 1j, -1, -1j)


def codespace_basis(S: StabilizerGroup) -> CodespaceBasis:
    """Apply sum(S) to basis states in label order until 2**k images are found."""
    n = S.n
    if n > MAX_BASIS_QUBITS:
        raise ValueError(f"codespace basis needs n <= {MAX_BASIS_QUBITS}, got {n}")
    elems = [(e.phase, e.x, e.z) for e in S.elements()]
    xspan = sorted({x for _, x, _ in elems})
    want = 1 << S.k
    seen = set()
    vectors = []
    for label_int in range(1 << n):
        # label_int has slot 1 as its most significant bit
        v = int(format(label_int, f"0{n}b")[::-1], 2)
        if v in seen:
            continue
        seen.update(v ^ a for a in xspan)
        acc: dict[int, complex] = {}
        for phase, x, z in elems:
            c = _IPOW[(phase + 2 * (popcount(z & v) & 1)) % 4]
            t = v ^ x
            acc[t] = acc.get(t, 0) + c
        vec = np.zeros(1 << n, dtype=complex)
        for t, c in acc.items():
            vec[_label_index(t, n)] = c
        if np.any(vec):
            vectors.append(vec)
            if len(vectors) == want:
                break
    return CodespaceBasis(n, vectors)


def apply_to_vector(p: PauliOperator, vec: np.ndarray) -> np.ndarray:
    """Act with ``p`` on a state indexed in label order."""
    n = p.n
    out = np.zeros_like(vec)
    for idx in np.flatnonzero(vec):
        v = int(format(int(idx), f"0{n}b")[::-1], 2)
        c = _IPOW[(p.phase + 2 * (popcount(p.z & v) & 1)) % 4]
        out[_label_index(v ^ p.x, n)] += c * vec[idx]
    return out


# ---------------------------------------------------------------------------
# error correction criterion


@dataclass(frozen=True)
class CorrectabilityReport:
    correctable: bool
    pair: tuple[int, int] | None = None
    product: PauliOperator | None = None

    def __bool__(self) -> bool:
        return self.correctable


def is_logical(S: StabilizerGroup, p: PauliOperator) -> bool:
    """True iff ``p`` (any phase) lies in N(S) - S."""
    return S.in_normalizer(p) and not S.in_rowspace(p.x, p.z)


def check_correctable(S: StabilizerGroup, errors: Sequence[PauliOperator]) -> CorrectabilityReport:
    """Stabilizer criterion: no E_i^* E_j may lie in N(S) - S.

    The first violating ``(i, j)`` in input order is reported.
    """
    for e in errors:
        if e.n != S.n:
            raise ValueError(f"error {e!s} has {e.n} qubits, code has {S.n}")
    adj = [e.adjoint() for e in errors]
    for i, ei in enumerate(adj):
        for j, ej in enumerate(errors):
            prod = multiply(ei, ej)
            if is_logical(S, prod):
                return CorrectabilityReport(False, (i, j), prod)
    return CorrectabilityReport(True)


def single_qubit_errors(n: int) -> list[PauliOperator]:
    """X_j, Y_j, Z_j for every slot, slot-major."""
    out = []
    for j in range(n):
        for a, b in ((1, 0), (1, 1), (0, 1)):
            out.append(PauliOperator(n, a & b, a << j, b << j))
    return out
