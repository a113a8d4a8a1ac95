"""Stabilizer groups: validation, signed membership, element enumeration."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .pauli import PauliOperator, commutes, multiply, parse_pauli, popcount

MAX_ENUMERATE_GENERATORS = 20


class StabilizerError(ValueError):
    """Base class for invalid generator sets."""


class NonCommuting(StabilizerError):
    def __init__(self, i: int, j: int, gi: str = "", gj: str = ""):
        self.i, self.j = i, j
        super().__init__(f"generators {i} ({gi}) and {j} ({gj}) anticommute")


class ContainsMinusI(StabilizerError):
    def __init__(self, i: int | None = None):
        self.i = i
        where = f" (generator {i})" if i is not None else ""
        super().__init__(f"generated group contains -I{where}")


class DependentGenerators(StabilizerError):
    def __init__(self, i: int, g: str = ""):
        self.i = i
        super().__init__(f"generator {i} ({g}) is a product of earlier generators")


class BadPhase(StabilizerError):
    def __init__(self, i: int, g: str = ""):
        self.i = i
        super().__init__(f"generator {i} ({g}) has an imaginary phase")


class MembershipStatus(Enum):
    EXACT = "exact"
    UP_TO_SIGN = "up_to_sign"
    ABSENT = "absent"


@dataclass(frozen=True)
class MembershipAnswer:
    status: MembershipStatus
    sign: int | None = None

    def __post_init__(self):
        if (self.sign is None) != (self.status is MembershipStatus.ABSENT):
            raise ValueError("sign is present iff the element is in S up to sign")

    @property
    def found(self) -> bool:
        return self.status is not MembershipStatus.ABSENT

    @property
    def exact(self) -> bool:
        return self.status is MembershipStatus.EXACT


ABSENT = MembershipAnswer(MembershipStatus.ABSENT)


class StabilizerGroup:
    """A validated stabilizer group given by independent generators.

    Membership is answered by reducing a check-matrix row against an echelon
    basis whose rows remember which generators they combine.  The signed
    product of those generators then decides exact vs. up-to-sign.
    """

    def __init__(self, generators: Sequence[PauliOperator], *, reduce: bool = False):
        gens = list(generators)
        if not gens:
            raise StabilizerError("at least one generator is required")
        n = gens[0].n
        for i, g in enumerate(gens):
            if g.n != n:
                raise StabilizerError(f"generator {i} has {g.n} qubits, expected {n}")
            if not g.is_hermitian:
                raise BadPhase(i, str(g))
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not commutes(gens[i], gens[j]):
                    raise NonCommuting(i, j, str(gens[i]), str(gens[j]))

        self.n = n
        kept: list[PauliOperator] = []
        # echelon rows: pivot bit -> (row, combination mask over kept generators)
        self._pivots: dict[int, tuple[int, int]] = {}
        self._order: list[int] = []
        for i, g in enumerate(gens):
            row, combo = self._reduce(g.row)
            if row == 0:
                # g is (up to sign) a product of earlier generators
                if g.x == 0 and g.z == 0 and g.sign < 0:
                    raise ContainsMinusI(i)
                if not reduce:
                    raise DependentGenerators(i, str(g))
                if self._product(combo, kept).phase != g.phase:
                    raise ContainsMinusI(i)
                continue
            idx = len(kept)
            kept.append(g)
            self._insert(row, combo | (1 << idx))

        self.generators: tuple[PauliOperator, ...] = tuple(kept)
        self.m = len(kept)
        self.k = n - self.m
        self._index: dict[tuple[int, int], int] | None = None
        self._index_lock = threading.Lock()

    @classmethod
    def from_strings(cls, gens: Sequence[str], *, reduce: bool = False) -> "StabilizerGroup":
        return cls([parse_pauli(g) for g in gens], reduce=reduce)

    # -- echelon machinery -------------------------------------------------

    def _reduce(self, row: int) -> tuple[int, int]:
        combo = 0
        for pivot in self._order:
            if (row >> pivot) & 1:
                prow, pcombo = self._pivots[pivot]
                row ^= prow
                combo ^= pcombo
        return row, combo

    def _insert(self, row: int, combo: int):
        pivot = row.bit_length() - 1
        # keep the basis fully reduced so one pass in _reduce suffices
        for p in self._order:
            prow, pcombo = self._pivots[p]
            if (prow >> pivot) & 1:
                self._pivots[p] = (prow ^ row, pcombo ^ combo)
        self._pivots[pivot] = (row, combo)
        self._order.append(pivot)

    def _product(self, combo: int, gens: Sequence[PauliOperator] | None = None) -> PauliOperator:
        gens = self.generators if gens is None else gens
        out = PauliOperator.identity(self.n)
        i = 0
        while combo:
            if combo & 1:
                out = multiply(out, gens[i])
            combo >>= 1
            i += 1
        return out

    @property
    def echelon_basis(self) -> list[tuple[int, int]]:
        """(pivot, row) pairs of the reduced GF(2) basis, row = x | z << n."""
        return [(p, self._pivots[p][0]) for p in self._order]

    def in_rowspace(self, x: int, z: int) -> bool:
        row, _ = self._reduce(x | (z << self.n))
        return row == 0

    def solve(self, p: PauliOperator) -> PauliOperator | None:
        """The element of S with the same letters as ``p``, if any."""
        row, combo = self._reduce(p.row)
        if row:
            return None
        return self._product(combo)

    # -- public operations --------------------------------------------------

    def contains(self, p: PauliOperator) -> MembershipAnswer:
        if p.n != self.n:
            raise ValueError(f"length mismatch: {p.n} vs {self.n} qubits")
        if not p.is_hermitian:
            raise ValueError(f"{p!s} has an imaginary phase")
        s = self.solve(p)
        if s is None:
            return ABSENT
        if s.phase == p.phase:
            return MembershipAnswer(MembershipStatus.EXACT, 1)
        return MembershipAnswer(MembershipStatus.UP_TO_SIGN, -1)

    def in_normalizer(self, p: PauliOperator) -> bool:
        return all(commutes(p, g) for g in self.generators)

    def syndrome(self, p: PauliOperator) -> int:
        """Bit ``i`` set iff ``p`` anticommutes with generator ``i``."""
        out = 0
        for i, g in enumerate(self.generators):
            if (popcount(p.x & g.z) + popcount(p.z & g.x)) & 1:
                out |= 1 << i
        return out

    def elements(self) -> Iterator[PauliOperator]:
        """All 2**m signed elements, identity first, in generator-mask order."""
        if self.m > MAX_ENUMERATE_GENERATORS:
            raise ValueError(
                f"refusing to enumerate 2**{self.m} elements "
                f"(limit m <= {MAX_ENUMERATE_GENERATORS})"
            )
        cache = [PauliOperator.identity(self.n)]
        yield cache[0]
        for mask in range(1, 1 << self.m):
            low = (mask & -mask).bit_length() - 1
            e = multiply(cache[mask & (mask - 1)], self.generators[low])
            cache.append(e)
            yield e

    enumerate_elements = elements

    def element_index(self) -> dict[tuple[int, int], int]:
        """Map (x, z) -> phase for every element; built once on demand."""
        if self._index is None:
            with self._index_lock:
                if self._index is None:
                    self._index = {(e.x, e.z): e.phase for e in self.elements()}
        return self._index

    def __len__(self) -> int:
        return 1 << self.m

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"StabilizerGroup([{gens}])  # n={self.n} m={self.m} k={self.k}"


def build_group(gens: Sequence[str], *, reduce: bool = False) -> StabilizerGroup:
    """Parse and validate a list of signed Pauli strings."""
    ops = []
    for i, g in enumerate(gens):
        if g.strip().lstrip("+-").startswith("i"):
            # elements of S carry a real sign only
            raise BadPhase(i, g)
        ops.append(parse_pauli(g))
    return StabilizerGroup(ops, reduce=reduce)


def contains(S: StabilizerGroup, p: PauliOperator) -> MembershipAnswer:
    return S.contains(p)


def in_normalizer(S: StabilizerGroup, p: PauliOperator) -> bool:
    return S.in_normalizer(p)


def enumerate_elements(S: StabilizerGroup) -> Iterator[PauliOperator]:
    return S.elements()
