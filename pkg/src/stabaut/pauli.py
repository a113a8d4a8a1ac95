"""Phase-tracked n-qubit Pauli operators in check-matrix form.

An operator is stored as ``i**phase * X^x Z^z`` where ``x`` and ``z`` are
bit masks (bit ``j`` is qubit slot ``j + 1``).  ``Y`` is absorbed as
``i*X*Z`` at parse time, so a printed ``Y`` contributes one to the phase.

Qubit slots are 1-based in every user-facing surface (strings, cycle
notation) and 0-based internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

LETTERS = "IXZY"  # indexed by letter code x_bit | (z_bit << 1)
_CODE = {ch: i for i, ch in enumerate(LETTERS)}

_PAULI_RE = re.compile(r"^([+-]?)(i?)([IXYZ]+)$")


def popcount(v: int) -> int:
    return bin(v).count("1")


def letter_code(x: int, z: int, j: int) -> int:
    """Letter code at slot ``j``: 0=I, 1=X, 2=Z, 3=Y."""
    return ((x >> j) & 1) | (((z >> j) & 1) << 1)


@dataclass(frozen=True)
class PauliOperator:
    n: int
    phase: int
    x: int
    z: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Pauli operator needs at least one qubit")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError("bit vectors do not fit in n slots")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_letters(cls, letters: Sequence[int], sign: int = 1) -> "PauliOperator":
        """Build the Hermitian operator ``sign * letters`` from letter codes."""
        x = z = 0
        for j, c in enumerate(letters):
            if c & 1:
                x |= 1 << j
            if c & 2:
                z |= 1 << j
        ny = popcount(x & z)
        return cls(len(letters), (ny + (0 if sign > 0 else 2)) % 4, x, z)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> j) & 1 for j in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> j) & 1 for j in range(self.n))

    def letters(self) -> str:
        return "".join(LETTERS[letter_code(self.x, self.z, j)] for j in range(self.n))

    def letter_codes(self) -> tuple[int, ...]:
        return tuple(letter_code(self.x, self.z, j) for j in range(self.n))

    @property
    def residual_phase(self) -> int:
        """Phase exponent left after removing one ``i`` per ``Y`` slot."""
        return (self.phase - popcount(self.x & self.z)) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.residual_phase in (0, 2)

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators; raises otherwise."""
        r = self.residual_phase
        if r == 0:
            return 1
        if r == 2:
            return -1
        raise ValueError(f"operator {self!s} has an imaginary phase")

    @property
    def row(self) -> int:
        """The check-matrix row packed as ``x | z << n``."""
        return self.x | (self.z << self.n)

    def positive(self) -> "PauliOperator":
        """The Hermitian +1 representative with the same letters."""
        return PauliOperator(self.n, popcount(self.x & self.z) % 4, self.x, self.z)

    def negate(self) -> "PauliOperator":
        return PauliOperator(self.n, (self.phase + 2) % 4, self.x, self.z)

    def adjoint(self) -> "PauliOperator":
        # (X^a Z^b)^dagger = Z^b X^a = (-1)^{a.b} X^a Z^b
        return PauliOperator(
            self.n, (-self.phase + 2 * popcount(self.x & self.z)) % 4, self.x, self.z
        )

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __str__(self) -> str:
        r = self.residual_phase
        return ("", "i", "-", "-i")[r] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOperator('{self!s}')"


def parse_pauli(text: str) -> PauliOperator:
    """Parse a signed Pauli string such as ``"-ZZX"`` or ``"iXY"``."""
    if not text:
        raise ValueError("empty Pauli string")
    m = _PAULI_RE.match(text.strip())
    if m is None:
        raise ValueError(f"illegal Pauli string {text!r}")
    sign, imag, body = m.groups()
    x = z = 0
    ny = 0
    for j, ch in enumerate(body):
        c = _CODE[ch]
        if c & 1:
            x |= 1 << j
        if c & 2:
            z |= 1 << j
        if c == 3:
            ny += 1
    phase = ny + (2 if sign == "-" else 0) + (1 if imag else 0)
    return PauliOperator(len(body), phase % 4, x, z)


def serialize_pauli(p: PauliOperator) -> str:
    r = p.residual_phase
    if r not in (0, 2):
        raise ValueError(f"cannot serialize {p!s}: residual phase is imaginary")
    return ("-" if r == 2 else "") + p.letters()


def _check_same_n(p: PauliOperator, q: PauliOperator):
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n} qubits")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    _check_same_n(p, q)
    # Z^b X^c = (-1)^{b.c} X^c Z^b
    phase = (p.phase + q.phase + 2 * popcount(p.z & q.x)) % 4
    return PauliOperator(p.n, phase, p.x ^ q.x, p.z ^ q.z)


def symplectic(p: PauliOperator, q: PauliOperator) -> int:
    return (popcount(p.x & q.z) + popcount(p.z & q.x)) & 1


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    _check_same_n(p, q)
    return symplectic(p, q) == 0


def weight(p: PauliOperator) -> int:
    return popcount(p.x | p.z)


def complexity(ops: Iterable[PauliOperator]) -> int:
    """Number of distinct letters (I, X, Y, Z) used across ``ops``."""
    ops = list(ops)
    if not ops:
        raise ValueError("complexity of an empty set is undefined")
    n = ops[0].n
    seen = set()
    for p in ops:
        if p.n != n:
            raise ValueError("operators have different lengths")
        seen.update(p.letter_codes())
    return len(seen)


# ---------------------------------------------------------------------------
# slot permutations


def _permute_mask(v: int, images: Sequence[int]) -> int:
    out = 0
    j = 0
    while v:
        if v & 1:
            out |= 1 << images[j]
        v >>= 1
        j += 1
    return out


@dataclass(frozen=True)
class Permutation:
    """A bijection of qubit slots; ``images[i - 1] == sigma(i)`` (1-based)."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if not imgs or sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, arr: Sequence[int]) -> "Permutation":
        return cls(tuple(a + 1 for a in arr))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        return parse_cycles(text, n)

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) == self(other(i))``."""
        if self.n != other.n:
            raise ValueError("permutations act on different numbers of slots")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cyc.append(k)
                seen.add(k)
                k = self(k)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation like ``"(1 3)(2 4 5)"`` on ``n`` slots.

    Juxtaposed cycles compose right to left.  When a cycle has no whitespace
    and ``n < 10`` each digit is a point, so ``"(135)(264)"`` also works.
    """
    text = text.strip()
    if not re.fullmatch(r"(\(\s*[\d\s]*\))*", text):
        raise ValueError(f"bad cycle notation {text!r}")
    result = Permutation.identity(n)
    for body in reversed(re.findall(r"\(([^)]*)\)", text)):
        body = body.strip()
        if not body:
            continue
        if re.search(r"\s", body):
            pts = [int(t) for t in body.split()]
        elif n < 10:
            pts = [int(ch) for ch in body]
        else:
            pts = [int(body)]
        if len(set(pts)) != len(pts) or not all(1 <= p <= n for p in pts):
            raise ValueError(f"bad cycle ({body}) for {n} slots")
        imgs = list(range(1, n + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            imgs[a - 1] = b
        result = Permutation(tuple(imgs)) * result
    return result


def apply_permutation(sigma: Permutation, p: PauliOperator) -> PauliOperator:
    """Move the tensor factor in slot ``j`` to slot ``sigma(j)``."""
    if sigma.n != p.n:
        raise ValueError(f"length mismatch: {sigma.n} vs {p.n} qubits")
    imgs = sigma.zero_based
    return PauliOperator(p.n, p.phase, _permute_mask(p.x, imgs), _permute_mask(p.z, imgs))


# ---------------------------------------------------------------------------
# local Clifford twists: one permutation of {X, Y, Z} per slot

# Each element maps letter code -> letter code (1=X, 2=Z, 3=Y; 0=I fixed).
# Listed in the tie-break order id < (XY) < (XZ) < (YZ) < (XYZ) < (XZY).
S3_NAMES = ("id", "(XY)", "(XZ)", "(YZ)", "(XYZ)", "(XZY)")
_X, _Z, _Y = 1, 2, 3
S3_MAPS: tuple[tuple[int, int, int, int], ...] = (
    (0, _X, _Z, _Y),
    (0, _Y, _Z, _X),  # (XY): X->Y, Y->X
    (0, _Z, _X, _Y),  # (XZ)
    (0, _X, _Y, _Z),  # (YZ): Z->Y, Y->Z
    (0, _Y, _X, _Z),  # (XYZ): X->Y, Y->Z, Z->X
    (0, _Z, _Y, _X),  # (XZY): X->Z, Z->Y, Y->X
)
_S3_INDEX = {name: i for i, name in enumerate(S3_NAMES)}
_S3_INDEX.update({"()": 0, "(YX)": 1, "(ZX)": 2, "(ZY)": 3,
                  "(YZX)": 4, "(ZXY)": 4, "(ZYX)": 5, "(YXZ)": 5})


@dataclass(frozen=True)
class LocalCliffordTwist:
    """An element of S3^n acting letter-wise; entries index ``S3_NAMES``."""

    slot_perms: tuple[int, ...]

    def __post_init__(self):
        perms = tuple(int(s) for s in self.slot_perms)
        if not perms or any(not 0 <= s < 6 for s in perms):
            raise ValueError("each slot needs one of the six S3 elements")
        object.__setattr__(self, "slot_perms", perms)

    @classmethod
    def identity(cls, n: int) -> "LocalCliffordTwist":
        return cls((0,) * n)

    @classmethod
    def from_names(cls, names: Sequence[str]) -> "LocalCliffordTwist":
        try:
            return cls(tuple(_S3_INDEX[s.replace(" ", "")] for s in names))
        except KeyError as exc:
            raise ValueError(f"unknown S3 element {exc.args[0]!r}") from None

    @property
    def n(self) -> int:
        return len(self.slot_perms)

    def names(self) -> list[str]:
        return [S3_NAMES[s] for s in self.slot_perms]

    def inverse(self) -> "LocalCliffordTwist":
        # only the 3-cycles are not involutions
        swap = {4: 5, 5: 4}
        return LocalCliffordTwist(tuple(swap.get(s, s) for s in self.slot_perms))

    def __str__(self) -> str:
        return ",".join(self.names())


def apply_twist(rho: LocalCliffordTwist, p: PauliOperator) -> PauliOperator:
    """Permute X, Y, Z in each slot; returns the positive representative."""
    if rho.n != p.n:
        raise ValueError(f"length mismatch: {rho.n} vs {p.n} qubits")
    codes = [S3_MAPS[s][letter_code(p.x, p.z, j)] for j, s in enumerate(rho.slot_perms)]
    return PauliOperator.from_letters(codes)
