"""Strong, weak and Clifford-twisted permutation automorphisms of stabilizer codes.

Group computation is a depth-first scan of S_n that fixes, for target slot
``t = 0, 1, ...``, which source slot lands on ``t``.  Each generator keeps a
bit set of the elements of S it could still be mapped onto; placing a slot
intersects that set with a precomputed mask, and an empty set prunes the
whole subtree.  For strong/weak the candidates are the elements with the
generator's letter multiset.  For Clifford twists each placement also picks
a letter permutation for the slot, and the candidates are the elements of
matching weight.  Either way a surviving leaf is already an automorphism.
"""

from __future__ import annotations

import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from math import factorial
from typing import Callable, Iterable, Sequence

from .group import StabilizerGroup
from .pauli import (
    S3_MAPS,
    LocalCliffordTwist,
    PauliOperator,
    Permutation,
    apply_permutation,
    multiply,
    popcount,
    serialize_pauli,
)

log = logging.getLogger(__name__)

MAX_SEARCH_QUBITS = 12


class AutomorphismKind(str, Enum):
    STRONG = "strong"
    WEAK = "weak"
    CLIFFORD = "clifford"


class SearchBudgetError(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


class ClosureError(ValueError):
    pass


# ---------------------------------------------------------------------------
# single-permutation tests


def _check_n(S: StabilizerGroup, sigma: Permutation):
    if sigma.n != S.n:
        raise ValueError(f"permutation on {sigma.n} slots, code has {S.n} qubits")


def is_strong(S: StabilizerGroup, sigma: Permutation) -> bool:
    _check_n(S, sigma)
    return all(S.contains(apply_permutation(sigma, g)).exact for g in S.generators)


@dataclass(frozen=True)
class WeakCheck:
    is_weak: bool
    signs: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.is_weak


def is_weak(S: StabilizerGroup, sigma: Permutation) -> WeakCheck:
    """Weak membership plus, per generator, the sign s with s*sigma(g) in S."""
    _check_n(S, sigma)
    signs = []
    for g in S.generators:
        ans = S.contains(apply_permutation(sigma, g))
        if not ans.found:
            return WeakCheck(False)
        signs.append(ans.sign)
    return WeakCheck(True, tuple(signs))


@dataclass(frozen=True)
class WeakTwistWitness:
    """A Pauli ``gamma`` with ``gamma S gamma^-1 == sigma(S)``."""

    gamma: PauliOperator


def _solve_gf2(rows: Sequence[int], rhs: Sequence[int], nbits: int) -> int | None:
    """Some v with parity(rows[i] & v) == rhs[i] for all i, or None."""
    piv: list[tuple[int, int, int]] = []  # (pivot bit, row, rhs)
    for r, b in zip(rows, rhs):
        for p, pr, pb in piv:
            if (r >> p) & 1:
                r ^= pr
                b ^= pb
        if r == 0:
            if b:
                return None
            continue
        p = r.bit_length() - 1
        piv = [((q, qr ^ r, qb ^ b) if (qr >> p) & 1 else (q, qr, qb)) for q, qr, qb in piv]
        piv.append((p, r, b))
    v = 0
    for p, r, b in piv:
        # rows are fully reduced: only the pivot bit of each row is set in v
        if b:
            v |= 1 << p
    return v


def conjugate(gamma: PauliOperator, p: PauliOperator) -> PauliOperator:
    """gamma p gamma^-1 for a Pauli gamma."""
    inv = gamma.adjoint()
    return multiply(multiply(gamma, p), inv)


def verify_weak_witness(S: StabilizerGroup, sigma: Permutation, gamma: PauliOperator) -> bool:
    """Element-wise check that gamma S gamma^-1 equals sigma(S)."""
    image = {(q.x, q.z, q.phase) for q in (apply_permutation(sigma, s) for s in S.elements())}
    conj = {(q.x, q.z, q.phase) for q in (conjugate(gamma, s) for s in S.elements())}
    return image == conj


def weak_twist_witness(S: StabilizerGroup, sigma: Permutation) -> WeakTwistWitness:
    """Construct gamma by solving the commutation pattern over GF(2).

    If ``sigma(g_i) = e_i r_i`` with ``r_i`` in S, gamma must anticommute
    with exactly the ``r_i`` whose sign ``e_i`` is -1.  The ``r_i`` are
    independent, so the system always has a solution.
    """
    check = is_weak(S, sigma)
    if not check:
        raise ValueError(f"{sigma} is not a weak automorphism")
    n = S.n
    rows, rhs = [], []
    for g, e in zip(S.generators, check.signs):
        r = apply_permutation(sigma, g)
        # symplectic product with (x|z) is the dot product with (z|x)
        rows.append(r.z | (r.x << n))
        rhs.append(0 if e > 0 else 1)
    v = _solve_gf2(rows, rhs, 2 * n)
    if v is None:
        raise InternalInconsistency("commutation system has no solution")
    x, z = v & ((1 << n) - 1), v >> n
    gamma = PauliOperator(n, popcount(x & z) % 4, x, z)
    if not verify_weak_witness(S, sigma, gamma):
        raise InternalInconsistency(f"gamma={gamma} does not conjugate S onto sigma(S)")
    return WeakTwistWitness(gamma)


# ---------------------------------------------------------------------------
# shared lookup tables


class _Tables:
    def __init__(self, S: StabilizerGroup):
        self.S = S
        self.n = S.n
        elems = list(S.elements())
        self.elems = elems
        self.codes = [e.letter_codes() for e in elems]
        self.by_support: dict[int, list[int]] = defaultdict(list)
        for idx, e in enumerate(elems):
            self.by_support[e.x | e.z].append(idx)
        self.gen_codes = [g.letter_codes() for g in S.generators]


def _images(tables: _Tables, sigma0: Sequence[int]) -> list[tuple[int, ...]]:
    """Letter codes of sigma(g_i); sigma0 is 0-based, slot j -> sigma0[j]."""
    out = []
    n = tables.n
    for gc in tables.gen_codes:
        h = [0] * n
        for j, c in enumerate(gc):
            h[sigma0[j]] = c
        out.append(tuple(h))
    return out


def _twist_solutions(tables: _Tables, images: list[tuple[int, ...]], first_only: bool):
    """Yield per-slot partial letter maps fwd[t][letter] realising a twist."""
    n = tables.n
    cands = []
    for h in images:
        supp = 0
        for t, c in enumerate(h):
            if c:
                supp |= 1 << t
        lst = tables.by_support.get(supp)
        if not lst:
            return
        cands.append((lst, [t for t in range(n) if h[t]], h))
    order = sorted(range(len(images)), key=lambda i: len(cands[i][0]))
    fwd = [[0, 0, 0, 0] for _ in range(n)]
    bwd = [[0, 0, 0, 0] for _ in range(n)]
    codes = tables.codes

    def rec(pos):
        if pos == len(order):
            yield [tuple(f) for f in fwd]
            return
        lst, slots, h = cands[order[pos]]
        for c in lst:
            e = codes[c]
            changes = []
            ok = True
            for t in slots:
                a = h[t]
                b = e[t]
                f = fwd[t][a]
                if f == 0:
                    if bwd[t][b]:
                        ok = False
                        break
                    fwd[t][a] = b
                    bwd[t][b] = a
                    changes.append((t, a, b))
                elif f != b:
                    ok = False
                    break
            if ok:
                yield from rec(pos + 1)
            for t, a, b in changes:
                fwd[t][a] = 0
                bwd[t][b] = 0

    for sol in rec(0):
        yield sol
        if first_only:
            return


def _least_completion(partial: list[tuple[int, ...]]) -> tuple[int, ...]:
    out = []
    for f in partial:
        for s, mp in enumerate(S3_MAPS):
            if all(f[a] == 0 or mp[a] == f[a] for a in (1, 2, 3)):
                out.append(s)
                break
    return tuple(out)


def _clifford_twist(tables: _Tables, sigma0: Sequence[int], least: bool = True):
    images = _images(tables, sigma0)
    best = None
    for sol in _twist_solutions(tables, images, first_only=not least):
        tw = _least_completion(sol)
        if best is None or tw < best:
            best = tw
    return None if best is None else LocalCliffordTwist(best)


def is_clifford(S: StabilizerGroup, sigma: Permutation) -> LocalCliffordTwist | None:
    """The least twist rho with rho(sigma(g_i)) in S or -S for all i, if any.

    Twists are compared slot by slot in the order id < (XY) < (XZ) < (YZ)
    < (XYZ) < (XZY).
    """
    _check_n(S, sigma)
    return _clifford_twist(_Tables(S), sigma.zero_based, least=True)


def twist_maps_into(S: StabilizerGroup, sigma: Permutation, rho: LocalCliffordTwist) -> bool:
    """True iff rho(sigma(g_i)) is in S up to sign for every generator."""
    from .pauli import apply_twist

    _check_n(S, sigma)
    return all(
        S.contains(apply_twist(rho, apply_permutation(sigma, g))).found for g in S.generators
    )


# ---------------------------------------------------------------------------
# group search


@dataclass
class SearchStats:
    nodes: int = 0
    pruned: int = 0
    leaves: int = 0
    leaf_checks: int = 0

    def merge(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.pruned += other.pruned
        self.leaves += other.leaves
        self.leaf_checks += other.leaf_checks


def _candidate_masks(tables: _Tables, kind: AutomorphismKind):
    """Per generator: masks[t][letter] = bit set of candidates with that letter at t."""
    n = tables.n
    out = []
    for g, gc in zip(tables.S.generators, tables.gen_codes):
        if kind is AutomorphismKind.CLIFFORD:
            # twists fix I, so only the weight is invariant
            w = popcount(g.x | g.z)
            cands = [i for i, e in enumerate(tables.elems) if popcount(e.x | e.z) == w]
        else:
            counts = sorted(gc)
            cands = [i for i, c in enumerate(tables.codes) if sorted(c) == counts]
            if kind is AutomorphismKind.STRONG:
                # a permutation keeps the residual sign, so it must match
                cands = [i for i in cands if tables.elems[i].phase == g.phase]
        masks = []
        for t in range(n):
            by_letter = [0, 0, 0, 0]
            for bit, i in enumerate(cands):
                by_letter[tables.codes[i][t]] |= 1 << bit
            masks.append(by_letter)
        out.append(((1 << len(cands)) - 1, masks))
    return out


def _column_twists(tables: _Tables, kind: AutomorphismKind) -> list[list[tuple[int, ...]]]:
    """Per source slot, the distinct letter maps worth branching on.

    Each entry is a tuple giving, for every generator, the letter its column
    entry is sent to.  Maps that agree on the letters present in the column
    are merged, keeping the earliest S3 element.
    """
    n = tables.n
    cols = []
    for j in range(n):
        column = [gc[j] for gc in tables.gen_codes]
        if kind is not AutomorphismKind.CLIFFORD:
            cols.append([tuple(column)])
            continue
        seen = {}
        for s, mp in enumerate(S3_MAPS):
            key = tuple(mp[c] for c in column)
            seen.setdefault(key, s)
        cols.append(list(seen))
    return cols


def _generate(gens: Sequence[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def _scan(
    S: StabilizerGroup,
    kind: AutomorphismKind,
    first_sources: Sequence[int] | None = None,
    progress: Callable[[SearchStats], None] | None = None,
    progress_every: int = 200_000,
) -> tuple[list[tuple[int, ...]], SearchStats]:
    """Pruned depth-first scan; returns 0-based image tuples of automorphisms.

    Target slot ``t`` receives source slot ``j`` together with a letter map
    (identity unless ``kind`` is clifford).  A leaf means every generator
    image, twisted, matches some candidate element letter for letter.
    """
    tables = _Tables(S)
    n = S.n
    gens = _candidate_masks(tables, kind)
    masks = [g[1] for g in gens]
    columns = _column_twists(tables, kind)
    m = len(gens)
    stats = SearchStats()
    found: set[tuple[int, ...]] = set()
    tau = [0] * n  # tau[t] = source slot placed on target t
    used = [False] * n
    next_report = progress_every

    def rec(t, alive):
        nonlocal next_report
        if t == n:
            sigma0 = [0] * n
            for tt in range(n):
                sigma0[tau[tt]] = tt
            stats.leaves += 1
            found.add(tuple(sigma0))
            return
        sources = first_sources if (t == 0 and first_sources is not None) else range(n)
        for j in sources:
            if used[j]:
                continue
            used[j] = True
            tau[t] = j
            for letters in columns[j]:
                stats.nodes += 1
                new = []
                for i in range(m):
                    a = alive[i] & masks[i][t][letters[i]]
                    if not a:
                        break
                    new.append(a)
                if len(new) < m:
                    stats.pruned += 1
                    continue
                if progress is not None and stats.nodes >= next_report:
                    next_report += progress_every
                    progress(stats)
                rec(t + 1, new)
            used[j] = False

    rec(0, [g[0] for g in gens])
    # leaves are exact by construction; re-check each distinct one anyway
    out = sorted(found)
    for sigma0 in out:
        stats.leaf_checks += 1
        sigma = Permutation.from_zero_based(sigma0)
        if kind is AutomorphismKind.STRONG:
            ok = is_strong(S, sigma)
        elif kind is AutomorphismKind.WEAK:
            ok = bool(is_weak(S, sigma))
        else:
            ok = _clifford_twist(tables, sigma0, least=False) is not None
        if not ok:
            raise InternalInconsistency(f"search accepted {sigma} but it fails the {kind.value} test")
    return out, stats


def _scan_worker(args):
    gens, kind, sources = args
    S = StabilizerGroup.from_strings(gens)
    return _scan(S, AutomorphismKind(kind), first_sources=sources)


# ---------------------------------------------------------------------------
# results


@dataclass
class AutomorphismResult:
    kind: AutomorphismKind
    n: int
    order: int
    elements: list[Permutation]
    generators: list[Permutation]
    witnesses: list[LocalCliffordTwist | tuple[int, ...] | None]
    transitivity_degree: int
    is_cyclic: bool
    stats: SearchStats | None = field(default=None, compare=False, repr=False)

    def __contains__(self, sigma: Permutation) -> bool:
        return sigma in set(self.elements)

    def point_stabilizer(self, points: Iterable[int]) -> list[Permutation]:
        pts = list(points)
        return [g for g in self.elements if all(g(p) == p for p in pts)]

    def to_dict(self, include_elements: bool = True) -> dict:
        d = {
            "kind": self.kind.value,
            "n": self.n,
            "order": self.order,
            "generators": [str(g) for g in self.generators],
            "transitivity_degree": self.transitivity_degree,
            "is_cyclic": self.is_cyclic,
        }
        if include_elements:
            d["elements"] = [str(g) for g in self.elements]
            d["witnesses"] = [_witness_to_json(w) for w in self.witnesses]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AutomorphismResult":
        from .pauli import parse_cycles

        n = d["n"]
        kind = AutomorphismKind(d["kind"])
        elements = [parse_cycles(s, n) for s in d.get("elements", [])]
        witnesses = [_witness_from_json(w) for w in d.get("witnesses", [None] * len(elements))]
        return cls(
            kind=kind,
            n=n,
            order=d["order"],
            elements=elements,
            generators=[parse_cycles(s, n) for s in d["generators"]],
            witnesses=witnesses,
            transitivity_degree=d["transitivity_degree"],
            is_cyclic=d["is_cyclic"],
        )


def _witness_to_json(w):
    if w is None:
        return None
    if isinstance(w, LocalCliffordTwist):
        return {"twist": w.names()}
    return {"signs": list(w)}


def _witness_from_json(w):
    if w is None:
        return None
    if "twist" in w:
        return LocalCliffordTwist.from_names(w["twist"])
    return tuple(w["signs"])


def group_generators(elements: Sequence[Permutation]) -> list[Permutation]:
    """A small generating set, picked greedily by descending order then lex.

    Raises ClosureError if the elements do not form a group.
    """
    if not elements:
        raise ClosureError("empty element list")
    n = elements[0].n
    elems = {e.zero_based for e in elements}
    if tuple(range(n)) not in elems:
        raise ClosureError("identity missing")
    ranked = sorted(elements, key=lambda e: (-e.order(), e.images))
    gens: list[tuple[int, ...]] = []
    closure = {tuple(range(n))}
    for e in ranked:
        z = e.zero_based
        if z in closure:
            continue
        gens.append(z)
        closure = _generate(gens, n)
        if not closure <= elems:
            raise ClosureError("element list is not closed under composition")
    if closure != elems:
        raise ClosureError("element list is not closed under composition")
    return [Permutation.from_zero_based(g) for g in gens]


def transitivity_degree(elements: Sequence[Permutation], n: int, max_t: int = 5) -> int:
    """Largest t <= max_t with the group transitive on ordered t-tuples."""
    group_generators(elements)  # closure check
    arrs = [e.zero_based for e in elements]
    best = 0
    for t in range(1, min(max_t, n) + 1):
        base = tuple(range(t))
        orbit = {tuple(a[i] for i in base) for a in arrs}
        if len(orbit) != factorial(n) // factorial(n - t):
            break
        best = t
    return best


def compute_group(
    S: StabilizerGroup,
    kind: AutomorphismKind | str,
    *,
    workers: int = 1,
    witnesses: bool = True,
    progress: Callable[[SearchStats], None] | None = None,
) -> AutomorphismResult:
    """All permutations of the given automorphism kind, sorted by image array."""
    kind = AutomorphismKind(kind)
    n = S.n
    if n > MAX_SEARCH_QUBITS:
        raise SearchBudgetError(f"search supports n <= {MAX_SEARCH_QUBITS}, got n={n}")
    if workers > 1 and n > 1:
        gens = [serialize_pauli(g) for g in S.generators]
        chunks = [[j] for j in range(n)]
        stats = SearchStats()
        found = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part, st in pool.map(_scan_worker, [(gens, kind.value, c) for c in chunks]):
                found.extend(part)
                stats.merge(st)
    else:
        found, stats = _scan(S, kind, progress=progress)
    found.sort()
    elements = [Permutation.from_zero_based(a) for a in found]
    log.info("%s search: %d elements, %s", kind.value, len(elements), stats)

    wit: list = [None] * len(elements)
    if witnesses and kind is not AutomorphismKind.STRONG:
        tables = _Tables(S)
        for idx, sigma in enumerate(elements):
            if kind is AutomorphismKind.WEAK:
                wit[idx] = is_weak(S, sigma).signs
            else:
                wit[idx] = _clifford_twist(tables, sigma.zero_based, least=True)
    return AutomorphismResult(
        kind=kind,
        n=n,
        order=len(elements),
        elements=elements,
        generators=group_generators(elements),
        witnesses=wit,
        transitivity_degree=transitivity_degree(elements, n),
        is_cyclic=any(len(e.cycles()) == 1 and len(e.cycles()[0]) == n for e in elements)
        or n == 1,
        stats=stats,
    )


def naive_group(S: StabilizerGroup, kind: AutomorphismKind | str) -> list[Permutation]:
    """Unpruned scan of all n! permutations; a test oracle for small n."""
    kind = AutomorphismKind(kind)
    n = S.n
    out = []
    for arr in permutations(range(n)):
        sigma = Permutation.from_zero_based(arr)
        if kind is AutomorphismKind.STRONG:
            ok = is_strong(S, sigma)
        elif kind is AutomorphismKind.WEAK:
            ok = bool(is_weak(S, sigma))
        else:
            ok = is_clifford(S, sigma) is not None
        if ok:
            out.append(sigma)
    return out


def default_workers() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# consistency with the nonexistence results


MATHIEU_ORDERS = {11: 7920, 12: 95040}


def consistency_violations(d: int, k: int, results: Iterable[AutomorphismResult]) -> list[str]:
    """Findings that would contradict the transitivity nonexistence results."""
    out = []
    for r in results:
        if r.kind is AutomorphismKind.CLIFFORD:
            continue
        n = r.n
        if d >= 3 and n >= 2 and r.order in (factorial(n), factorial(n) // 2):
            out.append(f"{r.kind.value} group of a d={d} code has order {r.order} (S_n or A_n)")
        if k >= 1 and n in MATHIEU_ORDERS and r.order == MATHIEU_ORDERS[n]:
            need = 5 if n == 12 else 4
            if r.transitivity_degree >= need:
                out.append(f"{r.kind.value} group looks like M_{n}")
    return out
