import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabaut.group import (
    BadPhase,
    ContainsMinusI,
    DependentGenerators,
    MembershipAnswer,
    MembershipStatus,
    NonCommuting,
    StabilizerError,
    StabilizerGroup,
    build_group,
    contains,
    enumerate_elements,
    in_normalizer,
)
from stabaut.pauli import PauliOperator, commutes, multiply, parse_pauli, serialize_pauli

FIVE = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


class TestBuild:
    def test_five_qubit(self):
        S = build_group(FIVE)
        assert (S.n, S.m, S.k) == (5, 4, 1)

    def test_non_commuting(self):
        with pytest.raises(NonCommuting) as exc:
            build_group(["XI", "ZI"])
        assert (exc.value.i, exc.value.j) == (0, 1)

    def test_dependent(self):
        with pytest.raises(StabilizerError):
            build_group(["XX", "-XX"])
        with pytest.raises(DependentGenerators) as exc:
            build_group(["XX", "ZZ", "YY"])
        assert exc.value.i == 2

    def test_minus_identity(self):
        with pytest.raises(ContainsMinusI):
            build_group(["XX", "-XX"], reduce=True)
        with pytest.raises(ContainsMinusI):
            build_group(["XX", "ZZ", "YY"], reduce=True)
        with pytest.raises(ContainsMinusI):
            build_group(["-II"])

    def test_reduce_drops_consistent_dependents(self):
        S = build_group(["XX", "ZZ", "-YY"], reduce=True)
        assert S.m == 2
        assert [serialize_pauli(g) for g in S.generators] == ["XX", "ZZ"]

    def test_bad_phase(self):
        with pytest.raises(BadPhase):
            build_group(["iXX"])
        with pytest.raises(BadPhase):
            build_group(["-iZ"])

    def test_shape_errors(self):
        with pytest.raises(StabilizerError):
            build_group([])
        with pytest.raises(StabilizerError):
            build_group(["XX", "ZZZ"])
        with pytest.raises(ValueError):
            build_group(["XQ"])

    def test_signed_elements_of_three_qubit_example(self):
        S = build_group(["XXX", "YYI", "ZXZ"])
        assert (S.m, S.k) == (3, 0)
        got = {serialize_pauli(e) for e in S.elements()}
        assert got == {"III", "XXX", "YYI", "ZXZ", "-ZZX", "-YIY", "XZZ", "-IYY"}
        assert sum(e.sign < 0 for e in S.elements()) == 3


class TestContains:
    def test_exact(self):
        ans = contains(build_group(["XZZ", "ZXZ"]), parse_pauli("YYI"))
        assert ans.status is MembershipStatus.EXACT and ans.sign == 1

    def test_up_to_sign(self):
        ans = contains(build_group(["XXX", "YYI", "ZXZ"]), parse_pauli("ZZX"))
        assert ans.status is MembershipStatus.UP_TO_SIGN and ans.sign == -1
        assert ans.found and not ans.exact

    def test_absent(self):
        ans = contains(build_group(FIVE), parse_pauli("XIZIX"))
        assert ans.status is MembershipStatus.ABSENT and ans.sign is None

    def test_errors(self):
        S = build_group(FIVE)
        with pytest.raises(ValueError):
            contains(S, parse_pauli("XX"))
        with pytest.raises(ValueError):
            contains(S, parse_pauli("iXIIII"))

    def test_answer_invariant(self):
        with pytest.raises(ValueError):
            MembershipAnswer(MembershipStatus.ABSENT, 1)
        with pytest.raises(ValueError):
            MembershipAnswer(MembershipStatus.EXACT)

    def test_agrees_with_enumeration(self, groups):
        for name, S in groups.items():
            if S.m > 12:
                continue
            elems = {(e.x, e.z): e.phase for e in S.elements()}
            assert S.element_index() == elems
            for (x, z), ph in elems.items():
                p = PauliOperator(S.n, ph, x, z)
                assert contains(S, p).exact, name
                assert contains(S, p.negate()).status is MembershipStatus.UP_TO_SIGN


class TestEnumerate:
    def test_five_qubit_all_positive(self):
        elems = list(enumerate_elements(build_group(FIVE)))
        assert len(elems) == 16
        assert serialize_pauli(elems[0]) == "IIIII"
        assert all(e.sign == 1 for e in elems)
        assert len({(e.x, e.z) for e in elems}) == 16

    def test_single_generator(self):
        assert [serialize_pauli(e) for e in build_group(["ZI"]).elements()] == ["II", "ZI"]

    def test_closed_and_free_of_minus_identity(self, groups):
        for name, S in groups.items():
            if S.m > 8:
                continue
            elems = list(S.elements())
            table = {(e.x, e.z): e.phase for e in elems}
            assert len(table) == len(elems) == 1 << S.m, name
            for a, b in itertools.product(elems, repeat=2):
                c = multiply(a, b)
                assert table[(c.x, c.z)] == c.phase, name

    def test_size_guard(self):
        # 21 commuting independent generators
        gens = ["I" * j + "Z" + "I" * (20 - j) for j in range(21)]
        S = build_group(gens)
        with pytest.raises(ValueError):
            next(iter(S.elements()))


class TestNormalizer:
    def test_examples(self):
        S = build_group(FIVE)
        assert in_normalizer(S, parse_pauli("XIZIX"))
        assert not in_normalizer(S, parse_pauli("XIIII"))
        assert in_normalizer(S, parse_pauli("IIIII"))

    def test_normalizer_commutes_with_all_elements(self, groups):
        S = groups["513"]
        elems = list(S.elements())
        for x in range(32):
            for z in range(32):
                p = PauliOperator(5, 0, x, z)
                if in_normalizer(S, p):
                    assert all(commutes(s, p) for s in elems)

    def test_syndrome(self):
        S = build_group(FIVE)
        assert S.syndrome(parse_pauli("XIZIX")) == 0
        assert S.syndrome(parse_pauli("XIIII")) == 0b1000


@st.composite
def random_groups(draw):
    """Greedily keep random Paulis that commute with, and are independent of, earlier picks."""
    n = draw(st.integers(1, 5))
    kept: list[PauliOperator] = []
    for _ in range(draw(st.integers(1, 2 * n))):
        x = draw(st.integers(0, (1 << n) - 1))
        z = draw(st.integers(0, (1 << n) - 1))
        sign = draw(st.sampled_from([0, 2]))
        p = PauliOperator(n, (bin(x & z).count("1") + sign) % 4, x, z)
        if (x | z) and all(commutes(p, q) for q in kept):
            try:
                StabilizerGroup(kept + [p])
            except StabilizerError:
                continue
            kept.append(p)
    if not kept:
        kept = [PauliOperator(n, 0, 0, 1)]
    return StabilizerGroup(kept)


@settings(max_examples=80, deadline=None)
@given(random_groups(), st.data())
def test_membership_matches_enumeration(S, data):
    assert S.m <= S.n
    elems = list(S.elements())
    assert len({(e.x, e.z) for e in elems}) == len(elems)
    n = S.n
    x = data.draw(st.integers(0, (1 << n) - 1))
    z = data.draw(st.integers(0, (1 << n) - 1))
    p = PauliOperator(n, (bin(x & z).count("1") + data.draw(st.sampled_from([0, 2]))) % 4, x, z)
    assert S.contains(p).exact == (p in elems)
    assert S.contains(p).found == any((e.x, e.z) == (x, z) for e in elems)
    if S.in_normalizer(p):
        assert all(commutes(e, p) for e in elems)
