from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA, anf
from oracles import direct_wht
from plateau.bitfn import BinaryMatrix, BooleanFunction, random_invertible
from plateau.classify import classify_plateaued, is_affine_subspace, linear_structures, support_rank
from plateau.construct import (
    ConditionError,
    DuplicateRowError,
    NotPlateauedError,
    SpectralSpec,
    VectorialBent,
    affine_block_support,
    bent_distance_to_profile,
    check_partition,
    concat_bent,
    construct_spectral,
    construct_thm41,
    construct_thm42,
    construct_thm43,
    disjoint_family,
    dual_weights,
    family_from_members,
    gf_mul,
    mm_bent,
    mm_plateaued_family,
    q_partition,
    search_duals,
    subspace_indicator,
    support_from_columns,
)
from plateau.spectral import NotBentError, is_bent, plateaued_profile, walsh_support
from plateau.textio import read_support

X1, X2, X3, X4 = (BooleanFunction.variable(i, 4) for i in range(1, 5))
TABLE2_G = anf(4, (1, 3), (2, 4))
EX41 = anf(5, (1, 3), (2, 4), (1, 2, 5))


def table2_support():
    return support_from_columns([X1, X2, X3, X4, X3 * X4])


def random_thm41_parts(n: int, s: int, seed: int):
    """(psi, t, ts, c, M) with t_1 of full degree k, so the support is not affine when k >= 2."""
    rng = np.random.default_rng(seed)
    k = (n - s) // 2
    psi = rng.permutation(1 << k).tolist()
    t = BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8))
    ts = [BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8)) for _ in range(s)]
    if ts[0].degree < k:
        ts[0] = ts[0] + anf(k, tuple(range(1, k + 1)))
    c = int(rng.integers(1 << (2 * k)))
    return psi, t, ts, c, random_invertible(2 * k, seed)


def random_thm41(n: int, s: int, seed: int) -> BooleanFunction:
    return construct_thm41(*random_thm41_parts(n, s, seed))


class TestSpectral:
    def test_table2_support(self):
        sup = table2_support()
        assert sup == read_support(DATA / "table2.support")
        assert sup.points[3] == 0b00111 and sup.points[15] == 0b11111
        assert sup.s == 1 and len(sup) == 16

    def test_example(self):
        assert construct_spectral(table2_support(), TABLE2_G) == EX41

    def test_duplicate_rows(self):
        with pytest.raises(DuplicateRowError) as exc:
            support_from_columns([X1, X2, X3, X3 * X4])
        assert exc.value.rows == (0, 1)

    def test_dual_weights(self):
        assert dual_weights(4) == (6, 10)
        assert dual_weights(6) == (28, 36)

    def test_wrong_weight(self):
        with pytest.raises(NotPlateauedError) as exc:
            construct_spectral(table2_support(), anf(4, (1, 2)))
        assert exc.value.point == 0

    def test_odd_dim_rejected(self):
        sup = support_from_columns([BooleanFunction.variable(i, 3) for i in (1, 2, 3)] + [anf(3, (1, 2))])
        with pytest.raises(ConditionError):
            SpectralSpec(sup, anf(3, (1, 2)))

    def test_spectrum_matches_direct(self):
        f = construct_spectral(table2_support(), TABLE2_G)
        assert direct_wht(f.table) == SpectralSpec(table2_support(), TABLE2_G).spectrum().tolist()

    @settings(max_examples=100)
    @given(st.integers(0, 2**32 - 1), st.booleans())
    def test_iff(self, seed, corrupt):
        """Construction succeeds exactly when the dual is at bent distance to the profile."""
        rng = np.random.default_rng(seed)
        n, s = [(5, 1), (6, 2), (7, 3), (8, 2)][seed % 4]
        m = n - s
        cols = [BooleanFunction.variable(i, m) for i in range(1, m + 1)]
        cols += [BooleanFunction(m, rng.integers(0, 2, 1 << m, dtype=np.uint8)) for _ in range(s)]
        order = rng.permutation(n)
        sup = support_from_columns([cols[i] for i in order])
        k = m // 2
        g = mm_bent(rng.permutation(1 << k).tolist(), BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8)))
        if corrupt:
            # flip two points: keeps an admissible weight only sometimes
            t = g.table.copy()
            i, j = rng.choice(1 << m, 2, replace=False)
            t[i] ^= 1
            t[j] ^= 1
            g = BooleanFunction(m, t)
        verdict = bent_distance_to_profile(sup, g)
        try:
            f = construct_spectral(sup, g)
        except NotPlateauedError as exc:
            assert verdict == (exc.point, exc.distance)
        else:
            assert verdict is None
            assert plateaued_profile(f).s == s and walsh_support(f) == sup.as_set()


class TestMaioranaMcFarland:
    def test_table2_dual(self):
        assert mm_bent([0, 1, 2, 3], None) == TABLE2_G
        assert is_bent(TABLE2_G)

    def test_not_a_permutation(self):
        with pytest.raises(ConditionError):
            mm_bent([0, 1, 1, 3], None)

    @given(st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_always_bent(self, k, seed):
        rng = np.random.default_rng(seed)
        t = BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8))
        assert is_bent(mm_bent(rng.permutation(1 << k).tolist(), t))

    def test_family_orders(self):
        # k = 2, s = 4: four members, each (s - k)-plateaued, with disjoint supports
        rng = np.random.default_rng(1)
        parts = rng.permutation(16).reshape(4, 4).tolist()
        gs = [BooleanFunction(2, rng.integers(0, 2, 4, dtype=np.uint8)) for _ in parts]
        fam = mm_plateaued_family(parts, gs, 2, 4)
        sups = [walsh_support(f) for f in fam]
        for f in fam:
            prof = plateaued_profile(f)
            assert prof.s == 2 and prof.amplitude == 1 << 4
        assert sum(map(len, sups)) == len(frozenset().union(*sups)) == 64
        for phi, S in zip(parts, sups):
            assert is_affine_subspace(S) == is_affine_subspace(phi)

    def test_family_nontrivial(self):
        # the image {0, 1, 2, 4} is not an affine subspace
        fam = mm_plateaued_family([[0, 1, 2, 4], [3, 5, 6, 7]], [None, None], 2, 3)
        assert [str(classify_plateaued(f)) for f in fam] == ["nontrivial(1)", "nontrivial(1)"]

    def test_family_guards(self):
        with pytest.raises(ConditionError):
            mm_plateaued_family([[0, 1, 2, 3], [3, 4, 5, 6]], [None, None], 2, 3)
        with pytest.raises(ConditionError):
            mm_plateaued_family([[0, 1, 1, 3]], [None], 2, 3)
        with pytest.raises(ConditionError):
            mm_plateaued_family([[0, 1, 2, 3]], [None], 2, 2)


class TestThm41:
    def test_example(self):
        assert construct_thm41([0, 1, 2, 3], None, [anf(2, (1, 2))]) == EX41

    def test_x_dependence_rejected(self):
        with pytest.raises(ConditionError):
            construct_thm41([0, 1, 2, 3], None, [anf(4, (1, 3))])

    def test_accepts_lifted_y_function(self):
        assert construct_thm41([0, 1, 2, 3], None, [anf(4, (3, 4))]) == EX41

    @pytest.mark.parametrize("n,s", [(5, 1), (6, 2), (7, 1), (7, 3), (8, 2), (9, 1)])
    def test_orders(self, n, s):
        for seed in range(5):
            f = random_thm41(n, s, seed)
            assert plateaued_profile(f).s == s
            S = walsh_support(f)
            assert not is_affine_subspace(S)

    def test_affine_columns_give_trivial(self):
        f = construct_thm41([0, 2, 1, 3], anf(2, (1, 2)), [anf(2, (1,))], c=5, M=random_invertible(4, 9))
        assert str(classify_plateaued(f)) == "trivial(1)"

    def test_affine_block_rows(self):
        M = random_invertible(4, 2)
        sup = affine_block_support(0b0110, M, [anf(4, (3, 4))])
        for i, w in enumerate(sup.points):
            assert w >> 1 == 0b0110 ^ M.vecmul(i)
            assert w & 1 == ((i >> 1) & i & 1)


class TestThm42:
    def test_subspace_indicator(self):
        f = subspace_indicator([0b10, 0b01], 2)
        assert f.table.tolist() == [1, 1, 1, 1]
        assert subspace_indicator([0b100], 3).table.tolist() == [1, 0, 0, 0, 1, 0, 0, 0]
        with pytest.raises(ConditionError):
            subspace_indicator([0b11, 0b11], 2)

    def test_d_variant(self):
        # psi = id, E2 = <01>, E1 = <10>: psi(E2) = E1^perp
        f = construct_thm42("D", [0, 1, 2, 3], E1=[0b10], E2=[0b01])
        assert plateaued_profile(f).s == 1
        assert classify_plateaued(f).kind == "nontrivial"

    def test_d_condition(self):
        with pytest.raises(ConditionError):
            construct_thm42("D", [0, 1, 2, 3], E1=[0b10], E2=[0b10])

    def test_c_variant(self):
        f = construct_thm42("C", [0, 1, 2, 3], L=[0b10], c=3, M=random_invertible(4, 4))
        assert plateaued_profile(f).s == 1

    def test_c_condition(self):
        # y -> y^3 on GF(8) is APN: preimages of cosets of a plane are not affine
        psi = [gf_mul(gf_mul(y, y, 3), y, 3) for y in range(8)]
        assert sorted(psi) == list(range(8))
        with pytest.raises(ConditionError) as exc:
            construct_thm42("C", psi, L=[0b100])
        assert exc.value.witness is not None


class TestThm43:
    @pytest.mark.parametrize("k,lam", [(2, 2), (3, 3), (3, 2)])
    def test_field_components_bent(self, k, lam):
        H = VectorialBent.mm_field(k, lam)
        assert len(H.components) == lam

    def test_lambda_too_large(self):
        with pytest.raises(ConditionError):
            VectorialBent.mm_field(2, 3)

    def test_construct(self):
        H = VectorialBent.mm_field(3, 3)
        f = construct_thm43(H, 1, [], [2, 3], c=7, M=random_invertible(6, 5))
        prof = plateaued_profile(f)
        assert prof.s == 2 and f.n == 8
        g = construct_thm43(H, 2, [BooleanFunction.linear(0b101, 6)], [1])
        assert plateaued_profile(g).s == 2

    def test_guards(self):
        H = VectorialBent.mm_field(2, 2)
        with pytest.raises(ConditionError):
            construct_thm43(H, 1, [], [1])
        with pytest.raises(ConditionError):
            construct_thm43(H, 1, [anf(4, (1, 2))], [])
        with pytest.raises(ConditionError):
            construct_thm43(H, 3, [], [1])

    def test_gf_mul(self):
        # alpha^3 = alpha + 1 in GF(8)
        assert gf_mul(0b100, 0b010, 3) == 0b011
        for a in range(1, 16):
            assert sum(gf_mul(a, b, 4) == 1 for b in range(16)) == 1


class TestFamilies:
    def test_q_partition(self):
        assert q_partition(5, 1) == [0, 1]
        assert q_partition(6, 2) == [0, 1, 2, 3]
        with pytest.raises(ValueError):
            q_partition(4, 0)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_family(self, seed):
        n, s = [(5, 1), (6, 2)][seed % 2]
        psi, t, ts, c, M = random_thm41_parts(n, s, seed)
        k = (n - s) // 2
        base = affine_block_support(c, M, [ti.extend(2 * k, range(k + 1, 2 * k + 1)) for ti in ts])
        assert walsh_support(construct_thm41(psi, t, ts, c, M)) == base.as_set()
        rng = np.random.default_rng(seed)
        duals = [mm_bent(rng.permutation(1 << k).tolist(), None) for _ in range(1 << s)]
        fam = disjoint_family(base, duals)
        check_partition(fam.supports(), n)
        for f, S in zip(fam.members, fam.supports()):
            assert plateaued_profile(f).s == s and walsh_support(f) == S
            if support_rank(S) == n:
                assert linear_structures(f).dim == 0
        F = concat_bent(fam)
        assert F.n == n + s and is_bent(F)
        again = family_from_members(fam.members)
        assert again.shifts == fam.shifts

    def test_wrong_member_count(self):
        with pytest.raises(ConditionError):
            disjoint_family(table2_support(), [TABLE2_G])

    def test_corrupted_member(self):
        fam = disjoint_family(table2_support(), [TABLE2_G, TABLE2_G])
        broken = list(fam.members)
        broken[1] = broken[1] + anf(5, (1, 2, 3))
        with pytest.raises(NotBentError):
            concat_bent(broken)
        with pytest.raises(ConditionError):
            family_from_members(broken)

    def test_member_witness(self):
        bad = TABLE2_G + anf(4, (1, 2, 3, 4)) + anf(4, (1,))
        with pytest.raises(NotPlateauedError) as exc:
            disjoint_family(table2_support(), [TABLE2_G, bad])
        assert exc.value.member == 1

    def test_concat_guards(self):
        with pytest.raises(ConditionError):
            concat_bent([TABLE2_G, TABLE2_G, TABLE2_G])
        # equal supports overlap, so the concatenation is not bent
        with pytest.raises(NotBentError):
            concat_bent([EX41, EX41])


class TestDualSearch:
    def test_graph_support_count(self):
        mu1 = anf(4, (1, 2), (3, 4))
        sup = support_from_columns([X1, X2, X3, X4, mu1])
        res = search_duals(sup)
        assert res.exhaustive and res.count == 384 and res.candidates == 16016
        for g in res.duals[:20]:
            assert bent_distance_to_profile(sup, g) is None

    def test_affine_block_counts_bent(self):
        sup = support_from_columns([X1, X2, X3, X4, X1 + X3])
        res = search_duals(sup, keep=False)
        assert res.count == 896

    def test_table2_support_contains_dual(self):
        res = search_duals(table2_support())
        assert TABLE2_G in res.duals

    def test_no_duals(self):
        # an odd-weight column makes g + phi_u odd-weight, never bent
        sup = support_from_columns([X1, X2, X3, X4, X1 * X2 * X3])
        res = search_duals(sup, keep=False)
        assert res.count == 0 and res.candidates == 16016

    def test_sampling(self):
        sup = affine_block_support(0, BinaryMatrix.identity(6), [anf(6, (1, 2, 3))])
        res = search_duals(sup, samples=2000, seed=3)
        assert not res.exhaustive and res.candidates == 2000
        for g in res.duals:
            assert bent_distance_to_profile(sup, g) is None

    def test_sampling_required(self):
        sup = affine_block_support(0, BinaryMatrix.identity(6), [anf(6, (1, 2, 3))])
        with pytest.raises(ConditionError):
            search_duals(sup)
