from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import anf, boolean_functions, invertible_matrices
from oracles import gf2_rank
from plateau.bitfn import BinaryMatrix, BooleanFunction, apply_affine, random_invertible, span
from plateau.classify import (
    BudgetExceeded,
    SupportRelation,
    check_dual_relation,
    classify_plateaued,
    ea_equivalent_small,
    ea_fingerprint,
    find_support_relation,
    is_affine_subspace,
    is_partially_bent,
    linear_structures,
    support_rank,
)
from plateau.construct import construct_spectral, construct_thm41, mm_bent
from plateau.spectral import canonical_order, extract_dual, order_support, sequence_profile_column, walsh_support

EX41 = anf(5, (1, 3), (2, 4), (1, 2, 5))
EX32 = anf(6, (1, 3), (1, 2, 5), (2, 4), (2, 6))
EX31_F = anf(7, (1, 4), (2, 5), (3, 6), (4, 5, 6))
EX31_H = anf(7, (1,), (3,), (1, 4), (5,), (2, 5), (6,), (3, 6), (7,))
EX51_f = anf(5, (1, 3), (2, 4), (5,))
EX51_F = anf(5, (1, 3), (2, 4), (2, 5), (3, 5), (4, 5), (1,), (4,))
EX52_f = anf(5, (1, 2, 5), (1, 3), (2, 4), (5,))
EX52_F = anf(5, (1, 2, 5), (3, 4, 5), (1, 3), (1, 4), (2, 4), (2, 5), (3, 4), (4, 5), (3,), (4,), (5,))


def random_trivial(n: int, s: int, seed: int) -> BooleanFunction:
    """Trivial s-plateaued function: MM bent dual on a random coset."""
    rng = np.random.default_rng(seed)
    m = n - s
    k = m // 2
    psi = rng.permutation(1 << k).tolist()
    t = BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8))
    M = random_invertible(n, int(rng.integers(1 << 30)))
    off = int(rng.integers(1 << n))
    S = {off ^ x for x in span(list(M.rows[:m]))}
    sup = order_support(S, off, M)
    return construct_spectral(sup, mm_bent(psi, t, k))


class TestAffineSubspace:
    def test_examples(self):
        assert not is_affine_subspace({0b010, 0b011, 0b111, 0b101})
        assert is_affine_subspace({x << 1 for x in range(64)})
        assert is_affine_subspace({0b1011})

    @given(st.integers(1, 8), st.data())
    def test_cosets(self, n, data):
        M = data.draw(invertible_matrices(n))
        k = data.draw(st.integers(0, n))
        off = data.draw(st.integers(0, (1 << n) - 1))
        S = {off ^ x for x in span(list(M.rows[:k]))}
        assert is_affine_subspace(S)
        if 0 < len(S) < (1 << n):
            # swap one element out: no longer a coset
            outside = next(x for x in range(1 << n) if x not in S)
            T = (S - {max(S)}) | {outside}
            if len(S) > 2:
                assert not is_affine_subspace(T)


class TestClassification:
    def test_examples(self):
        assert str(classify_plateaued(EX31_F)) == "trivial(1)"
        assert str(classify_plateaued(EX41)) == "nontrivial(1)"
        assert str(classify_plateaued(EX32)) == "nontrivial(2)"
        assert classify_plateaued(anf(4, (1, 3), (2, 4))).kind == "not-plateaued"

    def test_partially_bent(self):
        assert not is_partially_bent(EX41)
        assert len(walsh_support(EX41)) == 16

    @given(st.integers(2, 8), st.integers(0, 2**32 - 1))
    def test_quadratics_partially_bent(self, n, seed):
        rng = np.random.default_rng(seed)
        monos = [(1 << (n - i)) | (1 << (n - j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        chosen = [m for m in monos if rng.integers(2)] + [1 << int(rng.integers(n))]
        f = BooleanFunction.from_anf(n, chosen)
        assert is_partially_bent(f)

    @pytest.mark.parametrize("seed", range(20))
    def test_trivial_constructions(self, seed):
        n, s = [(5, 1), (6, 2), (7, 1), (7, 3)][seed % 4]
        f = random_trivial(n, s, seed)
        assert str(classify_plateaued(f)) == f"trivial({s})"
        assert is_partially_bent(f)
        assert linear_structures(f).dim == s


class TestLinearStructures:
    def test_example(self):
        lam = linear_structures(EX32)
        assert lam.elements() == [0, 0b000101]
        assert support_rank(walsh_support(EX32)) == 5

    def test_no_structures(self):
        assert linear_structures(EX41).dim == 0
        assert support_rank(walsh_support(EX41)) == 5

    @given(boolean_functions(min_n=1, max_n=9))
    def test_rank_plus_dim(self, f):
        S = walsh_support(f)
        v = min(S)
        assert support_rank(S) == gf2_rank(w ^ v for w in S)
        assert support_rank(S) + linear_structures(f).dim == f.n

    @given(boolean_functions(min_n=2, max_n=8))
    def test_structures_are_derivative_constants(self, f):
        for a in linear_structures(f).elements():
            d = {f(x) ^ f(x ^ a) for x in range(1 << f.n)}
            assert len(d) == 1

    def test_rank_independent_of_base_point(self):
        S = walsh_support(EX32)
        for v in S:
            assert gf2_rank(w ^ v for w in S) == 5

    @pytest.mark.parametrize("seed", range(20))
    def test_nontrivial_constructions_full_rank(self, seed):
        rng = np.random.default_rng(seed)
        psi = rng.permutation(4).tolist()
        f = construct_thm41(psi, None, [anf(2, (1, 2))], c=int(rng.integers(16)), M=random_invertible(4, seed))
        S = walsh_support(f)
        assert support_rank(S) == 5
        assert linear_structures(f).dim == 0


class TestFingerprint:
    @settings(max_examples=100)
    @given(boolean_functions(min_n=2, max_n=8), st.data())
    def test_invariant(self, f, data):
        n = f.n
        A = data.draw(invertible_matrices(n))
        b, c = data.draw(st.integers(0, (1 << n) - 1)), data.draw(st.integers(0, (1 << n) - 1))
        h = apply_affine(f, A, b, c, data.draw(st.integers(0, 1)))
        fa, fh = ea_fingerprint(f), ea_fingerprint(h)
        assert fa == fh
        assert fa.support_rank + fa.lambda_dim == n

    def test_degree_difference(self):
        assert ea_fingerprint(EX31_F).differences(ea_fingerprint(EX31_H)) != []
        assert ea_fingerprint(EX31_F).algebraic_degree == 3
        assert ea_fingerprint(EX31_H).algebraic_degree == 2

    def test_transformed_pair_differs(self):
        assert ea_fingerprint(EX52_f).differences(ea_fingerprint(EX52_F))


class TestSupportRelation:
    @settings(max_examples=40)
    @given(st.sampled_from([EX41, EX32, EX52_F]), st.data())
    def test_planted(self, f, data):
        n = f.n
        A = data.draw(invertible_matrices(n))
        c = data.draw(st.integers(0, (1 << n) - 1))
        S_f = walsh_support(f)
        S_h = SupportRelation(A, c).apply(S_f)
        rel = find_support_relation(S_f, S_h, n)
        assert rel is not None and rel.apply(S_f) == S_h

    def test_rank_mismatch(self):
        S_f = walsh_support(EX41)
        S_h = {x << 1 for x in range(16)}
        assert find_support_relation(S_f, S_h, 5, budget=0) is None

    @settings(max_examples=30)
    @given(st.integers(2, 7), st.data())
    def test_cosets_always_related(self, n, data):
        k = data.draw(st.integers(0, n))
        M1, M2 = data.draw(invertible_matrices(n)), data.draw(invertible_matrices(n))
        o1, o2 = data.draw(st.integers(0, (1 << n) - 1)), data.draw(st.integers(0, (1 << n) - 1))
        S1 = {o1 ^ x for x in span(list(M1.rows[:k]))}
        S2 = {o2 ^ x for x in span(list(M2.rows[:k]))}
        rel = find_support_relation(S1, S2, n)
        assert rel is not None and rel.apply(S1) == S2

    def test_budget(self):
        S = walsh_support(EX32)
        rng = np.random.default_rng(0)
        # a full-rank random 16-set in F_2^6 of the same rank: search does not finish in 1 step
        T = set()
        while len(T) < 16 or gf2_rank(w ^ min(T) for w in T) != 5:
            T = set(rng.choice(64, 16, replace=False).tolist())
        with pytest.raises(BudgetExceeded):
            find_support_relation(S, T, 6, budget=1)


class TestDualRelation:
    @settings(max_examples=40)
    @given(st.sampled_from([EX41, EX32, EX31_F]), st.data())
    def test_planted(self, f, data):
        n = f.n
        A = data.draw(invertible_matrices(n))
        b, c = data.draw(st.integers(0, (1 << n) - 1)), data.draw(st.integers(0, (1 << n) - 1))
        eps = data.draw(st.integers(0, 1))
        h = apply_affine(f, A, b, c, eps)
        # h = f(xA + b) + c.x + eps moves the support to c + S_f A^T
        rel = SupportRelation(A, c)
        assert rel.apply(walsh_support(f)) == walsh_support(h)
        assert check_dual_relation(f, h, rel) is not None

    def test_profile_column_shift(self):
        sup = canonical_order(walsh_support(EX41), 5)
        g = extract_dual(EX41).base
        b = 0b10110
        h_dual = g + sequence_profile_column(sup, b)
        h = construct_spectral(sup, h_dual)
        rel = SupportRelation(BinaryMatrix.identity(5), 0)
        assert check_dual_relation(EX41, h, rel) == (b, 0)

    def test_invalid_relation(self):
        with pytest.raises(ValueError):
            check_dual_relation(EX41, EX41, SupportRelation(BinaryMatrix.identity(5), 1))

    def test_inequivalent_bent_duals(self):
        # same support, duals of degree 3 and 2: no relation certifies equivalence
        S = walsh_support(EX31_F)
        rel = SupportRelation(BinaryMatrix.identity(7), 0)
        g2 = construct_spectral(canonical_order(S, 7), anf(6, (1, 4), (2, 5), (3, 6)))
        assert check_dual_relation(EX31_F, g2, rel) is None
        assert ea_equivalent_small(EX31_F, EX31_H).status == "inequivalent"


class TestEquivalence:
    def test_example_pair(self):
        v = ea_equivalent_small(EX51_f, EX51_F)
        assert v.status == "equivalent"
        w = v.witness
        assert apply_affine(EX51_f, w.A, w.b, w.c, w.eps) == EX51_F

    def test_trivial_vs_nontrivial(self):
        v = ea_equivalent_small(EX52_f, EX52_F)
        assert v.status == "inequivalent"

    @settings(max_examples=25)
    @given(st.sampled_from([EX41, EX32, EX52_F, EX51_f]), st.data())
    def test_planted_always_found(self, f, data):
        n = f.n
        A = data.draw(invertible_matrices(n))
        b, c = data.draw(st.integers(0, (1 << n) - 1)), data.draw(st.integers(0, (1 << n) - 1))
        h = apply_affine(f, A, b, c, data.draw(st.integers(0, 1)))
        v = ea_equivalent_small(f, h)
        assert v.status == "equivalent"
        assert apply_affine(f, v.witness.A, v.witness.b, v.witness.c, v.witness.eps) == h

    @pytest.mark.parametrize("pair", [(EX52_f, EX52_F), (EX52_F, EX52_f)])
    def test_exhausted_search_is_definitive(self, pair, monkeypatch):
        # blind the invariant filter so the verdict has to come from the search itself
        import plateau.classify as cl

        class Same:
            def differences(self, other):
                return []

        monkeypatch.setattr(cl, "ea_fingerprint", lambda f: Same())
        v = cl.ea_equivalent_small(*pair)
        assert v.status == "inequivalent" and "exhaustive" in v.reason

    def test_linear_shift_is_equivalent(self):
        assert ea_equivalent_small(EX41, EX41 + anf(5, (5,))).status == "equivalent"

    def test_budget_inconclusive(self):
        h = apply_affine(EX32, random_invertible(6, 1), 5, 9, 1)
        v = ea_equivalent_small(EX32, h, budget=0)
        assert v.status == "inconclusive"

    def test_json(self):
        js = ea_equivalent_small(EX51_f, EX51_F).to_json()
        assert js["status"] == "equivalent" and set(js["witness"]) == {"A", "b", "c", "eps"}
        assert len(js["fingerprints"]) == 2
