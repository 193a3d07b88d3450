"""Tests for the FI-module calculus: translation, difference, degrees."""
import random

import pytest

from fcalc.corpus import (
    augmentation_sequence, build, ex_upm_sequence, shift_kernel_witness,
)
from fcalc.exactlin import Coeff, Mat, ModuleMap
from fcalc.fimod import (
    NEG_INF, NOT_CERTIFIED, NatMap, TruncFIModule, WindowError,
    diff, dim_profile, direct_sum, exactness_transfer, generation_degree,
    is_stably_null, kappa, perm_word, postcompose,
    shift, stable_kernel, strong_degree, tensor, truncate, unit_map,
    verify_six_term, weak_degree,
)

Z, Q, F2 = Coeff.Z(), Coeff.Q(), Coeff.GF(2)

CORPUS_NAMES = [
    ("const", "Z", 6), ("atomic(2)", "Z", 6), ("zgeq(2)", "Z", 6),
    ("P(1)", "Z", 6), ("P(2)", "Z", 6), ("augmentation_kernel", "Z", 6),
    ("ex_upm_A", "F2", 6), ("ex_upm_F", "F2", 6),
    ("atomic(0)+atomic(3)", "Z", 6), ("P(1)", "Q", 6),
]


@pytest.fixture(scope="module")
def corpus():
    return {(n, c): build(n, c, N) for n, c, N in CORPUS_NAMES}


class TestStructure:
    def test_all_corpus_verify(self, corpus):
        for key, F in corpus.items():
            assert F.verify() == [], key

    def test_braid_violation_detected(self):
        # a fake action at level 3 that is not an involution
        F = build("P(1)", "Z", 3)
        sym = [list(s) for s in F.sym]
        sym[3][0] = Mat.from_rows(Z, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        G = TruncFIModule(Z, F.levels, F.incl, sym)
        bad = G.verify()
        assert any("involution" in msg and "level 3" in msg for msg in bad)

    def test_corrupted_inclusion_detected(self):
        F = build("P(1)", "Z", 3)
        incl = list(F.incl)
        rows = [list(r) for r in incl[2].mat.rows]
        rows[0] = [0, 0, 1]  # send the first point to the added point
        incl[2] = ModuleMap(F.levels[2], F.levels[3], Mat.from_rows(Z, rows))
        G = TruncFIModule(Z, F.levels, incl, F.sym)
        assert G.verify() != []

    def test_perm_word(self):
        rng = random.Random(3)
        for n in range(1, 6):
            for _ in range(10):
                perm = list(range(1, n + 1))
                rng.shuffle(perm)
                word = perm_word(tuple(perm))
                # rebuild: sigma = s_{w0+1} o ... o s_{wk+1}, rightmost
                # applied first, so wrap the composite from the right end
                out = list(range(1, n + 1))
                for i in reversed(word):
                    a, b = i + 1, i + 2
                    out = [b if v == a else a if v == b else v for v in out]
                assert out == perm

    def test_perm_matrix_on_free_functor(self):
        F = build("P(1)", "Z", 4)
        rng = random.Random(5)
        for _ in range(10):
            perm = list(range(1, 5))
            rng.shuffle(perm)
            mat = F.perm_matrix(4, tuple(perm))
            # P(1) basis element x is the injection 1 -> x; sigma acts by
            # post-composition, so e_x goes to e_{sigma(x)}
            for x in range(1, 5):
                row = mat.rows[x - 1]
                assert row[perm[x - 1] - 1] == 1
                assert sum(map(abs, row)) == 1


class TestShift:
    def test_shift_zero_is_identity(self, corpus):
        F = corpus[("P(1)", "Z")]
        assert shift(F, 0) is F

    def test_shift_additivity_exact(self, corpus):
        for key in [("P(1)", "Z"), ("zgeq(2)", "Z"), ("augmentation_kernel", "Z")]:
            F = corpus[key]
            assert shift(shift(F, 1), 1).structurally_equal(shift(F, 2)), key
            assert shift(shift(F, 2), 1).structurally_equal(shift(F, 3)), key

    def test_shift_of_constant(self, corpus):
        F = corpus[("const", "Z")]
        for x in (1, 3):
            S = shift(F, x)
            assert S.verify() == []
            assert dim_profile(S).dims == [1] * (F.N - x + 1)

    def test_shift_window_error(self, corpus):
        with pytest.raises(WindowError):
            shift(corpus[("const", "Z")], 7)

    def test_shift_results_verify(self, corpus):
        for key in [("P(2)", "Z"), ("ex_upm_F", "F2"), ("augmentation_kernel", "Z")]:
            assert shift(corpus[key], 1).verify() == [], key

    def test_shift_kernel_is_rank_functor(self):
        # the stated isomorphism onto the shifted augmentation kernel
        K = build("augmentation_kernel", "Z", 8)
        w = shift_kernel_witness(K)
        assert w.is_natural()
        assert w.is_levelwise_iso()


class TestUnitMap:
    def test_unit_is_natural(self, corpus):
        for key in [("P(1)", "Z"), ("P(2)", "Z"), ("zgeq(2)", "Z"),
                    ("augmentation_kernel", "Z"), ("ex_upm_F", "F2")]:
            for x in (1, 2):
                u = unit_map(corpus[key], x)
                assert u.is_natural(), (key, x)

    def test_unit_level_zero_source(self):
        F = build("zgeq(1)", "Z", 5)
        u = unit_map(F, 1)
        assert u.maps[0].src.is_zero()

    def test_unit_into_zero_target(self):
        F = build("atomic(2)", "Z", 5)
        u = unit_map(F, 1)
        assert u.maps[2].dst.is_zero()
        assert u.maps[2].src.invariant_factors() == [1]

    def test_unit_of_rank_functor_is_basis_inclusion(self):
        # the basis of injections from one point embeds identically
        F = build("P(1)", "Z", 5)
        u = unit_map(F, 1)
        for n in range(5):
            mat = u.maps[n].mat
            assert mat.shape == (n, n + 1)
            for i in range(n):
                assert mat.rows[i][i] == 1
                assert sum(map(abs, mat.rows[i])) == 1


class TestDiffKappa:
    def test_diff_zgeq_is_atomic(self):
        for n in range(1, 5):
            F = build(f"zgeq({n})", "Z", 8)
            d = diff(F)
            target = build(f"atomic({n - 1})", "Z", 7)
            assert d.profile_eq(target), n

    def test_diff_of_atomic(self):
        F = build("atomic(3)", "Z", 8)
        assert diff(F).profile_eq(build("atomic(2)", "Z", 7))

    def test_diff_P1_is_constant(self):
        d = diff(build("P(1)", "Z", 8))
        assert d.profile_eq(build("const", "Z", 7))

    def test_diff_augmentation_kernel_is_zgeq1(self):
        d = diff(build("augmentation_kernel", "Z", 8))
        assert d.profile_eq(build("zgeq(1)", "Z", 7))

    def test_diff_results_verify(self, corpus):
        for key in [("P(2)", "Z"), ("augmentation_kernel", "Z"), ("ex_upm_F", "F2")]:
            assert diff(corpus[key]).verify() == [], key

    def test_kappa_P1_vanishes(self, corpus):
        assert kappa(corpus[("P(1)", "Z")]).is_zero_functor()

    def test_kappa_atomic_is_atomic(self):
        F = build("atomic(2)", "Z", 6)
        k = kappa(F)
        assert k.profile_eq(truncate(build("atomic(2)", "Z", 6), 5))

    def test_kappa_zgeq_vanishes(self):
        assert kappa(build("zgeq(3)", "Z", 6)).is_zero_functor()

    def test_kappa_idempotent(self, corpus):
        for key in [("atomic(0)+atomic(3)", "Z"), ("zgeq(2)", "Z"),
                    ("augmentation_kernel", "Z")]:
            F = corpus[key]
            k1 = kappa(F)
            k2 = kappa(k1)
            assert k2.profile_eq(truncate(k1, k1.N - 1)), key

    def test_diff_shift_commute_with_witness(self, corpus):
        # the transposition of the two relevant points descends to an
        # isomorphism shift(diff F) -> diff(shift F), naturally
        for key in [("P(1)", "Z"), ("zgeq(2)", "Z"), ("augmentation_kernel", "Z"),
                    ("ex_upm_F", "F2")]:
            F = corpus[key]
            left = shift(diff(F), 1)
            right = diff(shift(F, 1))
            assert left.N == right.N
            maps = []
            for n in range(left.N + 1):
                swap = F.sym[n + 2][n]
                maps.append(ModuleMap(left.levels[n], right.levels[n], swap))
            w = NatMap(left, right, maps)
            assert all(f.is_well_defined() for f in w.maps), key
            assert w.is_natural(), key
            assert w.is_levelwise_iso(), key

    def test_kappa_shift_commute_profiles(self, corpus):
        for key in [("atomic(0)+atomic(3)", "Z"), ("zgeq(2)", "Z")]:
            F = corpus[key]
            left = shift(kappa(F), 1)
            right = kappa(shift(F, 1))
            assert left.profile_eq(right), key


class TestStableNullity:
    def test_atomics_are_stably_null(self):
        F = build("atomics_upto(4)", "Z", 8)
        assert is_stably_null(F, 1)

    def test_constant_is_not(self, corpus):
        assert not is_stably_null(corpus[("const", "Z")], 1)

    def test_zgeq2_is_not(self, corpus):
        assert not is_stably_null(corpus[("zgeq(2)", "Z")], 1)

    def test_stable_kernel_of_atomics(self):
        F = build("atomic(0)+atomic(3)", "Z", 6)
        sk = stable_kernel(F, 1)
        assert sk.profile_eq(truncate(F, 5))

    def test_stable_kernel_of_constant(self, corpus):
        assert stable_kernel(corpus[("const", "Z")], 2).is_zero_functor()

    def test_stable_kernel_of_augmentation_kernel(self):
        F = build("augmentation_kernel", "Z", 6)
        assert stable_kernel(F, 1).is_zero_functor()

    def test_window_errors(self, corpus):
        with pytest.raises(WindowError):
            is_stably_null(corpus[("const", "Z")], 8)


class TestDegrees:
    def test_strong_degrees(self):
        assert strong_degree(build("const", "Z", 6)).value == 0
        assert strong_degree(build("zgeq(4)", "Z", 10)).value == 4
        assert strong_degree(build("P(2)", "Z", 7)).value == 2
        assert strong_degree(build("augmentation_kernel", "Z", 7)).value == 2

    def test_strong_degree_zero_functor(self):
        assert strong_degree(build("zgeq(9)", "Z", 5)).value == NEG_INF

    def test_strong_degree_window_exhaustion(self):
        assert strong_degree(build("zgeq(4)", "Z", 4)).value == NOT_CERTIFIED

    def test_weak_degrees(self):
        assert weak_degree(build("augmentation_kernel", "Z", 10), 2).value == 1
        assert weak_degree(build("atomics_upto(6)", "Z", 10), 1).value == NEG_INF
        for n in range(4):
            assert weak_degree(build(f"zgeq({n})", "Z", 8), 1).value == 0, n

    def test_weak_le_strong(self, corpus):
        for key, F in corpus.items():
            s = strong_degree(F)
            w = weak_degree(F, 1)
            if s.certified and w.certified:
                sv = -10**9 if s.value == NEG_INF else s.value
                wv = -10**9 if w.value == NEG_INF else w.value
                assert wv <= sv, key

    def test_generation_equals_strong(self, corpus):
        for key, F in corpus.items():
            s = strong_degree(F)
            if not s.certified or s.value == NEG_INF:
                continue
            g = generation_degree(F)
            assert g.value == s.value, key

    def test_strong_zero_iff_surjections_from_zero(self, corpus):
        for key, F in corpus.items():
            s = strong_degree(F)
            if not s.certified or s.value == NEG_INF:
                continue
            from fcalc.exactlin import cokernel
            all_epi = all(
                cokernel(F.unit_to(0, n))[0].is_zero() for n in range(F.N + 1))
            assert (s.value == 0) == all_epi, key

    def test_degree_report_str(self):
        rep = strong_degree(build("zgeq(4)", "Z", 10))
        assert str(rep) == "degree = 4, window [0,5]"


class TestDimProfile:
    def test_P1_over_Q(self):
        prof = dim_profile(build("P(1)", "Q", 7))
        assert prof.dims == list(range(8))
        assert prof.diffs[2] == [0] * 6
        assert prof.poly_degree == 1 and prof.poly_from == 0

    def test_augmentation_kernel_over_Q(self):
        K = build("augmentation_kernel", "Q", 7)
        prof = dim_profile(K)
        assert prof.dims == [0, 0, 1, 2, 3, 4, 5, 6]
        assert prof.poly_degree == 1 and prof.poly_from == 1

    def test_constant(self):
        prof = dim_profile(build("const", "Q", 5))
        assert prof.dims == [1] * 6
        assert prof.diffs[1] == [0] * 5
        assert prof.poly_degree == 0

    def test_dv_recursion_past_kappa_support(self, corpus):
        for key in [("P(1)", "Q"), ("ex_upm_A", "F2"), ("ex_upm_F", "F2")]:
            F = corpus[key]
            k = kappa(F)
            support = max(
                (n for n in range(k.N + 1) if not k.levels[n].is_zero()),
                default=-1)
            dims = dim_profile(F).dims
            ddims = dim_profile(diff(F)).dims
            for n in range(support + 1, F.N):
                assert dims[n + 1] == dims[n] + ddims[n], (key, n)


class TestSums:
    def test_direct_sum_additivity(self):
        F = build("atomic(0)+atomic(3)", "Z", 6)
        assert dim_profile(F).dims == [1, 0, 0, 1, 0, 0, 0]
        assert F.verify() == []

    def test_sum_with_zero(self):
        F = build("P(1)", "Z", 5)
        Zero = build("zgeq(9)", "Z", 5)
        S = direct_sum(F, Zero)
        assert S.profile_eq(F)

    def test_tensor_multiplicativity(self):
        F = build("P(1)", "Q", 5)
        T = tensor(F, F)
        assert dim_profile(T).dims == [n * n for n in range(6)]
        assert T.verify() == []

    def test_tensor_needs_field(self):
        F = build("P(1)", "Z", 4)
        with pytest.raises(Exception):
            tensor(F, F)


class TestPostcompose:
    def test_exterior_square_of_P1(self):
        E = postcompose(build("P(1)", "Q", 7), "L2")
        assert dim_profile(E).dims == [n * (n - 1) // 2 for n in range(8)]
        assert E.verify() == []
        assert strong_degree(E).value == 2

    def test_tensor_square_of_P1(self):
        T = postcompose(build("P(1)", "Q", 7), "T2")
        assert dim_profile(T).dims == [n * n for n in range(8)]
        assert strong_degree(T).value == 2

    def test_symmetric_square_of_P1(self):
        S = postcompose(build("P(1)", "Q", 6), "S2")
        assert dim_profile(S).dims == [n * (n + 1) // 2 for n in range(7)]
        assert S.verify() == []

    def test_tensor_square_of_constant(self):
        C = postcompose(build("const", "Q", 5), "T2")
        assert dim_profile(C).dims == [1] * 6

    def test_degree_bound(self):
        # composite degree is at most (power) * (degree)
        for token, k in (("T2", 2), ("L2", 2), ("S2", 2)):
            E = postcompose(build("P(1)", "Q", 7), token)
            s = strong_degree(E)
            assert s.certified and s.value <= k * 1

    def test_rejects_integer_coefficients(self):
        with pytest.raises(Exception):
            postcompose(build("P(1)", "Z", 5), "L2")

    def test_freeified_input(self):
        # a presented (non-free) functor goes through the free normalization
        F = build("ex_upm_F", "F2", 5)
        T = postcompose(F, "T2")
        dims = dim_profile(F).dims
        assert dim_profile(T).dims == [d * d for d in dims]


class TestSixTerm:
    def test_six_term_on_corpus(self):
        for name, coeff, N in [("zgeq(2)", "Z", 6), ("const", "Z", 5),
                               ("augmentation_kernel", "Z", 6),
                               ("P(2)", "F2", 6)]:
            assert verify_six_term(build(name, coeff, N)), name

    def test_six_term_window_error(self):
        with pytest.raises(WindowError):
            verify_six_term(build("const", "Z", 1))


class TestExactnessTransfer:
    def test_augmentation_sequence(self):
        incl, proj = augmentation_sequence(Z, 6)
        assert incl.is_natural() and proj.is_natural()
        assert exactness_transfer(incl, proj, 1)

    def test_ex_upm_sequence(self):
        incl, proj = ex_upm_sequence(F2, 6)
        assert incl.is_natural() and proj.is_natural()
        assert exactness_transfer(incl, proj, 1)

    def test_zgeq_in_constant(self):
        F = build("zgeq(2)", "Z", 6)
        C = build("const", "Z", 6)
        maps = [ModuleMap(F.levels[n], C.levels[n],
                          Mat.identity(Z, 1) if n >= 2 else Mat.zero(Z, 0, 1))
                for n in range(7)]
        incl = NatMap(F, C, maps)
        from fcalc.fimod import cokernel_nat
        Q_, proj = cokernel_nat(incl)
        assert exactness_transfer(incl, proj, 1)


class TestSerialization:
    def test_round_trip(self, corpus):
        for key in [("P(2)", "Z"), ("augmentation_kernel", "Z"), ("ex_upm_F", "F2")]:
            F = corpus[key]
            G = TruncFIModule.from_json(F.to_json())
            assert F.structurally_equal(G), key

    def test_entries_are_strings(self):
        F = build("P(1)", "Z", 3)
        data = F.to_json()
        assert data["incl"][1][0][0] == "1"
