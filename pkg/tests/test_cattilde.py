"""Tests for the concrete nullification of theta and sigma."""
from itertools import combinations, permutations
from math import factorial

import pytest

from fcalc.cattilde import (
    CatError, SIGMA, THETA, category, compose_partial, theta_tilde_count,
    tilde_compose, tilde_from_partial, tilde_hom, verify_axioms,
)


def brute_force_partial_injections(a: int, b: int):
    out = set()
    for k in range(min(a, b) + 1):
        for dom in combinations(range(1, a + 1), k):
            for vals in permutations(range(1, b + 1), k):
                out.add((dom, vals))
    return out


class TestHomSets:
    def test_theta_counts_against_enumeration(self):
        for a in range(5):
            for b in range(5):
                classes = tilde_hom(THETA, a, b)
                brute = brute_force_partial_injections(a, b)
                assert {h.as_partial() for h in classes} == brute, (a, b)
                assert len(classes) == theta_tilde_count(a, b)

    def test_sigma_counts(self):
        for n in range(5):
            for m in range(5):
                want = factorial(n) // factorial(n - m) if n >= m else 0
                assert len(tilde_hom(SIGMA, n, m)) == want, (n, m)

    def test_zero_is_final(self):
        for a in range(5):
            assert len(tilde_hom(THETA, a, 0)) == 1
            assert len(tilde_hom(SIGMA, a, 0)) == 1

    def test_zero_is_initial(self):
        for b in range(4):
            assert len(tilde_hom(THETA, 0, b)) == 1

    def test_sigma_tilde_matches_theta_hom(self):
        # the opposite-category comparison: classes n -> m correspond to
        # injections m -> n
        for n in range(5):
            for m in range(n + 1):
                classes = tilde_hom(SIGMA, n, m)
                injections = set(permutations(range(1, n + 1), m))
                assert {h.normal for h in classes} == injections, (n, m)

    def test_stabilization_index_theta(self):
        # stage a to stage a+1 is already a bijection: classes built with
        # extras capped at a match the full set
        for a in range(4):
            for b in range(4):
                full = {h.normal for h in tilde_hom(THETA, a, b)}
                capped = {h.normal for h in tilde_hom(THETA, a, b, max_extra=a + 2)}
                assert full == capped

    def test_eta_injective_on_homs(self):
        # distinct injections give distinct classes
        for a in range(4):
            for b in range(4):
                total_maps = set(permutations(range(1, b + 1), a))
                classes = {tilde_from_partial(a, b, tuple(range(1, a + 1)), f).normal
                           for f in total_maps}
                assert len(classes) == len(total_maps)


class TestComposition:
    def test_identity_laws(self):
        for a in range(4):
            ident = tilde_from_partial(a, a, tuple(range(1, a + 1)),
                                       tuple(range(1, a + 1)))
            for b in range(4):
                for f in tilde_hom(THETA, a, b):
                    ident_b = tilde_from_partial(b, b, tuple(range(1, b + 1)),
                                                 tuple(range(1, b + 1)))
                    assert tilde_compose(ident_b, f) == f
                    assert tilde_compose(f, ident) == f

    def test_totally_undefined_absorbs(self):
        bot = tilde_from_partial(2, 2, (), ())
        for f in tilde_hom(THETA, 2, 2):
            assert tilde_compose(bot, f).as_partial() == ((), ())
            assert tilde_compose(f, bot).as_partial() == ((), ())

    def test_table_matches_partial_injections(self):
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    for f in tilde_hom(THETA, a, b):
                        for g in tilde_hom(THETA, b, c):
                            lhs = tilde_compose(g, f).as_partial()
                            rhs = compose_partial(a, b, c, f.as_partial(),
                                                  g.as_partial())
                            assert lhs == rhs

    def test_mismatched_endpoints(self):
        f = tilde_from_partial(2, 3, (1,), (2,))
        with pytest.raises(CatError):
            tilde_compose(f, f)


class TestAxioms:
    def test_theta(self):
        report = verify_axioms(THETA, 3)
        assert report.ok
        assert report.checks > 1000

    def test_sigma(self):
        report = verify_axioms(SIGMA, 3)
        assert report.ok

    def test_category_lookup(self):
        assert category("theta") is THETA
        assert category("sigma") is SIGMA
        with pytest.raises(CatError):
            category("gamma")


class TestSerialization:
    def test_class_json(self):
        h = tilde_from_partial(3, 2, (1, 3), (2, 1))
        assert h.to_json() == {"domain": [1, 3], "values": [2, 1]}
