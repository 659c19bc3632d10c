from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abcover.combinatorics import PreconditionError, find_2factor, matching_poly
from abcover.flatband import (DisconnectedGraphError, charpoly_expansion,
                              componentwise_flatband, flatband_polynomial,
                              heilmann_lieb_check, is_flatband, moebius_expansion,
                              ramanujan_bound, theorem2_check, verify_charpoly_expansion,
                              verify_moebius_identity)
from abcover.generators import (bridged_odd_regular, named_fixture, random_multigraph,
                                random_regular_multigraph, random_weights)
from abcover.graph import Multigraph, SchrodingerWeights, hamiltonian_matrix
from abcover.poly import X, RationalPolynomial, char_poly
from abcover.rational import GaussianRational as G

from conftest import random_weighted_graphs


def k4_pair_bridged():
    """Two K4s, each with one edge subdivided, the new vertices joined by a bridge."""
    half = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]
    edges = half + [(u + 5, v + 5) for u, v in half] + [(4, 9)]
    return Multigraph(10, edges)


class TestFlatbandPolynomial:
    def test_lieb(self):
        g, w = named_fixture("lieb")
        rep = flatband_polynomial(g, w, early_exit=False)
        assert rep.gcd_poly == X
        assert [p for _, p in rep.per_gamma] == [X ** 3 - 4 * X, X, X]
        assert rep.roots.rational_roots == [(0, 1)] and rep.has_flat_bands
        assert rep.witness_coprime_set == []

    @pytest.mark.parametrize("name", ["theta", "zd_bouquet(2)", "k4", "petersen", "k33"])
    def test_no_flat_bands(self, name):
        g, w = named_fixture(name)
        rep = flatband_polynomial(g, w)
        assert rep.gcd_poly == RationalPolynomial([1]) and not rep.has_flat_bands
        assert rep.witness_coprime_set
        acc = RationalPolynomial()
        by_gamma = dict((gm, p) for gm, p in rep.per_gamma)
        from abcover.poly import poly_gcd
        for gm in rep.witness_coprime_set:
            acc = poly_gcd(acc, by_gamma[gm])
        assert acc.is_constant()

    def test_star_is_its_matching_polynomial(self):
        g, w = named_fixture("k1_3")
        assert flatband_polynomial(g, w).gcd_poly == X ** 4 - 3 * X ** 2

    def test_disconnected(self):
        g = Multigraph(3, [(0, 1)])
        with pytest.raises(DisconnectedGraphError):
            flatband_polynomial(g, SchrodingerWeights.adjacency(g))
        parts = componentwise_flatband(g, SchrodingerWeights.adjacency(g))
        assert [(v, str(r.gcd_poly)) for v, r in parts] == [((0, 1), "x^2 - 1"), ((2,), "x")]

    @given(st.integers(0, 2 ** 40))
    @settings(max_examples=60, deadline=None)
    def test_report_invariants(self, seed):
        g = random_multigraph(1 + seed % 6, 5 + seed % 4, seed, connected=True)
        w = random_weights(g, seed, complex_weights=bool(seed & 1))
        full = flatband_polynomial(g, w, early_exit=False)
        fast = flatband_polynomial(g, w)
        assert full.gcd_poly == fast.gcd_poly
        for _, p in full.per_gamma:
            assert full.gcd_poly.divides(p)
        assert full.gcd_poly.is_constant() == bool(full.witness_coprime_set)
        # pointwise criterion agrees with the gcd
        for lam in [r for r, _ in full.roots.rational_roots] + [Fraction(1, 3), 0, -1]:
            assert is_flatband(g, w, lam).is_flat == (full.gcd_poly(lam) == 0)
        if find_2factor(g) is not None:
            assert full.gcd_poly.is_constant()


class TestIsFlatband:
    def test_lieb_zero(self):
        g, w = named_fixture("lieb")
        flat, evals = is_flatband(g, w, 0)
        assert flat and all(v == 0 for _, v in evals)

    def test_lieb_one(self):
        g, w = named_fixture("lieb")
        flat, (gamma, value) = is_flatband(g, w, 1)
        assert not flat and gamma.cc == 0 and value == -3

    @pytest.mark.parametrize("lam", [0, 1, -3, Fraction(7, 5)])
    def test_k4(self, lam):
        g, w = named_fixture("k4")
        assert not is_flatband(g, w, lam).is_flat


class TestIdentities:
    def test_parallel_pair_by_hand(self):
        g = Multigraph(2, [(0, 1), (0, 1)])
        w1, w2 = G(1, 2), G(3, -1)
        w = SchrodingerWeights.build(g, [w1, w2])
        lhs = X ** 2 - (w1 + w2).abs2()
        terms = (X ** 2 - w1.abs2() - w2.abs2()) - (w1 * w2.conj() + w2 * w1.conj()).re
        assert lhs == terms == charpoly_expansion(g, w).to_real()
        assert verify_charpoly_expansion(g, w)

    def test_single_edge(self):
        g = Multigraph(2, [(0, 1)])
        w = SchrodingerWeights.build(g, [G(2, 7)], [1, Fraction(-1, 2)])
        assert verify_charpoly_expansion(g, w) and verify_moebius_identity(g, w)

    def test_single_vertex(self):
        g = Multigraph(1)
        w = SchrodingerWeights.build(g, potential=[Fraction(5, 2)])
        assert moebius_expansion(g, w).to_real() == X - Fraction(5, 2)
        assert verify_moebius_identity(g, w)

    def test_triangle_moebius_by_hand(self):
        g, w = named_fixture("triangle")
        k3 = char_poly(hamiltonian_matrix(g, w))
        assert k3 == X ** 3 - 3 * X - 2
        assert moebius_expansion(g, w).to_real() == k3 + 2 == X ** 3 - 3 * X

    @pytest.mark.parametrize("name", ["k4", "lieb", "theta", "zd_bouquet(2)", "house_like"])
    def test_fixtures(self, name):
        g, w = named_fixture(name)
        assert verify_charpoly_expansion(g, w) and verify_moebius_identity(g, w)

    def test_random_weighted(self):
        for g, w in random_weighted_graphs(99, 40, 5, 8):
            assert verify_charpoly_expansion(g, w)
            assert verify_moebius_identity(g, w)

    def test_detects_corruption(self):
        g, w = named_fixture("k4")
        wrong = SchrodingerWeights.build(g, [2] + [1] * 5)
        lhs = char_poly(hamiltonian_matrix(g, wrong))
        assert lhs != charpoly_expansion(g, w).to_real()


class TestHeilmannLieb:
    def test_bound_is_tight_ceiling(self):
        b = ramanujan_bound(3)
        assert b * b >= 8 and (b - Fraction(1, 10 ** 6)) ** 2 < 8
        assert ramanujan_bound(2) == 2 and ramanujan_bound(5) == 4

    @pytest.mark.parametrize("name", ["c_n(4)", "k4", "petersen", "k33"])
    def test_examples(self, name):
        g, _ = named_fixture(name)
        assert heilmann_lieb_check(g)

    def test_errors(self):
        e, _ = named_fixture("edge")
        with pytest.raises(PreconditionError):
            heilmann_lieb_check(e)
        star, _ = named_fixture("k1_3")
        with pytest.raises(PreconditionError):
            heilmann_lieb_check(star)
        k4, _ = named_fixture("k4")
        with pytest.raises(PreconditionError):
            heilmann_lieb_check(k4, SchrodingerWeights.build(k4, potential=[1, 0, 0, 0]))

    def test_numeric_cross_check(self):
        import numpy as np
        g, w = named_fixture("petersen")
        roots = np.roots([float(c) for c in reversed(matching_poly(g, w).coeffs)])
        assert np.all(np.abs(roots.real) <= 2 * np.sqrt(2) + 1e-9)


class TestRegularNoFlatBands:
    @pytest.mark.parametrize("name", ["k33", "petersen", "theta", "zd_bouquet(3)"])
    def test_named(self, name):
        g, w = named_fixture(name)
        assert theorem2_check(g, w)

    def test_bridged_k4s(self):
        g = k4_pair_bridged()
        assert g.is_regular() == 3
        assert theorem2_check(g, SchrodingerWeights.adjacency(g))

    @pytest.mark.parametrize("seed", range(6))
    def test_bridged_generator(self, seed):
        g = bridged_odd_regular(3 + 2 * (seed % 2), seed)
        assert theorem2_check(g, SchrodingerWeights.adjacency(g))

    def test_non_regular(self):
        g, w = named_fixture("lieb")
        with pytest.raises(PreconditionError):
            theorem2_check(g, w)

    @given(st.integers(0, 2 ** 40))
    @settings(max_examples=20, deadline=None)
    def test_random_weighted_regular(self, seed):
        g = random_regular_multigraph(4, 3, seed)
        assert theorem2_check(g, random_weights(g, seed))
