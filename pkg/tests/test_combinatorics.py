from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abcover.combinatorics import (MatchingPolynomials, PreconditionError, canonical_cycle,
                                   enumerate_cycles, enumerate_degree2_subgraphs,
                                   enumerate_matchings, enumerate_perfect_matchings,
                                   find_2factor, matching_poly, matching_poly_enum,
                                   orientations, two_factor_with_deficit,
                                   typeII_degree2_pair)
from abcover.generators import (named_fixture, random_multigraph, random_type_ii,
                                random_weights)
from abcover.graph import Multigraph, SchrodingerWeights, members
from abcover.poly import X, RationalPolynomial
from abcover.rational import GaussianRational as G

from conftest import brute_degree2_edge_sets

FIXTURES = ["zd_bouquet(2)", "theta", "lieb", "petersen", "k4", "k33", "c_n(5)",
            "k1_3", "house_like", "edge", "triangle"]


def adj(g):
    return SchrodingerWeights.adjacency(g)


class TestMatchings:
    def test_counts(self):
        assert len(list(enumerate_matchings(Multigraph(2, [(0, 1)])))) == 2
        c4, _ = named_fixture("c_n(4)")
        assert len(list(enumerate_matchings(c4))) == 7
        b, _ = named_fixture("zd_bouquet(3)")
        assert [m.edge_ids for m in enumerate_matchings(b)] == [()]

    def test_order_and_invariants(self):
        k4, _ = named_fixture("k4")
        ms = list(enumerate_matchings(k4))
        assert [m.edge_ids for m in ms] == sorted(m.edge_ids for m in ms)
        for m in ms:
            assert bin(m.covered).count("1") == 2 * len(m.edge_ids)

    def test_perfect(self):
        assert len(list(enumerate_perfect_matchings(Multigraph(2, [(0, 1)])))) == 1
        c4, _ = named_fixture("c_n(4)")
        assert len(list(enumerate_perfect_matchings(c4))) == 2
        tri, _ = named_fixture("triangle")
        assert list(enumerate_perfect_matchings(tri)) == []
        assert len(list(enumerate_perfect_matchings(Multigraph(0)))) == 1


class TestMatchingPolynomial:
    def test_edge_with_potentials(self):
        g = Multigraph(2, [(0, 1)])
        w = SchrodingerWeights.build(g, [G(2, -1)], [Fraction(1, 2), 3])
        expect = (X - Fraction(1, 2)) * (X - 3) - 5
        assert matching_poly_enum(g, w) == expect == matching_poly(g, w)

    @pytest.mark.parametrize("name,poly", [
        ("c_n(4)", X ** 4 - 4 * X ** 2 + 2),
        ("k1_3", X ** 4 - 3 * X ** 2),
        ("lieb", X ** 3 - 4 * X),
        ("k4", X ** 4 - 6 * X ** 2 + 3),
    ])
    def test_examples(self, name, poly):
        g, w = named_fixture(name)
        assert matching_poly(g, w) == poly == matching_poly_enum(g, w)

    def test_path_and_empty(self):
        p3 = Multigraph(3, [(0, 1), (1, 2)])
        assert matching_poly(p3, adj(p3)) == X ** 3 - 2 * X
        e = Multigraph(0)
        assert matching_poly(e, adj(e)) == RationalPolynomial([1])

    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixture_oracle(self, name):
        g, w = named_fixture(name)
        assert matching_poly(g, w) == matching_poly_enum(g, w)

    @given(st.integers(0, 2 ** 40))
    @settings(max_examples=80, deadline=None)
    def test_every_pivot(self, seed):
        g = random_multigraph(6, 9, seed)
        w = random_weights(g, seed + 3)
        mp = MatchingPolynomials(g, w)
        full = mp()
        for v in range(g.n):
            assert mp.expand(g.all_vertices, v) == full

    @given(st.integers(0, 2 ** 40), st.integers(0, 2 ** 40))
    @settings(max_examples=40, deadline=None)
    def test_disjoint_union(self, s1, s2):
        a = random_multigraph(3, 4, s1)
        b = random_multigraph(3, 4, s2)
        u = Multigraph(6, list(a.edges) + [(x + 3, y + 3) for x, y in b.edges])
        wa, wb = random_weights(a, s1), random_weights(b, s2)
        wu = SchrodingerWeights(wa.edge_weight + wb.edge_weight, wa.potential + wb.potential)
        assert matching_poly(u, wu) == matching_poly(a, wa) * matching_poly(b, wb)

    def test_no_memo_path(self):
        g, w = named_fixture("petersen")
        assert MatchingPolynomials(g, w, memo_limit=0)() == matching_poly(g, w)


class TestDegree2:
    def test_k4(self):
        k4, _ = named_fixture("k4")
        gs = enumerate_degree2_subgraphs(k4)
        assert len(gs) == 8 and gs[0].cc == 0
        assert sorted(len(x.edge_ids) for x in gs) == [0, 3, 3, 3, 3, 4, 4, 4]

    def test_lieb(self):
        lieb, _ = named_fixture("lieb")
        assert [sorted(x.edge_ids) for x in enumerate_degree2_subgraphs(lieb)] == [
            [], [0, 1], [2, 3]]

    def test_bouquet(self):
        b, _ = named_fixture("zd_bouquet(2)")
        assert [sorted(x.edge_ids) for x in enumerate_degree2_subgraphs(b)] == [[], [0], [1]]

    @pytest.mark.parametrize("name", FIXTURES[:-2])
    def test_fixture_brute(self, name):
        g, _ = named_fixture(name)
        if g.m > 16:
            pytest.skip("too many edges for subset brute force")
        found = [x.edge_ids for x in enumerate_degree2_subgraphs(g)]
        assert len(found) == len(set(found))
        assert set(found) == brute_degree2_edge_sets(g)

    @given(st.integers(0, 2 ** 40))
    @settings(max_examples=60, deadline=None)
    def test_random_brute(self, seed):
        g = random_multigraph(1 + seed % 7, 1 + seed % 12, seed)
        found = [x.edge_ids for x in enumerate_degree2_subgraphs(g)]
        assert len(found) == len(set(found))
        assert set(found) == brute_degree2_edge_sets(g)

    def test_canonical_cycle_orientation(self):
        tri, _ = named_fixture("triangle")
        c = canonical_cycle(tri, [2, 1, 0])
        assert c.edges[0].edge_id == 0 and c.edges[0].forward
        # consecutive directed edges chain head to tail
        for a, b in zip(c.edges, c.edges[1:] + c.edges[:1]):
            assert tri.terminus(a) == tri.origin(b)

    def test_cycles_once(self):
        k4, _ = named_fixture("k4")
        cs = enumerate_cycles(k4)
        assert len(cs) == 7 and len({c.edge_ids for c in cs}) == 7


class TestOrientations:
    def test_empty(self):
        g, w = named_fixture("triangle")
        (o, wg), = orientations(enumerate_degree2_subgraphs(g)[0], w)
        assert wg == 1 and o.directed_edges == ()

    def test_parallel_pair(self):
        g = Multigraph(2, [(0, 1), (0, 1)])
        w1, w2 = G(1, 2), G(-1, 3)
        w = SchrodingerWeights.build(g, [w1, w2])
        gamma = enumerate_degree2_subgraphs(g)[1]
        vals = {wg for _, wg in orientations(gamma, w)}
        assert vals == {w1 * w2.conj(), w2 * w1.conj()}

    def test_loop(self):
        g = Multigraph(1, [(0, 0)])
        w = SchrodingerWeights.build(g, [G(2, 5)])
        gamma = enumerate_degree2_subgraphs(g)[1]
        assert {wg for _, wg in orientations(gamma, w)} == {G(2, 5), G(2, -5)}

    @given(st.integers(0, 2 ** 40))
    @settings(max_examples=40, deadline=None)
    def test_reversal_conjugates(self, seed):
        g = random_multigraph(5, 8, seed)
        w = random_weights(g, seed)
        for gamma in enumerate_degree2_subgraphs(g):
            vs = orientations(gamma, w)
            assert len(vs) == 2 ** gamma.cc
            full = (1 << gamma.cc) - 1
            by_flip = {o.flips: wg for o, wg in vs}
            for f, wg in by_flip.items():
                assert wg and by_flip[f ^ full] == wg.conj()
            # z-exponent vectors separate oriented variants of distinct subgraphs
            exps = [o.z_exponents(g.m) for o, _ in vs]
            assert len(set(exps)) == len(exps)


class TestTwoFactors:
    def test_examples(self):
        k4, _ = named_fixture("k4")
        f = find_2factor(k4)
        assert f.covered == k4.all_vertices and f.cc == 1 and len(f.edge_ids) == 4
        k5 = Multigraph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
        assert find_2factor(k5).covered == k5.all_vertices
        star, _ = named_fixture("k1_3")
        assert find_2factor(star) is None

    def test_deficit(self):
        c5, _ = named_fixture("c_n(5)")
        with pytest.raises(PreconditionError, match="deficit"):
            two_factor_with_deficit(c5, 3)
        k4, _ = named_fixture("k4")
        assert two_factor_with_deficit(k4, 3).covered == k4.all_vertices
        k4e = Multigraph(4, [e for e in k4.edges if e != (2, 3)])
        f = two_factor_with_deficit(k4e, 3)
        assert f.covered == 0b1111 and len(f.edge_ids) == 4

    def test_deficit_preconditions(self):
        p = Multigraph(3, [(0, 1), (1, 2)])
        with pytest.raises(PreconditionError, match="bridge"):
            two_factor_with_deficit(p, 3)
        with pytest.raises(PreconditionError, match="odd"):
            two_factor_with_deficit(p, 4)


def check_pair(g, v, d, pair):
    with_v, without_v = pair
    valid = brute_degree2_edge_sets(g) if g.m <= 16 else None
    big = {u for u in range(g.n) if g.degree(u) == d}
    for gamma in pair:
        deg = [0] * g.n
        for e in gamma.edge_ids:
            a, b = g.edges[e]
            deg[a] += 1
            deg[b] += 1
        assert all(k in (0, 2) for k in deg)
        if valid is not None:
            assert gamma.edge_ids in valid
        assert big <= set(members(gamma.covered))
    assert (with_v.covered >> v) & 1
    assert not (without_v.covered >> v) & 1


class TestTypeII:
    def test_k4_minus_edge(self):
        k4, _ = named_fixture("k4")
        g = Multigraph(4, [e for e in k4.edges if e != (2, 3)])
        pair = typeII_degree2_pair(g, 2, 3)
        check_pair(g, 2, 3, pair)
        # pairs are not unique; the 4-cycle / triangle pair is one valid choice
        valid = brute_degree2_edge_sets(g)
        four_cycles = [s for s in valid if len(s) == 4]
        assert four_cycles and frozenset({0, 2, 4}) in valid  # triangle 0-1-3 avoids v

    def test_theta_has_empty_i(self):
        theta, _ = named_fixture("theta")
        with pytest.raises(PreconditionError, match="degree < d"):
            typeII_degree2_pair(theta, 0, 3)

    def test_single_low_vertex_matches_base_case(self):
        # d=5 with three low vertices, then I={v} after correction
        g = Multigraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (0, 0)])
        assert g.max_degree() == 5 and g.degrees() == (5, 3, 3, 3)
        for v in (1, 2, 3):
            check_pair(g, v, 5, typeII_degree2_pair(g, v, 5))
        # exactly one low vertex: with_v is the deficit 2-factor itself
        h = Multigraph(3, [(0, 1), (0, 1), (0, 2), (1, 2)])
        assert h.degrees() == (3, 3, 2)
        with_v, without_v = typeII_degree2_pair(h, 2, 3)
        assert with_v == two_factor_with_deficit(h, 3)
        check_pair(h, 2, 3, (with_v, without_v))

    @pytest.mark.parametrize("seed", range(40))
    def test_random(self, seed):
        d = 3 if seed % 2 else 5
        g = random_type_ii(d, seed)
        for v in range(g.n):
            if g.degree(v) < d:
                check_pair(g, v, d, typeII_degree2_pair(g, v, d))
