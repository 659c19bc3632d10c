from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abcover.generators import named_fixture, random_multigraph, random_weights
from abcover.graph import (DirectedEdge, GraphError, MissingWeightError, Multigraph,
                           SchrodingerWeights, ZeroWeightError, delete_vertices,
                           graph_from_json, graph_to_json, hamiltonian_matrix,
                           induced_subgraph, vset)
from abcover.rational import (GaussianRational, MalformedRational, format_rational,
                              parse_rational)


class TestRational:
    @pytest.mark.parametrize("text,value", [("3/6", Fraction(1, 2)), ("-4", Fraction(-4)),
                                            (" 7 / 2 ", Fraction(7, 2)), ("+0", Fraction(0))])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["1/0", "1.5", "", "a/b", 0.5, True, None, "1/-2"])
    def test_parse_rejects(self, bad):
        with pytest.raises(MalformedRational):
            parse_rational(bad)

    def test_format_lowest_terms(self):
        assert format_rational(Fraction(6, -4)) == "-3/2"
        assert format_rational(Fraction(8, 4)) == "2"

    @given(st.fractions(max_denominator=50), st.fractions(max_denominator=50),
           st.fractions(max_denominator=50), st.fractions(max_denominator=50))
    def test_field_laws(self, a, b, c, d):
        x, y = GaussianRational(a, b), GaussianRational(c, d)
        assert x.conj().conj() == x
        assert x.abs2() == a * a + b * b >= 0
        assert (x * y).conj() == x.conj() * y.conj()
        assert x + y - y == x
        if y:
            assert (x / y) * y == x
        assert complex(x * y) == pytest.approx(complex(x) * complex(y))


class TestMultigraph:
    def test_degrees_and_regularity(self):
        b, _ = named_fixture("zd_bouquet(2)")
        assert b.degree(0) == 4 and b.is_regular() == 4
        star, _ = named_fixture("k1_3")
        assert star.degree(0) == 3 and star.degree(1) == 1 and star.is_regular() is None
        theta, _ = named_fixture("theta")
        assert theta.degrees() == (3, 3) and theta.is_regular() == 3

    def test_directed_edges(self):
        g = Multigraph(2, [(0, 1)])
        d = DirectedEdge(0, True)
        assert d.reverse().reverse() == d
        assert g.origin(d) == g.terminus(d.reverse()) == 0

    def test_bad_endpoint(self):
        with pytest.raises(GraphError):
            Multigraph(2, [(0, 2)])

    def test_vertex_cap(self):
        with pytest.raises(GraphError):
            Multigraph(65)
        assert Multigraph(100, max_vertices=128).n == 100

    @given(st.integers(0, 2 ** 32))
    @settings(max_examples=50, deadline=None)
    def test_handshake(self, seed):
        g = random_multigraph(6, 9, seed)
        assert sum(g.degrees()) == 2 * g.m


class TestSubgraphs:
    def test_triangle_restriction(self):
        tri, _ = named_fixture("triangle")
        r = induced_subgraph(tri, vset([0, 1]))
        assert r.graph.n == 2 and r.graph.edges == ((0, 1),) and r.edges == (0,)

    def test_path_endpoints(self):
        p = Multigraph(3, [(0, 1), (1, 2)])
        assert induced_subgraph(p, vset([0, 2])).graph.m == 0
        assert delete_vertices(p, vset([1])).graph.m == 0
        assert delete_vertices(p, 0).graph == p

    def test_k4_minus_vertex(self):
        k4, _ = named_fixture("k4")
        assert delete_vertices(k4, vset([3])).graph.m == 3

    def test_loop_kept_with_its_vertex(self):
        g = Multigraph(2, [(0, 0), (0, 1), (1, 1)])
        r = induced_subgraph(g, vset([1]))
        assert r.graph.edges == ((0, 0),) and r.edges == (2,)

    @given(st.integers(0, 2 ** 32), st.integers(0, 63), st.integers(0, 63))
    @settings(max_examples=60, deadline=None)
    def test_nested_restriction(self, seed, a, b):
        g = random_multigraph(6, 10, seed)
        direct = induced_subgraph(g, a & b)
        outer = induced_subgraph(g, a)
        inner_mask = vset(i for i, v in enumerate(outer.vertices) if (b >> v) & 1)
        nested = induced_subgraph(outer.graph, inner_mask)
        assert nested.graph == direct.graph
        assert tuple(outer.edges[e] for e in nested.edges) == direct.edges


class TestHamiltonian:
    def test_single_edge(self):
        g = Multigraph(2, [(0, 1)])
        h = hamiltonian_matrix(g, SchrodingerWeights.adjacency(g))
        assert h == [[0, 1], [1, 0]]

    def test_parallel_sum(self):
        g = Multigraph(2, [(0, 1), (0, 1)])
        w = SchrodingerWeights.build(g, [GaussianRational(1, 2), GaussianRational(-3, 1)])
        h = hamiltonian_matrix(g, w)
        assert h[0][1] == GaussianRational(-2, 3) and h[1][0] == GaussianRational(-2, -3)

    def test_imaginary_loop_cancels(self):
        g = Multigraph(1, [(0, 0)])
        w = SchrodingerWeights.build(g, [GaussianRational(0, 1)])
        assert hamiltonian_matrix(g, w) == [[0]]

    @given(st.integers(0, 2 ** 32))
    @settings(max_examples=60, deadline=None)
    def test_hermitian(self, seed):
        g = random_multigraph(5, 8, seed)
        w = random_weights(g, seed + 1)
        h = hamiltonian_matrix(g, w)
        assert all(h[i][j] == h[j][i].conj() for i in range(g.n) for j in range(g.n))


class TestWeights:
    def test_zero_weight_rejected(self):
        g = Multigraph(2, [(0, 1)])
        with pytest.raises(ZeroWeightError):
            SchrodingerWeights.build(g, [0])

    def test_cover_check(self):
        g = Multigraph(2, [(0, 1)])
        w = SchrodingerWeights.adjacency(Multigraph(2))
        with pytest.raises(ValueError):
            w.check_covers(g)


class TestJson:
    @pytest.mark.parametrize("name", ["zd_bouquet(3)", "theta", "lieb", "petersen", "k4",
                                      "k33", "c_n(5)", "c_n(2)", "k1_3", "house_like"])
    def test_fixture_round_trip(self, name):
        g, w = named_fixture(name)
        data = graph_to_json(g, w)
        g2, w2 = graph_from_json(data)
        assert g2 == g and w2 == w and graph_to_json(g2, w2) == data

    @given(st.integers(0, 2 ** 32))
    @settings(max_examples=40, deadline=None)
    def test_weighted_round_trip(self, seed):
        g = random_multigraph(5, 7, seed)
        w = random_weights(g, seed ^ 7)
        assert graph_from_json(graph_to_json(g, w)) == (g, w)

    def test_defaults(self):
        g, w = graph_from_json({"vertices": [{"id": 1}, {"id": 0, "potential": "2/4"}],
                                "edges": [{"id": 0, "u": 0, "v": 1}]})
        assert w.potential == (Fraction(1, 2), 0)
        assert w.edge_weight == (GaussianRational(1),)

    def test_null_weight(self):
        with pytest.raises(MissingWeightError):
            graph_from_json({"vertices": [{"id": 0}], "edges": [{"id": 0, "u": 0, "v": 0,
                                                                  "w_re": None}]})

    @pytest.mark.parametrize("data", [{}, {"vertices": [{"id": 1}], "edges": []},
                                      {"vertices": [{"id": 0}], "edges": [{"id": 0, "u": 0}]}])
    def test_malformed(self, data):
        with pytest.raises(GraphError):
            graph_from_json(data)
