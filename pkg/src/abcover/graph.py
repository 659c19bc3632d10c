"""Finite multigraphs with Hermitian Schrodinger weights.

Vertex sets are plain Python ints used as bitmasks (bit ``v`` set means
vertex ``v`` is in the set).  Edges are identified by their position in
the edge list; the stored orientation of edge ``e = (u, v)`` is ``u -> v``
and the reverse orientation carries the conjugate weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .rational import (GaussianRational, MalformedRational, format_rational,
                       parse_rational)

DEFAULT_MAX_VERTICES = 64


class GraphError(ValueError):
    """Structurally invalid graph input."""


class WeightError(ValueError):
    """Missing or invalid Schrodinger weights."""


class MissingWeightError(WeightError):
    pass


class ZeroWeightError(WeightError):
    pass


# -- vertex sets ------------------------------------------------------------

def vset(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- multigraph -------------------------------------------------------------

class DirectedEdge(NamedTuple):
    edge_id: int
    forward: bool = True

    def reverse(self) -> "DirectedEdge":
        return DirectedEdge(self.edge_id, not self.forward)


class Multigraph:
    """Immutable finite multigraph; self-loops and parallel edges allowed."""

    __slots__ = ("n", "edges", "adj", "nbr_mask", "loop_mask", "_deg")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]] = (),
                 max_vertices: int = DEFAULT_MAX_VERTICES):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        if n > max_vertices:
            raise GraphError(f"{n} vertices exceeds the cap of {max_vertices}")
        self.n = n
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        nbr = [0] * n
        loops = 0
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {e} has an endpoint outside [0, {n})")
            adj[u].append((e, v))
            adj[v].append((e, u))
            if u == v:
                loops |= 1 << u
            else:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
        # a loop appears twice in adj[v]: once per directed copy
        self.adj = tuple(tuple(a) for a in adj)
        self.nbr_mask = tuple(nbr)
        self.loop_mask = loops
        self._deg = tuple(len(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def origin(self, d: DirectedEdge) -> int:
        u, v = self.edges[d.edge_id]
        return u if d.forward else v

    def terminus(self, d: DirectedEdge) -> int:
        u, v = self.edges[d.edge_id]
        return v if d.forward else u

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def degree(self, v: int) -> int:
        return self._deg[v]

    def degrees(self) -> tuple[int, ...]:
        return self._deg

    def max_degree(self) -> int:
        return max(self._deg, default=0)

    def is_regular(self) -> int | None:
        """Common degree if all vertices share it, else None."""
        if self.n == 0:
            return None
        d = self._deg[0]
        return d if all(x == d for x in self._deg) else None

    def edges_between(self, u: int, v: int) -> list[int]:
        return sorted({e for e, x in self.adj[u] if x == v})

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of the induced subgraph on ``mask``."""
        if mask is None:
            mask = self.all_vertices
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                v = lowest(frontier)
                frontier &= frontier - 1
                new = self.nbr_mask[v] & mask & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


def degree(g: Multigraph, v: int) -> int:
    return g.degree(v)


def max_degree(g: Multigraph) -> int:
    return g.max_degree()


def is_regular(g: Multigraph) -> int | None:
    return g.is_regular()


# -- weights ----------------------------------------------------------------

@dataclass(frozen=True)
class SchrodingerWeights:
    """Edge weights of stored orientations plus real vertex potentials."""

    edge_weight: tuple[GaussianRational, ...]
    potential: tuple[Fraction, ...]

    def __post_init__(self):
        for e, w in enumerate(self.edge_weight):
            if not isinstance(w, GaussianRational):
                raise WeightError(f"edge {e}: weight must be a GaussianRational")
            if not w:
                raise ZeroWeightError(f"edge {e}: weight must be nonzero")
        for v, p in enumerate(self.potential):
            if not isinstance(p, Fraction):
                raise WeightError(f"vertex {v}: potential must be a Fraction")

    @classmethod
    def adjacency(cls, g: Multigraph) -> "SchrodingerWeights":
        return cls(tuple(GaussianRational(1) for _ in range(g.m)),
                   tuple(Fraction(0) for _ in range(g.n)))

    @classmethod
    def build(cls, g: Multigraph, edge_weight=None, potential=None) -> "SchrodingerWeights":
        ew = [GaussianRational(1)] * g.m
        if edge_weight is not None:
            items = edge_weight.items() if isinstance(edge_weight, dict) else enumerate(edge_weight)
            for e, w in items:
                ew[e] = GaussianRational.coerce(w) if not isinstance(w, tuple) \
                    else GaussianRational(*w)
        pot = [Fraction(0)] * g.n
        if potential is not None:
            items = potential.items() if isinstance(potential, dict) else enumerate(potential)
            for v, p in items:
                pot[v] = Fraction(p)
        return cls(tuple(ew), tuple(pot))

    def check_covers(self, g: Multigraph) -> None:
        if len(self.edge_weight) != g.m:
            raise WeightError(f"weights cover {len(self.edge_weight)} edges, graph has {g.m}")
        if len(self.potential) != g.n:
            raise WeightError(f"potentials cover {len(self.potential)} vertices, graph has {g.n}")

    def directed(self, d: DirectedEdge) -> GaussianRational:
        w = self.edge_weight[d.edge_id]
        return w if d.forward else w.conj()

    def is_adjacency(self) -> bool:
        return all(w == 1 for w in self.edge_weight) and all(p == 0 for p in self.potential)

    def is_real(self) -> bool:
        return all(w.im == 0 for w in self.edge_weight)

    def restrict(self, r: "Restriction") -> "SchrodingerWeights":
        return SchrodingerWeights(tuple(self.edge_weight[e] for e in r.edges),
                                  tuple(self.potential[v] for v in r.vertices))


# -- subgraphs --------------------------------------------------------------

class Restriction(NamedTuple):
    """An induced subgraph with maps back to the parent's ids."""

    graph: Multigraph
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def induced_subgraph(g: Multigraph, s: int) -> Restriction:
    if s & ~g.all_vertices:
        raise GraphError("vertex set is not a subset of the graph")
    verts = tuple(members(s))
    index = {v: i for i, v in enumerate(verts)}
    kept = []
    new_edges = []
    for e, (u, v) in enumerate(g.edges):
        if u in index and v in index:
            kept.append(e)
            new_edges.append((index[u], index[v]))
    return Restriction(Multigraph(len(verts), new_edges, max_vertices=max(g.n, 1)),
                       verts, tuple(kept))


def delete_vertices(g: Multigraph, s: int) -> Restriction:
    return induced_subgraph(g, g.all_vertices & ~s)


def hamiltonian_matrix(g: Multigraph, w: SchrodingerWeights) -> list[list[GaussianRational]]:
    """Dense Hermitian matrix: directed-edge weights off the diagonal, potentials on it."""
    w.check_covers(g)
    n = g.n
    h = [[GaussianRational(0) for _ in range(n)] for _ in range(n)]
    for e, (u, v) in enumerate(g.edges):
        we = w.edge_weight[e]
        if u == v:
            h[u][u] = h[u][u] + GaussianRational(2 * we.re)
        else:
            h[u][v] = h[u][v] + we
            h[v][u] = h[v][u] + we.conj()
    for v in range(n):
        h[v][v] = h[v][v] + w.potential[v]
    return h


def pair_weights(g: Multigraph, w: SchrodingerWeights) -> list[dict[int, Fraction]]:
    """For each vertex v: neighbor u -> sum of |w_e|^2 over edges v-u, u != v."""
    out: list[dict[int, Fraction]] = [dict() for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        a = w.edge_weight[e].abs2()
        out[u][v] = out[u].get(v, Fraction(0)) + a
        out[v][u] = out[v].get(u, Fraction(0)) + a
    return out


# -- JSON -------------------------------------------------------------------

def graph_to_json(g: Multigraph, w: SchrodingerWeights | None = None) -> dict:
    if w is None:
        w = SchrodingerWeights.adjacency(g)
    w.check_covers(g)
    return {
        "vertices": [{"id": v, "potential": format_rational(w.potential[v])}
                     for v in range(g.n)],
        "edges": [{"id": e, "u": u, "v": v,
                   "w_re": format_rational(w.edge_weight[e].re),
                   "w_im": format_rational(w.edge_weight[e].im)}
                  for e, (u, v) in enumerate(g.edges)],
    }


def graph_from_json(data: dict, max_vertices: int = DEFAULT_MAX_VERTICES
                    ) -> tuple[Multigraph, SchrodingerWeights]:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphError("graph JSON needs 'vertices' and 'edges'")
    try:
        verts = sorted(data["vertices"], key=lambda x: x["id"])
        edges = sorted(data["edges"], key=lambda x: x["id"])
        ends = [(x["u"], x["v"]) for x in edges]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc!r}") from exc
    if [x["id"] for x in verts] != list(range(len(verts))):
        raise GraphError("vertex ids must be dense in [0, n)")
    if [x["id"] for x in edges] != list(range(len(edges))):
        raise GraphError("edge ids must be dense in [0, |E|)")
    if not all(isinstance(a, int) and isinstance(b, int) for a, b in ends):
        raise GraphError("edge endpoints must be integers")
    g = Multigraph(len(verts), ends, max_vertices=max_vertices)
    pot = []
    for x in verts:
        p = x.get("potential", "0")
        if p is None:
            raise MissingWeightError(f"vertex {x['id']}: potential is null")
        pot.append(parse_rational(p))
    ew = []
    for x in edges:
        if ("w_re" in x and x["w_re"] is None) or ("w_im" in x and x["w_im"] is None):
            raise MissingWeightError(f"edge {x['id']}: missing weight")
        re_ = parse_rational(x.get("w_re", "1"))
        im_ = parse_rational(x.get("w_im", "0"))
        ew.append(GaussianRational(re_, im_))
    return g, SchrodingerWeights(tuple(ew), tuple(pot))


__all__ = [
    "DirectedEdge", "GraphError", "MalformedRational", "MissingWeightError", "Multigraph", "Restriction",
    "SchrodingerWeights", "WeightError", "degree", "delete_vertices", "graph_from_json",
    "graph_to_json", "hamiltonian_matrix", "induced_subgraph", "is_regular", "lowest",
    "max_degree", "members", "pair_weights", "popcount", "vset", "ZeroWeightError",
]
