"""Matchings, matching polynomials, degree-2 subgraphs and 2-factors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .decomposition import bridge_block_decomposition, find_bridges
from .graph import (DirectedEdge, Multigraph, SchrodingerWeights, delete_vertices,
                    induced_subgraph, lowest, members, pair_weights, popcount)
from .poly import ONE, RationalPolynomial
from .rational import GaussianRational

MEMO_LIMIT = 24


class PreconditionError(ValueError):
    """An input violates a stated hypothesis of the construction."""


# -- matchings --------------------------------------------------------------

class Matching(NamedTuple):
    edge_ids: tuple[int, ...]
    covered: int

    def to_json(self) -> dict:
        return {"edges": list(self.edge_ids)}


def enumerate_matchings(g: Multigraph) -> Iterator[Matching]:
    """Every matching once, the empty one first, in lexicographic edge-id order."""
    proper = [e for e in range(g.m) if not g.is_loop(e)]

    def rec(start, chosen, covered):
        yield Matching(tuple(chosen), covered)
        for i in range(start, len(proper)):
            e = proper[i]
            u, v = g.edges[e]
            bits = (1 << u) | (1 << v)
            if covered & bits:
                continue
            chosen.append(e)
            yield from rec(i + 1, chosen, covered | bits)
            chosen.pop()

    yield from rec(0, [], 0)


def enumerate_perfect_matchings(g: Multigraph, mask: int | None = None) -> Iterator[Matching]:
    """Perfect matchings of the induced subgraph on ``mask`` (default: all of g)."""
    if mask is None:
        mask = g.all_vertices

    def rec(free, chosen):
        if not free:
            yield Matching(tuple(sorted(chosen)), mask)
            return
        v = lowest(free)
        for e, x in g.adj[v]:
            if x == v or not (free >> x) & 1:
                continue
            chosen.append(e)
            yield from rec(free & ~((1 << v) | (1 << x)), chosen)
            chosen.pop()

    yield from rec(mask, [])


def matching_poly_enum(g: Multigraph, w: SchrodingerWeights) -> RationalPolynomial:
    """Matching polynomial straight from its defining sum over matchings."""
    w.check_covers(g)
    total = RationalPolynomial()
    for mt in enumerate_matchings(g):
        coeff = Fraction((-1) ** len(mt.edge_ids))
        for e in mt.edge_ids:
            coeff *= w.edge_weight[e].abs2()
        term = RationalPolynomial.const(coeff)
        for u in range(g.n):
            if not (mt.covered >> u) & 1:
                term = term * RationalPolynomial((-w.potential[u], 1))
        total = total + term
    return total


class MatchingPolynomials:
    """Memoized matching polynomials of induced subgraphs, keyed by vertex mask.

    One instance serves every ``G minus S`` query on the same weighted graph.
    """

    def __init__(self, g: Multigraph, w: SchrodingerWeights, memo_limit: int = MEMO_LIMIT):
        w.check_covers(g)
        self.g = g
        self.w = w
        self.pw = pair_weights(g, w)
        self.lin = [RationalPolynomial((-w.potential[v], 1)) for v in range(g.n)]
        self.memoize = g.n <= memo_limit
        self.memo: dict[int, RationalPolynomial] = {0: ONE}

    def pivot(self, mask: int) -> int:
        """Lowest-index vertex of minimum induced degree."""
        best, best_deg = -1, None
        nbr = self.g.nbr_mask
        for v in members(mask):
            k = popcount(nbr[v] & mask)
            if best_deg is None or k < best_deg:
                best, best_deg = v, k
                if k == 0:
                    break
        return best

    def __call__(self, mask: int | None = None) -> RationalPolynomial:
        if mask is None:
            mask = self.g.all_vertices
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        p = self.expand(mask, self.pivot(mask))
        if self.memoize:
            self.memo[mask] = p
        return p

    def expand(self, mask: int, v: int) -> RationalPolynomial:
        """One step of the vertex-deletion recursion at pivot ``v``."""
        rest = mask & ~(1 << v)
        out = self.lin[v] * self(rest)
        for u, a in sorted(self.pw[v].items()):
            if (rest >> u) & 1:
                out = out - self(rest & ~(1 << u)) * a
        return out


def matching_poly(g: Multigraph, w: SchrodingerWeights, mask: int | None = None) -> RationalPolynomial:
    """Matching polynomial of g (or of the induced subgraph on ``mask``) by recursion."""
    return MatchingPolynomials(g, w)(mask)


# -- cycles and degree-2 subgraphs ------------------------------------------

class Cycle(NamedTuple):
    """One component of a degree-2 subgraph, in canonical orientation: it
    starts with its lowest edge id traversed in stored direction."""

    edges: tuple[DirectedEdge, ...]
    vertices: int

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(d.edge_id for d in self.edges)

    def reversed(self) -> tuple[DirectedEdge, ...]:
        return tuple(d.reverse() for d in reversed(self.edges))


def canonical_cycle(g: Multigraph, edge_ids: Sequence[int]) -> Cycle:
    ids = set(edge_ids)
    e0 = min(ids)
    u, v = g.edges[e0]
    if u == v:
        if len(ids) != 1:
            raise ValueError("a self-loop is a whole component")
        return Cycle((DirectedEdge(e0, True),), 1 << u)
    out = [DirectedEdge(e0, True)]
    seen = {e0}
    verts = (1 << u) | (1 << v)
    cur = v
    while cur != u:
        nxt = [e for e, _ in g.adj[cur] if e in ids and e not in seen]
        if not nxt:
            raise ValueError("edge set is not a cycle")
        e = min(nxt)
        a, b = g.edges[e]
        fwd = a == cur
        out.append(DirectedEdge(e, fwd))
        seen.add(e)
        cur = b if fwd else a
        verts |= 1 << cur
    if seen != ids:
        raise ValueError("edge set is not a single cycle")
    return Cycle(tuple(out), verts)


def enumerate_cycles(g: Multigraph) -> list[Cycle]:
    """Every simple cycle once: loops, parallel-edge 2-cycles, and k >= 3 cycles."""
    found: list[tuple[int, ...]] = []
    for e in range(g.m):
        if g.is_loop(e):
            found.append((e,))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            par = g.edges_between(u, v)
            found.extend(itertools.combinations(par, 2))
    for s in range(g.n):
        path_edges: list[int] = []

        def dfs(cur, visited):
            for e, x in g.adj[cur]:
                if x == cur:
                    continue
                if x == s:
                    if len(path_edges) >= 2 and path_edges[0] < e:
                        found.append(tuple(path_edges) + (e,))
                    continue
                if x < s or (visited >> x) & 1:
                    continue
                path_edges.append(e)
                dfs(x, visited | (1 << x))
                path_edges.pop()

        dfs(s, 1 << s)
    cycles = [canonical_cycle(g, ids) for ids in found]
    cycles.sort(key=lambda c: tuple(sorted(c.edge_ids)))
    return cycles


@dataclass(frozen=True)
class Degree2Subgraph:
    components: tuple[Cycle, ...] = ()
    covered: int = 0

    @property
    def cc(self) -> int:
        return len(self.components)

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(e for c in self.components for e in c.edge_ids)

    def to_json(self) -> dict:
        return {"components": [list(c.edge_ids) for c in self.components]}


def degree2_from_cycles(cycles: Sequence[Cycle]) -> Degree2Subgraph:
    cycles = sorted(cycles, key=lambda c: min(c.edge_ids))
    cov = 0
    for c in cycles:
        cov |= c.vertices
    return Degree2Subgraph(tuple(cycles), cov)


def degree2_from_edges(g: Multigraph, edge_ids) -> Degree2Subgraph:
    """Split an edge set in which every touched vertex has degree 2 into cycles."""
    ids = set(edge_ids)
    deg = [0] * g.n
    for e in ids:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    if any(k not in (0, 2) for k in deg):
        raise ValueError("edge set is not a degree-2 subgraph")
    cycles = []
    left = set(ids)
    while left:
        e0 = min(left)
        comp = {e0}
        frontier = list(g.edges[e0])
        while frontier:
            x = frontier.pop()
            for e, y in g.adj[x]:
                if e in left and e not in comp:
                    comp.add(e)
                    frontier.append(y)
        cycles.append(canonical_cycle(g, comp))
        left -= comp
    return degree2_from_cycles(cycles)


def iter_degree2_subgraphs(g: Multigraph, cycles: list[Cycle] | None = None
                           ) -> Iterator[Degree2Subgraph]:
    """Vertex-disjoint unions of cycles, the empty subgraph first."""
    if cycles is None:
        cycles = enumerate_cycles(g)

    def rec(start, chosen, used):
        yield degree2_from_cycles(chosen) if chosen else Degree2Subgraph()
        for i in range(start, len(cycles)):
            c = cycles[i]
            if c.vertices & used:
                continue
            chosen.append(c)
            yield from rec(i + 1, chosen, used | c.vertices)
            chosen.pop()

    yield from rec(0, [], 0)


def enumerate_degree2_subgraphs(g: Multigraph) -> list[Degree2Subgraph]:
    return list(iter_degree2_subgraphs(g))


@dataclass(frozen=True)
class OrientedDegree2Subgraph:
    base: Degree2Subgraph
    flips: int  # bit i set: component i runs against its canonical orientation

    @property
    def directed_edges(self) -> tuple[DirectedEdge, ...]:
        out = []
        for i, c in enumerate(self.base.components):
            out.extend(c.reversed() if (self.flips >> i) & 1 else c.edges)
        return tuple(out)

    def weight(self, w: SchrodingerWeights) -> GaussianRational:
        acc = GaussianRational(1)
        for d in self.directed_edges:
            acc = acc * w.directed(d)
        return acc

    def z_exponents(self, m: int) -> tuple[int, ...]:
        """Signed traversal count per edge: +1 stored direction, -1 reverse."""
        exps = [0] * m
        for d in self.directed_edges:
            exps[d.edge_id] += 1 if d.forward else -1
        return tuple(exps)


def orientations(gamma: Degree2Subgraph, w: SchrodingerWeights
                 ) -> list[tuple[OrientedDegree2Subgraph, GaussianRational]]:
    out = []
    for flips in range(1 << gamma.cc):
        o = OrientedDegree2Subgraph(gamma, flips)
        out.append((o, o.weight(w)))
    return out


# -- 2-factors --------------------------------------------------------------

def find_2factor(g: Multigraph) -> Degree2Subgraph | None:
    """Spanning degree-2 subgraph by include-first backtracking over edge ids."""
    if g.n == 0:
        return Degree2Subgraph()
    last = [-1] * g.n
    for e, (u, v) in enumerate(g.edges):
        last[u] = max(last[u], e)
        last[v] = max(last[v], e)
    if min(last) < 0:
        return None
    closing: list[list[int]] = [[] for _ in range(g.m)]
    for v in range(g.n):
        closing[last[v]].append(v)
    deg = [0] * g.n
    chosen: list[int] = []

    def rec(i):
        if i == g.m:
            return True
        u, v = g.edges[i]
        options = []
        if u == v:
            if deg[u] == 0:
                options.append(True)
        elif deg[u] < 2 and deg[v] < 2:
            options.append(True)
        options.append(False)
        for take in options:
            if take:
                deg[u] += 1
                deg[v] += 1
                chosen.append(i)
            if all(deg[x] == 2 for x in closing[i]) and rec(i + 1):
                return True
            if take:
                deg[u] -= 1
                deg[v] -= 1
                chosen.pop()
        return False

    if not rec(0):
        return None
    return degree2_from_edges(g, chosen)


def _check_odd_d(d: int) -> None:
    if d < 3 or d % 2 == 0:
        raise PreconditionError(f"d must be an odd integer >= 3, got {d}")


def two_factor_with_deficit(g: Multigraph, d: int) -> Degree2Subgraph:
    """2-factor of a connected bridge-less graph whose total degree deficit
    against d is at most d - 1.

    Every deficient vertex receives one pendant bouquet of (d-1)/2 loops per
    missing degree, the padded d-regular graph is searched, and the result
    is restricted back (no cycle crosses a pendant bridge).
    """
    _check_odd_d(d)
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    if find_bridges(g):
        raise PreconditionError("graph must be bridge-less")
    if g.max_degree() > d:
        raise PreconditionError(f"max degree {g.max_degree()} exceeds d={d}")
    deficit = sum(d - k for k in g.degrees())
    if deficit > d - 1:
        raise PreconditionError(f"total deficit {deficit} exceeds d-1={d - 1}")
    edges = list(g.edges)
    n = g.n
    for v in range(g.n):
        for _ in range(d - g.degree(v)):
            b = n
            n += 1
            edges.append((v, b))
            edges.extend([(b, b)] * ((d - 1) // 2))
    padded = Multigraph(n, edges, max_vertices=max(n, 1))
    f = find_2factor(padded)
    if f is None:
        raise PreconditionError("no 2-factor found in the padded regular graph")
    return degree2_from_edges(g, [e for e in f.edge_ids if e < g.m])


# -- degree-2 pairs around a distinguished low-degree vertex ----------------

def typeII_degree2_pair(g: Multigraph, v: int, d: int) -> tuple[Degree2Subgraph, Degree2Subgraph]:
    """Two degree-2 subgraphs covering every degree-d vertex: the first
    contains ``v``, the second avoids it.

    Requires g connected, bridge-less, of maximum degree exactly d (odd), and
    deg(v) < d.  Free choices are resolved toward the lowest index, so the
    pair returned is one valid pair among possibly many.
    """
    _check_odd_d(d)
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    if find_bridges(g):
        raise PreconditionError("graph must be bridge-less")
    if g.max_degree() != d:
        raise PreconditionError(f"max degree must equal d={d}, got {g.max_degree()}")
    if not 0 <= v < g.n or g.degree(v) >= d:
        raise PreconditionError(f"vertex {v} must have degree < d (lie in I)")
    with_v, without_v = _pair(g, v, d)
    return degree2_from_edges(g, with_v), degree2_from_edges(g, without_v)


def _pair(g: Multigraph, v: int, d: int) -> tuple[set[int], set[int]]:
    low = [u for u in range(g.n) if g.degree(u) < d]
    if len(low) == 1:
        return _pair_base(g, v, d)
    v1 = min(u for u in low if u != v)
    k = g.degree(v1)
    n = g.n
    if k % 2 == 1:
        # odd: top up v1 with self-loops
        edges = list(g.edges) + [(v1, v1)] * ((d - k) // 2)
        gp = Multigraph(n, edges, max_vertices=max(n, 1))
        a, b = _pair(gp, v, d)
        return {e for e in a if e < g.m}, {e for e in b if e < g.m}

    # even: split one v1-u edge through a new vertex v1'
    u = min(x for e, x in g.adj[v1] if x != v1)
    removed = min(e for e, x in g.adj[v1] if x == u)
    origin = [e for e in range(g.m) if e != removed]
    edges = [g.edges[e] for e in origin]
    vp = n
    link = list(range(len(edges), len(edges) + d + 1 - k))
    edges.extend([(v1, vp)] * (d + 1 - k))
    to_u = len(edges)
    edges.append((vp, u))
    new_loops = set(range(len(edges), len(edges) + (k - 2) // 2))
    edges.extend([(vp, vp)] * ((k - 2) // 2))
    gp = Multigraph(n + 1, edges, max_vertices=n + 1)
    link_set = set(link)

    def project(sub: set[int]) -> set[int]:
        base = {origin[e] for e in sub if e < len(origin)}
        used_links = sub & link_set
        if sub & new_loops or len(used_links) == 2:
            return base
        if len(used_links) == 1 and to_u in sub:
            return base | {removed}
        raise AssertionError("split vertex left uncovered by a degree-2 subgraph")

    a, b = _pair(gp, v, d)
    return project(a), project(b)


def _pair_base(g: Multigraph, v: int, d: int) -> tuple[set[int], set[int]]:
    with_v = set(two_factor_with_deficit(g, d).edge_ids)
    rest = delete_vertices(g, 1 << v)
    without_v: set[int] = set()
    dec = bridge_block_decomposition(rest.graph)
    for block in dec.blocks:
        sub = induced_subgraph(rest.graph, block)
        f = two_factor_with_deficit(sub.graph, d)
        without_v.update(rest.edges[sub.edges[e]] for e in f.edge_ids)
    return with_v, without_v


__all__ = [
    "Cycle", "Degree2Subgraph", "Matching", "MatchingPolynomials", "OrientedDegree2Subgraph",
    "PreconditionError", "canonical_cycle", "degree2_from_edges", "enumerate_cycles",
    "enumerate_degree2_subgraphs", "enumerate_matchings", "enumerate_perfect_matchings",
    "find_2factor", "iter_degree2_subgraphs", "matching_poly", "matching_poly_enum",
    "orientations", "two_factor_with_deficit", "typeII_degree2_pair",
]
