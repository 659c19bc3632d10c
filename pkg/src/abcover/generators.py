"""Seeded corpora: named fixtures and random (multi)graph generators.

Every random stream goes through :class:`SplitMix64`, so a seed pins the
output bit-for-bit on every platform.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .combinatorics import PreconditionError
from .decomposition import find_bridges
from .graph import GraphError, Multigraph, SchrodingerWeights, graph_to_json
from .rational import GaussianRational

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The usual splitmix64 stream (Steele, Lea, Flood constants)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, k: int) -> int:
        """Unbiased integer in [0, k) by rejection."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        return items[self.below(len(items))]


# -- named fixtures -----------------------------------------------------------

def _cycle(n: int) -> list[tuple[int, int]]:
    if n == 1:
        return [(0, 0)]
    return [(i, (i + 1) % n) for i in range(n)]


_PETERSEN = ([(i, (i + 1) % 5) for i in range(5)]
             + [(i, i + 5) for i in range(5)]
             + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])

_FIXED = {
    "theta": (2, [(0, 1)] * 3),
    "lieb": (3, [(0, 1), (0, 1), (0, 2), (0, 2)]),
    "petersen": (10, _PETERSEN),
    "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    "k33": (6, [(i, j) for i in range(3) for j in range(3, 6)]),
    "k1_3": (4, [(0, 1), (0, 2), (0, 3)]),
    # square 0-1-2-3 with roof vertex 4 over the edge 2-3
    "house_like": (5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]),
    "edge": (2, [(0, 1)]),
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
}

_PARAM = re.compile(r"^(zd_bouquet|c_n)\((\d+)\)$")

FIXTURE_NAMES = ("zd_bouquet(k)", "theta", "lieb", "petersen", "k4", "k33",
                 "c_n(n)", "k1_3", "house_like", "edge", "triangle")


def named_fixture(name: str) -> tuple[Multigraph, SchrodingerWeights]:
    name = name.strip()
    if name in _FIXED:
        n, edges = _FIXED[name]
        g = Multigraph(n, edges)
        return g, SchrodingerWeights.adjacency(g)
    m = _PARAM.match(name)
    if m is None:
        raise KeyError(f"unknown fixture {name!r}")
    k = int(m.group(2))
    if m.group(1) == "zd_bouquet":
        if k < 1:
            raise KeyError("zd_bouquet needs k >= 1")
        g = Multigraph(1, [(0, 0)] * k)
    else:
        if k < 1:
            raise KeyError("c_n needs n >= 1")
        g = Multigraph(k, [(0, 1), (0, 1)] if k == 2 else _cycle(k))
    return g, SchrodingerWeights.adjacency(g)


# -- random graphs ------------------------------------------------------------

def _pairing(n: int, d: int, rng: SplitMix64) -> list[tuple[int, int]]:
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    return [tuple(sorted(stubs[i:i + 2])) for i in range(0, len(stubs), 2)]


def random_regular_multigraph(n: int, d: int, seed: int, allow_loops: bool = True,
                              allow_multi: bool = True, connected: bool = True,
                              max_tries: int = 10_000) -> Multigraph:
    """Configuration-model d-regular multigraph, retried until constraints hold."""
    if n < 1 or d < 0 or (n * d) % 2:
        raise PreconditionError(f"no {d}-regular graph on {n} vertices")
    rng = SplitMix64(seed)
    for _ in range(max_tries):
        edges = _pairing(n, d, rng)
        if not allow_loops and any(u == v for u, v in edges):
            continue
        if not allow_multi and len(set(edges)) != len(edges):
            continue
        g = Multigraph(n, sorted(edges))
        if connected and not g.is_connected():
            continue
        return g
    raise PreconditionError(f"constraints infeasible after {max_tries} tries (n={n}, d={d})")


def random_multigraph(n: int, m: int, seed: int, allow_loops: bool = True,
                      connected: bool = False, max_tries: int = 10_000) -> Multigraph:
    rng = SplitMix64(seed)
    if n < 1:
        raise PreconditionError("n must be positive")
    if connected and m < n - 1:
        raise PreconditionError(f"{m} edges cannot connect {n} vertices")
    for _ in range(max_tries):
        edges = []
        while len(edges) < m:
            u, v = rng.below(n), rng.below(n)
            if u == v and (not allow_loops or n > 1 and rng.below(3)):
                # loops are allowed but kept rarer than proper edges
                continue
            edges.append((min(u, v), max(u, v)))
        g = Multigraph(n, edges)
        if connected and not g.is_connected():
            continue
        return g
    raise PreconditionError("could not build a connected multigraph")


def random_simple_regular(n: int, d: int, seed: int) -> Multigraph:
    return random_regular_multigraph(n, d, seed, allow_loops=False, allow_multi=False)


def _star_gadget(d: int, rng: SplitMix64) -> list[tuple[int, int]]:
    # vertex 0 joined once to 1..d-1; those take d-1 more stubs each, paired at random
    edges = [(0, i) for i in range(1, d)]
    stubs = [i for i in range(1, d) for _ in range(d - 1)]
    rng.shuffle(stubs)
    edges += [tuple(sorted(stubs[j:j + 2])) for j in range(0, len(stubs), 2)]
    return edges


def _split_gadget(d: int, rng: SplitMix64) -> list[tuple[int, int]]:
    # a d-regular multigraph on two vertices with one edge a-b replaced by a-0-b;
    # vertex 0 then carries (d-3)/2 loops and is one short of degree d
    core = random_regular_multigraph(2, d, rng.next_u64())
    edges = [(u + 1, v + 1) for u, v in core.edges]
    cut = next(i for i, (u, v) in enumerate(edges) if u != v)
    a, b = edges.pop(cut)
    edges += [(0, a), (0, b)] + [(0, 0)] * ((d - 3) // 2)
    return edges


def bridged_odd_regular(d: int, seed: int, n_max: int = 8) -> Multigraph:
    """Connected d-regular multigraph (d odd) with at least one bridge.

    Two gadgets, each with exactly one vertex (its local 0) short by one,
    joined through a bridge between those vertices.
    """
    if d < 3 or d % 2 == 0:
        raise PreconditionError("bridged construction needs odd d >= 3")
    rng = SplitMix64(seed)
    makers = [(d, _star_gadget), (3, _split_gadget)]
    sides = []
    budget = n_max
    for k in range(2):
        fits = [mk for size, mk in makers if size + (3 if k == 0 else 0) <= budget]
        if not fits:
            raise PreconditionError(f"n_max={n_max} too small for d={d}")
        edges = rng.choice(fits)(d, rng)
        n = 1 + max(max(e) for e in edges)
        budget -= n
        sides.append((n, edges))
    (n1, e1), (n2, e2) = sides
    edges = e1 + [(u + n1, v + n1) for u, v in e2] + [(0, n1)]
    g = Multigraph(n1 + n2, edges)
    if g.is_regular() != d or not find_bridges(g):  # pragma: no cover - construction invariant
        raise AssertionError("bridged construction broke its invariant")
    return g


def random_weights(g: Multigraph, seed: int, complex_weights: bool = True,
                   max_num: int = 3, max_den: int = 3) -> SchrodingerWeights:
    """Nonzero Gaussian-rational weights and rational potentials."""
    rng = SplitMix64(seed)

    def q():
        return Fraction(rng.below(2 * max_num + 1) - max_num, 1 + rng.below(max_den))

    ew = []
    for _ in range(g.m):
        while True:
            w = GaussianRational(q(), q() if complex_weights else 0)
            if w:
                break
        ew.append(w)
    return SchrodingerWeights(tuple(ew), tuple(q() for _ in range(g.n)))


def random_type_ii(d: int, seed: int, n_min: int = 2, n_max: int = 7,
                   max_tries: int = 10_000) -> Multigraph:
    """Connected bridge-less multigraph, max degree exactly d (odd), no loops
    needed; some vertices are left below degree d so I is a proper subset."""
    if d % 2 == 0:
        raise PreconditionError("Type II needs odd d")
    rng = SplitMix64(seed)
    for _ in range(max_tries):
        n = n_min + rng.below(n_max - n_min + 1)
        # start from a cycle (bridge-less), then add random edges under the cap
        edges = list(_cycle(n)) if n > 2 else [(0, 1), (0, 1)]
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        for _ in range(rng.below(n * d)):
            u, v = rng.below(n), rng.below(n)
            need = 2 if u == v else 1
            if deg[u] + need > d or deg[v] + need > d:
                continue
            if u == v and rng.below(4):
                continue
            edges.append((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
        if max(deg) != d or min(deg) == d:
            continue
        g = Multigraph(n, edges)
        if g.is_connected() and not find_bridges(g):
            return g
    raise PreconditionError("could not build a Type II graph")


def exhaustive_simple(n: int) -> Iterator[Multigraph]:
    """All connected simple graphs on n vertices up to isomorphism (n <= 7)."""
    from networkx.generators.atlas import graph_atlas_g

    for h in graph_atlas_g():
        if h.number_of_nodes() != n or n == 0:
            continue
        if n > 1 and not _nx_connected(h):
            continue
        yield Multigraph(n, sorted(tuple(sorted(e)) for e in h.edges()))


def _nx_connected(h) -> bool:
    import networkx as nx
    return nx.is_connected(h)


# -- corpus specs ---------------------------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    kind: str                      # named | random_regular | random_multigraph | exhaustive_simple
    seed: int = 0
    count: int = 1
    params: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: dict) -> "CorpusSpec":
        kind = data.get("kind")
        if kind not in ("named", "random_regular", "random_multigraph", "exhaustive_simple"):
            raise ValueError(f"unknown corpus kind {kind!r}")
        params = {k: v for k, v in data.items() if k not in ("kind", "seed", "count")}
        return cls(kind, int(data.get("seed", 0)), int(data.get("count", 1)), params)

    def to_json(self) -> dict:
        out = dict(self.params)
        out.update(kind=self.kind, seed=self.seed, count=self.count)
        return out


def _sub_seed(seed: int, i: int) -> int:
    return SplitMix64(seed ^ ((i * 0xD1B54A32D192ED03) & MASK64)).next_u64()


def generate(spec: CorpusSpec) -> Iterator[tuple[Multigraph, SchrodingerWeights]]:
    p = spec.params
    if spec.kind == "named":
        g, w = named_fixture(p["name"])
        for _ in range(spec.count):
            yield g, w
    elif spec.kind == "random_regular":
        for i in range(spec.count):
            g = random_regular_multigraph(int(p["n"]), int(p["d"]), _sub_seed(spec.seed, i),
                                          bool(p.get("allow_loops", True)),
                                          bool(p.get("allow_multi", True)))
            yield g, SchrodingerWeights.adjacency(g)
    elif spec.kind == "random_multigraph":
        for i in range(spec.count):
            g = random_multigraph(int(p["n"]), int(p["m"]), _sub_seed(spec.seed, i),
                                  connected=bool(p.get("connected", False)))
            yield g, SchrodingerWeights.adjacency(g)
    elif spec.kind == "exhaustive_simple":
        graphs = list(exhaustive_simple(int(p["n"])))
        for g in graphs[:spec.count] if spec.count > 0 else graphs:
            yield g, SchrodingerWeights.adjacency(g)
    else:
        raise ValueError(spec.kind)


def write_corpus(spec: CorpusSpec, out_dir) -> list[str]:
    """Write one canonical JSON file per graph plus manifest.json; returns file names."""
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for i, (g, w) in enumerate(generate(spec)):
        name = f"graph_{i:04d}.json"
        (out / name).write_text(canonical_json(graph_to_json(g, w)) + "\n")
        names.append(name)
    manifest = {"spec": spec.to_json(), "files": names}
    (out / "manifest.json").write_text(canonical_json(manifest) + "\n")
    return names


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


__all__ = [
    "CorpusSpec", "FIXTURE_NAMES", "GraphError", "SplitMix64", "bridged_odd_regular",
    "canonical_json", "exhaustive_simple", "generate", "named_fixture", "random_multigraph",
    "random_regular_multigraph", "random_simple_regular", "random_type_ii", "random_weights",
    "write_corpus",
]
