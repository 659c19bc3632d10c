"""Bridges, bridge-blocks and the bridge-block forest of a multigraph."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph import Multigraph, induced_subgraph, members


def find_bridges(g: Multigraph) -> frozenset[int]:
    """Edge ids whose removal disconnects their component.

    Lowlink DFS that skips only the tree edge it arrived by (by id), so a
    parallel copy of that edge counts as a back edge.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = set()
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, 0)]
        while stack:
            v, parent_edge, i = stack.pop()
            adj = g.adj[v]
            if i < len(adj):
                stack.append((v, parent_edge, i + 1))
                e, x = adj[i]
                if e == parent_edge or x == v:
                    continue
                if disc[x] >= 0:
                    low[v] = min(low[v], disc[x])
                else:
                    disc[x] = low[x] = t
                    t += 1
                    stack.append((x, e, 0))
            elif parent_edge >= 0:
                a, b = g.edges[parent_edge]
                p = a if b == v else b
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    bridges.add(parent_edge)
    return frozenset(bridges)


@dataclass(frozen=True)
class BridgeBlockDecomposition:
    bridges: frozenset[int]
    blocks: tuple[int, ...]                       # vertex masks, ordered by lowest vertex
    tree_edges: tuple[tuple[int, int, int], ...]  # (block_i, block_j, bridge id), i < j
    leaf_blocks: frozenset[int]
    leaf_set: int

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if (b >> v) & 1:
                return i
        raise KeyError(v)

    def to_json(self) -> dict:
        return {
            "bridges": sorted(self.bridges),
            "blocks": [members(b) for b in self.blocks],
            "tree_edges": [list(t) for t in self.tree_edges],
            "leaf_blocks": sorted(self.leaf_blocks),
            "leaf_set": members(self.leaf_set),
        }


def bridge_block_decomposition(g: Multigraph) -> BridgeBlockDecomposition:
    bridges = find_bridges(g)
    kept = [(u, v) for e, (u, v) in enumerate(g.edges) if e not in bridges]
    blocks = tuple(Multigraph(g.n, kept, max_vertices=max(g.n, 1)).components())
    owner = [0] * g.n
    for i, b in enumerate(blocks):
        for v in members(b):
            owner[v] = i
    tree = []
    tdeg = [0] * len(blocks)
    for e in sorted(bridges):
        u, v = g.edges[e]
        a, b = sorted((owner[u], owner[v]))
        tree.append((a, b, e))
        tdeg[a] += 1
        tdeg[b] += 1
    leaves = frozenset(i for i, k in enumerate(tdeg) if k == 1)
    leaf_set = 0
    for v in range(g.n):
        if g.degree(v) == 1:
            leaf_set |= 1 << v
    return BridgeBlockDecomposition(bridges, blocks, tuple(tree), leaves, leaf_set)


class BlockType(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    NEITHER = "neither"


def classify_block(g: Multigraph, block: int, d: int) -> BlockType:
    """Type I / Type II label of a bridge-block, by degrees in the induced graph."""
    sub = induced_subgraph(g, block).graph
    top = sub.max_degree()
    if top < d:
        return BlockType.TYPE_I
    if top == d:
        return BlockType.TYPE_II
    return BlockType.NEITHER


__all__ = ["BlockType", "BridgeBlockDecomposition", "bridge_block_decomposition",
           "classify_block", "find_bridges"]
