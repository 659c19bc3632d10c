"""The periodic realization G^per, Floquet matrices H(z) and torus sampling.

Cells of G^per are integer vectors with one coordinate per edge.  They are
stored sparsely as sorted ``(edge_id, coordinate)`` pairs with zero
coordinates dropped.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import kernels
from .combinatorics import MatchingPolynomials, iter_degree2_subgraphs, orientations
from .generators import SplitMix64
from .graph import Multigraph, SchrodingerWeights, hamiltonian_matrix
from .rational import GaussianRational, MalformedRational, parse_rational

UNIT_TOL = 1e-9


class UnsupportedInput(ValueError):
    pass


def floquet_matrix(g: Multigraph, w: SchrodingerWeights, z) -> np.ndarray:
    w.check_covers(g)
    z = np.asarray(z, dtype=np.complex128).reshape(-1)
    if z.shape[0] != g.m:
        raise ValueError(f"z has {z.shape[0]} entries, graph has {g.m} edges")
    if g.m and np.max(np.abs(np.abs(z) - 1.0)) > UNIT_TOL:
        raise ValueError("z must lie on the unit torus")
    h = np.zeros((g.n, g.n), dtype=np.complex128)
    for e, (u, v) in enumerate(g.edges):
        zw = z[e] * complex(w.edge_weight[e])
        if u == v:
            h[u, u] += 2.0 * zw.real
        else:
            h[u, v] += zw
            h[v, u] += zw.conjugate()
    for v in range(g.n):
        h[v, v] += float(w.potential[v])
    return h


@dataclass(frozen=True)
class FloquetSample:
    theta: tuple[float, ...]
    eigenvalues: tuple[float, ...]

    @property
    def z(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.theta, dtype=np.float64))

    def distance(self, lam) -> float:
        lam = float(lam)
        return min(abs(x - lam) for x in self.eigenvalues) if self.eigenvalues else math.inf


def torus_samples(g: Multigraph, w: SchrodingerWeights, samples: int, seed: int) -> list[FloquetSample]:
    """Seeded uniform points of the torus with the spectrum of H(z) at each.

    Angles are drawn edge by edge, sample by sample, from one splitmix64
    stream: theta = 2*pi*u with u in [0, 1).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = SplitMix64(seed)
    out = []
    for _ in range(samples):
        theta = tuple(2.0 * math.pi * rng.uniform() for _ in range(g.m))
        h = floquet_matrix(g, w, np.exp(1j * np.asarray(theta, dtype=np.float64)))
        eig = kernels.jacobi_eigvalsh(h)
        out.append(FloquetSample(theta, tuple(float(x) for x in eig)))
    return out


def sample_flatband_numeric(g: Multigraph, w: SchrodingerWeights, lam, samples: int,
                            seed: int) -> float:
    """Max over sampled z of the distance from lam to the spectrum of H(z)."""
    return max(s.distance(lam) for s in torus_samples(g, w, samples, seed))


def floquet_csv(g: Multigraph, w: SchrodingerWeights, samples: int, seed: int,
                check_lambda=None) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    header = [f"theta_{i + 1}" for i in range(g.m)] + [f"eig_{i + 1}" for i in range(g.n)]
    if check_lambda is not None:
        header.append("min_dist")
    wr.writerow(header)
    for s in torus_samples(g, w, samples, seed):
        row = [repr(t) for t in s.theta] + [repr(x) for x in s.eigenvalues]
        if check_lambda is not None:
            row.append(repr(s.distance(check_lambda)))
        wr.writerow(row)
    return buf.getvalue()


def det_expansion_at(g: Multigraph, w: SchrodingerWeights, lam, z,
                     mp: MatchingPolynomials | None = None) -> complex:
    """Sum over oriented gamma of (-1)^cc m_{G-gamma}(lam) w_gamma z_gamma."""
    if mp is None:
        mp = MatchingPolynomials(g, w)
    z = np.asarray(z, dtype=np.complex128)
    full = g.all_vertices
    total = 0j
    for gamma in iter_degree2_subgraphs(g):
        m = float(mp(full & ~gamma.covered)(Fraction(lam)))
        sign = -1.0 if gamma.cc % 2 else 1.0
        for o, wg in orientations(gamma, w):
            zg = 1 + 0j
            for e, k in enumerate(o.z_exponents(g.m)):
                if k:
                    zg *= z[e] ** k
            total += sign * m * complex(wg) * zg
    return total


def det_direct_at(g: Multigraph, w: SchrodingerWeights, lam, z) -> complex:
    h = floquet_matrix(g, w, z)
    return complex(np.linalg.det(float(lam) * np.eye(g.n) - h))


# -- the periodic graph ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class PeriodicVertex:
    cell: tuple[tuple[int, int], ...]
    site: int

    @classmethod
    def origin(cls, site: int = 0) -> "PeriodicVertex":
        return cls((), site)

    def shifted(self, edge_id: int, step: int) -> "PeriodicVertex":
        coords = dict(self.cell)
        c = coords.get(edge_id, 0) + step
        if c:
            coords[edge_id] = c
        else:
            coords.pop(edge_id, None)
        return PeriodicVertex(tuple(sorted(coords.items())), self.site)

    def dense_cell(self, m: int) -> tuple[int, ...]:
        out = [0] * m
        for e, c in self.cell:
            out[e] = c
        return tuple(out)

    def to_json(self) -> dict:
        return {"cell": [[e, c] for e, c in self.cell], "site": self.site}


def periodic_neighbors(g: Multigraph, pv: PeriodicVertex, w: SchrodingerWeights | None = None
                       ) -> list[tuple[PeriodicVertex, GaussianRational]]:
    """One neighbor per directed edge leaving ``pv.site``."""
    if not 0 <= pv.site < g.n:
        raise ValueError(f"site {pv.site} out of range")
    out = []
    seen_loops = set()
    for e, x in g.adj[pv.site]:
        u, v = g.edges[e]
        if u == v:  # self-loop: listed twice, once per direction
            forward = e not in seen_loops
            seen_loops.add(e)
        else:
            forward = u == pv.site
        wt = GaussianRational(1) if w is None else w.edge_weight[e]
        nb = pv.shifted(e, 1 if forward else -1)
        out.append((PeriodicVertex(nb.cell, x), wt if forward else wt.conj()))
    return out


def ball(g: Multigraph, radius: int, center: PeriodicVertex | None = None) -> dict[PeriodicVertex, int]:
    """Graph-distance ball in G^per, vertex -> distance."""
    center = center or PeriodicVertex.origin()
    dist = {center: 0}
    q = deque([center])
    while q:
        x = q.popleft()
        if dist[x] == radius:
            continue
        for y, _ in periodic_neighbors(g, x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def _apply(g, w, lam, psi: dict, x: PeriodicVertex):
    acc = (w.potential[x.site] - lam) * psi.get(x, 0)
    for y, wt in periodic_neighbors(g, x, w):
        if y in psi:
            acc = wt * psi[y] + acc
    return acc


@dataclass
class CompactEigenfunction:
    values: dict[PeriodicVertex, object]
    radius: int
    lam: Fraction

    def residual(self, g: Multigraph, w: SchrodingerWeights) -> dict[PeriodicVertex, object]:
        """Nonzero entries of (H - lam) psi; empty means an exact eigenfunction."""
        support = set(self.values)
        touched = set(support)
        for x in support:
            touched.update(y for y, _ in periodic_neighbors(g, x))
        out = {}
        for x in sorted(touched):
            r = _apply(g, w, self.lam, self.values, x)
            if r:
                out[x] = r
        return out

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "radius": self.radius,
            "support": [dict(v.to_json(), value=str(c)) for v, c in sorted(self.values.items())],
        }


def _nullvector(rows: list[dict[int, object]], ncols: int, zero, one):
    """Some nonzero vector in the null space of a sparse exact matrix, or None."""
    pivots: dict[int, dict[int, object]] = {}  # pivot column -> reduced row (pivot entry 1)
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        # eliminate existing pivots
        changed = True
        while changed:
            changed = False
            for c in list(r):
                if c in pivots and c in r:
                    f = r[c]
                    for cc, vv in pivots[c].items():
                        nv = r.get(cc, zero) - f * vv
                        if nv:
                            r[cc] = nv
                        else:
                            r.pop(cc, None)
                    changed = True
        if not r:
            continue
        pc = min(r)
        inv = one / r[pc]
        r = {c: v * inv for c, v in r.items()}
        # keep earlier pivot rows reduced against the new one
        for c, prow in pivots.items():
            if pc in prow:
                f = prow[pc]
                for cc, vv in r.items():
                    nv = prow.get(cc, zero) - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[pc] = r
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    x = {f: one}
    for c, prow in pivots.items():
        if f in prow:
            x[c] = zero - prow[f]
    return x


def find_compact_eigenfunction(g: Multigraph, w: SchrodingerWeights, lam, radius: int
                               ) -> CompactEigenfunction | None:
    """Exact search for psi supported in B_R with (H - lam) psi = 0 on B_{R+1}.

    ``None`` only means nothing was found at this radius.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    if isinstance(lam, str):
        try:
            lam = parse_rational(lam)
        except MalformedRational as exc:
            raise UnsupportedInput(str(exc)) from exc
    if isinstance(lam, bool) or not isinstance(lam, Rational):
        raise UnsupportedInput("lambda must be an exact rational")
    lam = Fraction(lam)
    w.check_covers(g)
    real = w.is_real()
    if real:
        zero, one = Fraction(0), Fraction(1)
        conv = lambda v: v.re if isinstance(v, GaussianRational) else Fraction(v)  # noqa: E731
    else:
        zero, one = GaussianRational(0), GaussianRational(1)
        conv = GaussianRational.coerce
    dist = ball(g, radius + 1)
    inner = sorted(x for x, d in dist.items() if d <= radius)
    col = {x: i for i, x in enumerate(inner)}
    rows = []
    for x in sorted(dist):
        row: dict[int, object] = {}
        if x in col:
            row[col[x]] = conv(w.potential[x.site] - lam)
        for y, wt in periodic_neighbors(g, x, w):
            if y in col:
                c = col[y]
                row[c] = row.get(c, zero) + conv(wt)
        rows.append(row)
    vec = _nullvector(rows, len(inner), zero, one)
    if vec is None:
        return None
    values = {inner[c]: v for c, v in vec.items() if v}
    return CompactEigenfunction(values, radius, lam)


__all__ = [
    "CompactEigenfunction", "FloquetSample", "PeriodicVertex", "UnsupportedInput", "ball",
    "det_direct_at", "det_expansion_at", "find_compact_eigenfunction", "floquet_csv",
    "floquet_matrix", "hamiltonian_matrix", "periodic_neighbors", "sample_flatband_numeric",
    "torus_samples",
]
