"""Flat bands of the maximal abelian cover.

A real lambda is a flat band exactly when it is a root of the matching
polynomial of ``G minus gamma`` for every degree-2 subgraph gamma, the empty
one included.  Everything here reduces that to exact gcds over Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import (Degree2Subgraph, MatchingPolynomials, PreconditionError,
                            iter_degree2_subgraphs, orientations)
from .graph import (Multigraph, SchrodingerWeights, hamiltonian_matrix,
                    induced_subgraph)
from .poly import (ONE, GaussianPolynomial, InvariantViolation, RationalPolynomial,
                   RootIsolation, char_poly, count_real_roots, count_roots_in_interval,
                   poly_gcd, sturm_isolate)


class DisconnectedGraphError(ValueError):
    pass


def _require_connected(g: Multigraph) -> None:
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if not g.is_connected():
        raise DisconnectedGraphError("flat-band analysis needs a connected graph")


@dataclass
class FlatBandReport:
    gcd_poly: RationalPolynomial
    roots: RootIsolation
    per_gamma: list[tuple[Degree2Subgraph, RationalPolynomial]] = field(default_factory=list)
    # greedy, not globally minimal; empty when flat bands exist
    witness_coprime_set: list[Degree2Subgraph] = field(default_factory=list)
    stopped_early: bool = False  # gamma walk cut short once the gcd hit 1

    @property
    def has_flat_bands(self) -> bool:
        return not self.gcd_poly.is_constant()

    def to_json(self) -> dict:
        out = {
            "gcd": str(self.gcd_poly),
            "gcd_coeffs": self.gcd_poly.to_json()["coeffs"],
            "has_flat_bands": self.has_flat_bands,
            "gammas_evaluated": len(self.per_gamma),
            "witness": [gamma.to_json() for gamma in self.witness_coprime_set],
        }
        out.update(self.roots.to_json())
        return out


def _greedy_coprime(per_gamma):
    chosen = []
    acc = RationalPolynomial()
    for gamma, p in per_gamma:
        nxt = poly_gcd(acc, p)
        if nxt != acc:
            chosen.append((gamma, p))
            acc = nxt
            if acc.degree == 0:
                break
    # drop members that turned out redundant
    i = 0
    while i < len(chosen) and len(chosen) > 1:
        rest = chosen[:i] + chosen[i + 1:]
        acc = RationalPolynomial()
        for _, p in rest:
            acc = poly_gcd(acc, p)
        if acc.degree == 0:
            chosen = rest
        else:
            i += 1
    return [gamma for gamma, _ in chosen]


def flatband_polynomial(g: Multigraph, w: SchrodingerWeights, early_exit: bool = True,
                        mp: MatchingPolynomials | None = None) -> FlatBandReport:
    """Monic gcd of the matching polynomials of G minus gamma over all gamma.

    Gammas are visited in canonical order starting with the empty one; with
    ``early_exit`` the walk stops as soon as the gcd reaches 1.
    """
    _require_connected(g)
    w.check_covers(g)
    if mp is None:
        mp = MatchingPolynomials(g, w)
    full = g.all_vertices
    acc = RationalPolynomial()
    per_gamma = []
    complete = True
    for gamma in iter_degree2_subgraphs(g):
        p = mp(full & ~gamma.covered)
        per_gamma.append((gamma, p))
        acc = poly_gcd(acc, p)
        if early_exit and acc.degree == 0:
            complete = False
            break
    report = FlatBandReport(acc, sturm_isolate(acc), per_gamma, stopped_early=not complete)
    if acc.degree == 0:
        report.witness_coprime_set = _greedy_coprime(per_gamma)
    return report


@dataclass
class FlatbandVerdict:
    is_flat: bool
    witness_gamma: Degree2Subgraph | None
    witness_value: Fraction | None
    evaluations: list[tuple[Degree2Subgraph, Fraction]]

    def __iter__(self):
        # unpacks as (bool, witness)
        yield self.is_flat
        yield (self.witness_gamma, self.witness_value) if not self.is_flat else self.evaluations


def is_flatband(g: Multigraph, w: SchrodingerWeights, lam) -> FlatbandVerdict:
    """Pointwise criterion at a rational lambda, with a witness either way."""
    _require_connected(g)
    lam = Fraction(lam)
    mp = MatchingPolynomials(g, w)
    full = g.all_vertices
    evals = []
    for gamma in iter_degree2_subgraphs(g):
        val = mp(full & ~gamma.covered)(lam)
        evals.append((gamma, val))
        if val != 0:
            return FlatbandVerdict(False, gamma, val, evals)
    return FlatbandVerdict(True, None, None, evals)


def charpoly_expansion(g: Multigraph, w: SchrodingerWeights,
                       mp: MatchingPolynomials | None = None) -> GaussianPolynomial:
    """Sum over oriented gamma of (-1)^cc * m_{G-gamma} * w_gamma."""
    if mp is None:
        mp = MatchingPolynomials(g, w)
    full = g.all_vertices
    total = GaussianPolynomial()
    for gamma in iter_degree2_subgraphs(g):
        m = GaussianPolynomial.from_rational(mp(full & ~gamma.covered))
        sign = -1 if gamma.cc % 2 else 1
        for _, wg in orientations(gamma, w):
            total = total + m.scale(wg * sign)
    return total


def verify_charpoly_expansion(g: Multigraph, w: SchrodingerWeights) -> bool:
    lhs = char_poly(hamiltonian_matrix(g, w))
    rhs = charpoly_expansion(g, w).to_real()
    return lhs == rhs


def moebius_expansion(g: Multigraph, w: SchrodingerWeights) -> GaussianPolynomial:
    """Sum over oriented gamma of det(lambda - H restricted to G-gamma) * w_gamma."""
    w.check_covers(g)
    cache: dict[int, RationalPolynomial] = {}
    full = g.all_vertices
    total = GaussianPolynomial()
    for gamma in iter_degree2_subgraphs(g):
        rest = full & ~gamma.covered
        if rest not in cache:
            r = induced_subgraph(g, rest)
            cache[rest] = char_poly(hamiltonian_matrix(r.graph, w.restrict(r)))
        det = GaussianPolynomial.from_rational(cache[rest])
        for _, wg in orientations(gamma, w):
            total = total + det.scale(wg)
    return total


def verify_moebius_identity(g: Multigraph, w: SchrodingerWeights) -> bool:
    rhs = moebius_expansion(g, w).to_real()
    return MatchingPolynomials(g, w)() == rhs


def ramanujan_bound(d: int, denominator: int = 10 ** 6) -> Fraction:
    """Smallest k/denominator that is >= 2*sqrt(d-1)."""
    target = 4 * (d - 1) * denominator ** 2
    k = math.isqrt(target)
    if k * k < target:
        k += 1
    return Fraction(k, denominator)


def heilmann_lieb_check(g: Multigraph, w: SchrodingerWeights | None = None) -> bool:
    """All real roots of the matching polynomial of a d-regular adjacency
    graph lie in [-b, b], b the rational ceiling of 2*sqrt(d-1)."""
    d = g.is_regular()
    if d is None:
        raise PreconditionError("graph must be regular")
    if d < 2:
        raise PreconditionError(f"need d >= 2, got {d}")
    if w is not None and not w.is_adjacency():
        raise PreconditionError("only adjacency weights are supported")
    if w is None:
        w = SchrodingerWeights.adjacency(g)
    m = MatchingPolynomials(g, w)()
    b = ramanujan_bound(d)
    inside = count_roots_in_interval(m, -b, b) + (1 if m(-b) == 0 else 0)
    return inside == count_real_roots(m)


def theorem2_check(g: Multigraph, w: SchrodingerWeights) -> bool:
    """True when a connected regular graph has no flat bands (expected always)."""
    if g.is_regular() is None:
        raise PreconditionError("graph must be regular")
    return flatband_polynomial(g, w).gcd_poly.is_constant()


def componentwise_flatband(g: Multigraph, w: SchrodingerWeights) -> list[tuple[tuple[int, ...], FlatBandReport]]:
    """Reports for each connected component separately (vertex ids, report)."""
    out = []
    for comp in g.components():
        r = induced_subgraph(g, comp)
        out.append((r.vertices, flatband_polynomial(r.graph, w.restrict(r))))
    return out


__all__ = [
    "DisconnectedGraphError", "FlatBandReport", "FlatbandVerdict", "InvariantViolation",
    "ONE", "charpoly_expansion", "componentwise_flatband", "flatband_polynomial",
    "heilmann_lieb_check", "is_flatband", "moebius_expansion", "ramanujan_bound",
    "theorem2_check", "verify_charpoly_expansion", "verify_moebius_identity",
]
