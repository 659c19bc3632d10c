"""Aomoto-set search for eigenvalues of the universal-cover operator.

A certificate for lambda is a vertex set S such that G[S] is a forest (a
self-loop or a parallel pair inside S counts as a cycle), lambda is an
eigenvalue of H restricted to every tree of G[S], and the outer boundary of
S is strictly smaller than the number of trees.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .combinatorics import MatchingPolynomials
from .flatband import flatband_polynomial, is_flatband
from .graph import (Multigraph, SchrodingerWeights, hamiltonian_matrix, induced_subgraph,
                    members, popcount)
from .poly import (RationalPolynomial, char_poly, poly_gcd, rational_roots, squarefree_part,
                   sturm_isolate)

log = logging.getLogger(__name__)

EXHAUSTIVE_N = 20
COMPARE_MAX_N = 12


@dataclass(frozen=True)
class AomotoCertificate:
    s: int
    components: tuple[int, ...]
    boundary: int
    lambda_poly: RationalPolynomial

    @property
    def cc(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "s": members(self.s),
            "components": [members(c) for c in self.components],
            "boundary": members(self.boundary),
            "lambda_poly": str(self.lambda_poly),
            "lambda_poly_coeffs": self.lambda_poly.to_json()["coeffs"],
        }


def _scan_inputs(g: Multigraph):
    mult = [0] * g.n
    for v in range(g.n):
        for u in members(g.nbr_mask[v]):
            if len(g.edges_between(u, v)) >= 2:
                mult[v] |= 1 << u
    return g.nbr_mask, mult, g.loop_mask


def forest_subsets(g: Multigraph, max_size: int | None = None) -> list[tuple[int, int, int]]:
    """(S, cc, boundary) for every S with G[S] a simple forest and |boundary| < cc,
    sorted by size and then by sorted member list."""
    cap = g.n if max_size is None else min(max_size, g.n)
    nbr, mult, loops = _scan_inputs(g)
    if g.n <= 64:
        raw = kernels.forest_scan(g.n, list(nbr), mult, loops, cap)
    else:  # pragma: no cover - graphs are capped at 64 vertices by default
        from ._pykernels import forest_scan
        raw = forest_scan(g.n, list(nbr), mult, loops, cap)
    return sorted(((int(s), int(c), int(b)) for s, c, b in raw),
                  key=lambda t: (popcount(t[0]), members(t[0])))


class _TreePolys:
    """Char polys of trees of G[S]; on a forest these equal matching polynomials."""

    def __init__(self, g: Multigraph, w: SchrodingerWeights):
        self.mp = MatchingPolynomials(g, w)

    def __call__(self, comp: int) -> RationalPolynomial:
        return self.mp(comp)


def _certificate(g, s, boundary, polys) -> AomotoCertificate:
    comps = tuple(g.components(s))
    acc = RationalPolynomial()
    for c in comps:
        acc = poly_gcd(acc, polys(c))
    return AomotoCertificate(s, comps, boundary, acc)


@dataclass
class BgvmSearch:
    certificate: AomotoCertificate | None
    exhaustive: bool          # False when a size cap cut the search short
    max_size: int | None
    subsets_checked: int = 0

    @property
    def verdict(self) -> str:
        if self.certificate is not None:
            return "certificate"
        return "none_exists" if self.exhaustive else "none_found_within_cap"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "exhaustive": self.exhaustive,
            "max_size": self.max_size,
            "subsets_checked": self.subsets_checked,
        }


def _effective_cap(g: Multigraph, max_size: int | None) -> int | None:
    if max_size is None and g.n > EXHAUSTIVE_N:
        return EXHAUSTIVE_N
    return max_size


def bgvm_search(g: Multigraph, w: SchrodingerWeights, lam, max_size: int | None = None) -> BgvmSearch:
    w.check_covers(g)
    lam = Fraction(lam)
    cap = _effective_cap(g, max_size)
    polys = _TreePolys(g, w)
    checked = 0
    for s, _, boundary in forest_subsets(g, cap):
        checked += 1
        if all(polys(c)(lam) == 0 for c in g.components(s)):
            return BgvmSearch(_certificate(g, s, boundary, polys), True, cap, checked)
    return BgvmSearch(None, cap is None or cap >= g.n, cap, checked)


def bgvm_holds(g: Multigraph, w: SchrodingerWeights, lam, max_size: int | None = None
               ) -> AomotoCertificate | None:
    return bgvm_search(g, w, lam, max_size).certificate


def bgvm_candidate_lambdas(g: Multigraph, w: SchrodingerWeights, max_size: int | None = None
                           ) -> list[tuple[RationalPolynomial, AomotoCertificate]]:
    """(gcd of tree char polys, certificate) for every admissible S with a nonconstant gcd."""
    w.check_covers(g)
    polys = _TreePolys(g, w)
    out = []
    for s, _, boundary in forest_subsets(g, _effective_cap(g, max_size)):
        cert = _certificate(g, s, boundary, polys)
        if not cert.lambda_poly.is_constant():
            out.append((cert.lambda_poly, cert))
    return out


# -- independent validation ------------------------------------------------------

class CertificateError(AssertionError):
    pass


def validate_certificate(g: Multigraph, w: SchrodingerWeights, cert: AomotoCertificate,
                         lam=None) -> None:
    """Re-derive every claim of ``cert`` from scratch; raise on the first mismatch.

    Uses union-find for acyclicity and components and exact characteristic
    polynomials (not matching polynomials) for the spectral condition.
    """
    parent = {v: v for v in members(cert.s)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (u, v) in enumerate(g.edges):
        if u in parent and v in parent:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CertificateError(f"G[S] has a cycle through edge {e}")
            parent[ru] = rv
    groups: dict[int, int] = {}
    for v in parent:
        groups[find(v)] = groups.get(find(v), 0) | (1 << v)
    comps = sorted(groups.values(), key=lambda c: members(c))
    if comps != sorted(cert.components, key=lambda c: members(c)):
        raise CertificateError("component list does not match G[S]")
    boundary = 0
    for u, v in g.edges:
        if u in parent and v not in parent:
            boundary |= 1 << v
        if v in parent and u not in parent:
            boundary |= 1 << u
    if boundary != cert.boundary:
        raise CertificateError("boundary does not match")
    if popcount(boundary) >= len(comps):
        raise CertificateError("boundary is not smaller than the number of components")
    acc = RationalPolynomial()
    cps = []
    for c in comps:
        r = induced_subgraph(g, c)
        cp = char_poly(hamiltonian_matrix(r.graph, w.restrict(r)))
        cps.append(cp)
        acc = poly_gcd(acc, cp)
    if acc != cert.lambda_poly:
        raise CertificateError("lambda_poly is not the gcd of component char polys")
    if lam is not None and any(cp(Fraction(lam)) != 0 for cp in cps):
        raise CertificateError(f"{lam} is not an eigenvalue of every component")


# -- cross-checks against the flat-band criterion --------------------------------

@dataclass
class CandidateReport:
    holds: bool
    candidates: int
    violations: list[tuple[RationalPolynomial, AomotoCertificate]] = field(default_factory=list)


def candidate_report(g: Multigraph, w: SchrodingerWeights, max_size: int | None = None) -> CandidateReport:
    """Every candidate polynomial must vanish wherever lambda is a flat band.

    Checked as: square-free part of each candidate divides the flat-band gcd,
    plus a pointwise flat-band test at every rational candidate root.
    """
    fb = flatband_polynomial(g, w).gcd_poly
    seen: dict[RationalPolynomial, AomotoCertificate] = {}
    for p, cert in bgvm_candidate_lambdas(g, w, max_size):
        seen.setdefault(p, cert)
    bad = []
    for p, cert in seen.items():
        ok = squarefree_part(p).divides(fb)
        if ok:
            ok = all(is_flatband(g, w, r).is_flat for r, _ in rational_roots(p))
        if not ok:
            bad.append((p, cert))
    return CandidateReport(not bad, len(seen), bad)


def check_prop_A2(g: Multigraph, w: SchrodingerWeights) -> bool:
    return candidate_report(g, w).holds


class CompareVerdict(enum.Enum):
    AGREE = "agree"
    AB_STRICTLY_LARGER = "ab_strictly_larger"
    INCONCLUSIVE = "inconclusive"


@dataclass
class CompareReport:
    verdict: CompareVerdict
    flatband_gcd: RationalPolynomial
    uncovered: RationalPolynomial | None = None   # flat-band factor with no B-GV-M certificate
    reason: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value, "flatband_gcd": str(self.flatband_gcd),
               "reason": self.reason}
        if self.uncovered is not None:
            out["witness_poly"] = str(self.uncovered)
            out["witness_roots"] = sturm_isolate(self.uncovered).to_json()
        return out


def compare_ab_vs_uni(g: Multigraph, w: SchrodingerWeights, max_n: int = COMPARE_MAX_N,
                      max_size: int | None = None) -> CompareReport:
    """Does every flat band of the abelian cover satisfy B-GV-M?"""
    fb = flatband_polynomial(g, w).gcd_poly
    if fb.is_constant():
        return CompareReport(CompareVerdict.AGREE, fb, reason="no flat bands")
    if g.n > max_n:
        return CompareReport(CompareVerdict.INCONCLUSIVE, fb, reason=f"n > {max_n}")
    capped = max_size is not None and max_size < g.n
    remaining = squarefree_part(fb)
    for p, _ in bgvm_candidate_lambdas(g, w, max_size):
        common = poly_gcd(remaining, p)
        if not common.is_constant():
            remaining = remaining.exact_div(common)
        if remaining.is_constant():
            return CompareReport(CompareVerdict.AGREE, fb)
    if capped:
        return CompareReport(CompareVerdict.INCONCLUSIVE, fb, remaining,
                             reason=f"subset search capped at {max_size}")
    log.warning("flat band without a B-GV-M certificate: %s on graph with edges %s",
                remaining, g.edges)
    return CompareReport(CompareVerdict.AB_STRICTLY_LARGER, fb, remaining)


__all__ = [
    "AomotoCertificate", "BgvmSearch", "CertificateError", "CompareReport", "CompareVerdict",
    "CandidateReport", "bgvm_candidate_lambdas", "bgvm_holds", "bgvm_search", "check_prop_A2",
    "compare_ab_vs_uni", "forest_subsets", "candidate_report", "validate_certificate",
]
