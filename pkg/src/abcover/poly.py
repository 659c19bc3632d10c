"""Dense univariate polynomials over Q and Q(i).

Coefficient lists are stored constant term first with trailing zeros
trimmed; the zero polynomial has no coefficients and degree ``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .rational import GaussianRational, format_rational, parse_rational

NEG_INF = float("-inf")


class InvariantViolation(ArithmeticError):
    """An exact identity that must hold came out false."""


def _trim(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


class RationalPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RationalPolynomial":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RationalPolynomial":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_rpoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rpoly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RationalPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "RationalPolynomial"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lb = other.coeffs[-1]
        if len(rem) - 1 < db:
            return RationalPolynomial(), RationalPolynomial(rem)
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lb
            quot[k] = c
            if c:
                for j, bc in enumerate(other.coeffs):
                    rem[k + j] -= c * bc
        return RationalPolynomial(quot), RationalPolynomial(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "RationalPolynomial") -> "RationalPolynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "RationalPolynomial") -> bool:
        """True if self | other."""
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "RationalPolynomial":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return RationalPolynomial(c / lc for c in self.coeffs)

    def primitive_integer_coeffs(self) -> list[int]:
        """Integer coefficients of a positive rational multiple with content 1."""
        if not self.coeffs:
            return []
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        return [c // g for c in ints]

    def __repr__(self):
        return f"RationalPolynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = format_rational(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "RationalPolynomial":
        return cls(parse_rational(c) for c in data["coeffs"])


def _as_rpoly(x):
    if isinstance(x, RationalPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalPolynomial.const(x)
    return None


X = RationalPolynomial.x()
ONE = RationalPolynomial.const(1)


class GaussianPolynomial:
    """Polynomial with Gaussian-rational coefficients; used while accumulating
    sums whose imaginary parts must cancel."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([GaussianRational.coerce(c) for c in coeffs])

    @classmethod
    def from_rational(cls, p: RationalPolynomial) -> "GaussianPolynomial":
        return cls(p.coeffs)

    def __add__(self, other: "GaussianPolynomial"):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return GaussianPolynomial(out)

    def __neg__(self):
        return GaussianPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "GaussianPolynomial":
        s = GaussianRational.coerce(s)
        return GaussianPolynomial(c * s for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, GaussianPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, RationalPolynomial):
            return self.coeffs == GaussianPolynomial.from_rational(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def conj(self) -> "GaussianPolynomial":
        return GaussianPolynomial(c.conj() for c in self.coeffs)

    def imaginary_part(self) -> RationalPolynomial:
        return RationalPolynomial(c.im for c in self.coeffs)

    def real_part(self) -> RationalPolynomial:
        return RationalPolynomial(c.re for c in self.coeffs)

    def to_real(self) -> RationalPolynomial:
        im = self.imaginary_part()
        if im:
            raise InvariantViolation(f"nonzero imaginary residue {im}")
        return self.real_part()


# -- gcd and square-free parts ----------------------------------------------

def poly_gcd(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd over Q; gcd(0, 0) = 0."""
    a, b = p, q
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


def gcd_many(polys: Iterable[RationalPolynomial]) -> RationalPolynomial:
    acc = RationalPolynomial()
    for p in polys:
        acc = poly_gcd(acc, p)
        if acc.degree == 0:
            break
    return acc


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    if p.is_constant():
        return p.monic() if p else p
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def yun_decomposition(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Monic square-free factors f_1, f_2, ... with p = lc * prod f_i^i."""
    if p.is_constant():
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    while not b.is_constant():
        f = poly_gcd(b, d)
        out.append(f)
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
    while out and out[-1].is_constant():
        out.pop()
    return out


# -- characteristic polynomials ---------------------------------------------

def _is_real_matrix(m) -> bool:
    return all(not isinstance(x, GaussianRational) or x.im == 0 for row in m for x in row)


def _to_field(m, real: bool):
    if real:
        return [[x.re if isinstance(x, GaussianRational) else Fraction(x) for x in row]
                for row in m]
    return [[GaussianRational.coerce(x) if not isinstance(x, int) else GaussianRational(x)
             for x in row] for row in m]


def char_poly(m: Sequence[Sequence]) -> RationalPolynomial:
    """det(lambda*I - m) for a Hermitian matrix via Faddeev-LeVerrier.

    Every coefficient must come out real; a nonzero imaginary part raises
    InvariantViolation rather than being dropped.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return ONE
    real = _is_real_matrix(m)
    a = _to_field(m, real)
    zero = Fraction(0) if real else GaussianRational(0)
    coeffs = [zero] * (n + 1)
    coeffs[n] = Fraction(1) if real else GaussianRational(1)
    mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = _matmul(a, mk, zero)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] = prod[i][i] + c_prev
        mk = prod
        am = _matmul(a, mk, zero)
        tr = zero
        for i in range(n):
            tr = tr + am[i][i]
        coeffs[n - k] = -tr / k
    if real:
        return RationalPolynomial(coeffs)
    return GaussianPolynomial(coeffs).to_real()


def _matmul(a, b, zero):
    n = len(a)
    bt = list(zip(*b))
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(n):
            s = zero
            bj = bt[j]
            for k in range(n):
                x = ai[k]
                if x:
                    y = bj[k]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def bareiss_det(m: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination with pivoting."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    real = _is_real_matrix(m)
    a = [list(row) for row in _to_field(m, real)]
    one = Fraction(1) if real else GaussianRational(1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0) if real else GaussianRational(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


# -- real roots -------------------------------------------------------------

def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    if not seq[-1]:
        seq.pop()
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[RationalPolynomial], x) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    """Every complex root has absolute value strictly below this."""
    lc = p.lead
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def count_roots_in_interval(p: RationalPolynomial, lo, hi) -> int:
    """Distinct real roots of p in (lo, hi]."""
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.is_constant():
        return 0
    seq = sturm_sequence(squarefree_part(p))
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def count_real_roots(p: RationalPolynomial) -> int:
    if p.is_constant():
        return 0
    b = cauchy_bound(p)
    return count_roots_in_interval(p, -b, b)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: RationalPolynomial) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, ascending."""
    if p.is_constant():
        return []
    sqf = squarefree_part(p)
    ints = sqf.primitive_integer_coeffs()
    candidates = set()
    if ints[0] == 0:
        candidates.add(Fraction(0))
        k = next(i for i, c in enumerate(ints) if c)
        ints = ints[k:]
    if len(ints) > 1:
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                candidates.add(Fraction(a, b))
                candidates.add(Fraction(-a, b))
    out = []
    for r in sorted(candidates):
        if sqf(r) != 0:
            continue
        lin = RationalPolynomial((-r, 1))
        mult = 0
        q = p
        while True:
            quo, rem = divmod(q, lin)
            if rem:
                break
            q = quo
            mult += 1
        out.append((r, mult))
    return out


@dataclass
class RootIsolation:
    rational_roots: list[tuple[Fraction, int]] = field(default_factory=list)
    irrational_intervals: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    # multiplicity of the root inside each interval, aligned with irrational_intervals
    interval_multiplicities: list[int] = field(default_factory=list)
    residual_nonreal_degree: int = 0

    def to_json(self) -> dict:
        return {
            "rational_roots": [{"value": format_rational(r), "multiplicity": k}
                               for r, k in self.rational_roots],
            "intervals": [{"lo": format_rational(lo), "hi": format_rational(hi),
                           "multiplicity": k}
                          for (lo, hi), k in zip(self.irrational_intervals,
                                                 self.interval_multiplicities)],
            "residual_nonreal_degree": self.residual_nonreal_degree,
        }


def _isolate_squarefree(f: RationalPolynomial, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Intervals (lo, hi) each holding one real root of square-free f with no
    rational roots, narrowed to at most ``width``."""
    seq = sturm_sequence(f)
    b = cauchy_bound(f)
    out = []
    stack = [(-b, b, sign_variations(seq, -b) - sign_variations(seq, b))]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            out.append(_narrow(f, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        vmid = sign_variations(seq, mid)
        left = sign_variations(seq, lo) - vmid
        stack.append((mid, hi, count - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def _narrow(f, lo, hi, width):
    slo = _sign(f(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign(f(mid))
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def sturm_isolate(p: RationalPolynomial, width=Fraction(1, 2 ** 20)) -> RootIsolation:
    """Exact rational roots plus isolating intervals for the irrational real ones."""
    width = Fraction(width)
    iso = RootIsolation()
    if p.is_constant():
        return iso
    iso.rational_roots = rational_roots(p)
    rest = p.monic()
    for r, k in iso.rational_roots:
        rest = rest.exact_div(RationalPolynomial((-r, 1)) ** k)
    real_deg = 0
    found = []
    for i, f in enumerate(yun_decomposition(rest), start=1):
        if f.is_constant():
            continue
        for iv in _isolate_squarefree(f, width):
            found.append((iv, i))
            real_deg += i
    found.sort()
    iso.irrational_intervals = [iv for iv, _ in found]
    iso.interval_multiplicities = [k for _, k in found]
    deg = 0 if rest.is_constant() else rest.degree
    iso.residual_nonreal_degree = deg - real_deg
    return iso
