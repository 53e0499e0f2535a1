"""Local analysis of operators: indicial polynomials, point classification,
and truncated Puiseux series solution bases at ordinary and regular points.

Everything is computed at t = 0 of a localized operator: finite points are
translated there, the point at infinity is mapped by x |-> 1/t. The main
tool is the theta-stratification L = sum_u t^u R_u(theta), theta = t d/dt,
from D^i = t^(-i) theta(theta-1)...(theta-i+1); R_{u_min} is the indicial
polynomial and the higher strata drive the Frobenius recurrences.

A point is expanded only when its solutions form a full basis of log-free
Puiseux series with rational exponents. Irregular points, irrational
indicial roots, and forced logarithms make local_basis raise NotPuiseux
carrying the classification; callers treat that as structural evidence
about the solutions rather than as a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    INF,
    Point,
    Polynomial,
    QMatrix,
    RationalFunction,
    _Infinity,
    rational_roots,
)
from .ore import OrePoly, primitive_integer_form, translate, transform_infinity_raw

ORDINARY = "ordinary"
PUISEUX_REGULAR = "puiseux_regular"
LOGARITHMIC = "logarithmic"
IRRATIONAL_EXPONENT = "irrational_exponent"
IRREGULAR = "irregular"


class PuiseuxSeries:
    """Truncated series sum c_a t^a at a point; t is x - xi at finite xi and
    1/x at infinity. Exponents are rationals; terms with exponent < trunc
    are exact and complete, the tail is unknown. trunc None means exact."""

    __slots__ = ("point", "terms", "trunc")

    def __init__(self, point: Point, terms: dict[Fraction, Fraction] | None = None,
                 trunc: Fraction | None = None):
        td: dict[Fraction, Fraction] = {}
        for e, c in (terms or {}).items():
            e = Fraction(e)
            c = Fraction(c)
            if c and (trunc is None or e < trunc):
                td[e] = c
        self.point = point
        self.terms = td
        self.trunc = None if trunc is None else Fraction(trunc)

    def __repr__(self) -> str:
        parts = [f"{c}*t^{e}" for e, c in sorted(self.terms.items())]
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.trunc is None else f" + O(t^{self.trunc})"
        return f"<{body}{tail} at {self.point}>"

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Fraction | None:
        """Smallest exponent present; for an empty series the truncation
        bound (all we know), or None for the exact zero series."""
        if self.terms:
            return min(self.terms)
        return self.trunc

    def coeff(self, e) -> Fraction:
        return self.terms.get(Fraction(e), Fraction(0))

    # Dense view: exponents are k/q for integers k, start <= k < truncation.
    @property
    def ramification(self) -> int:
        q = 1
        for e in self.terms:
            q = q * e.denominator // math.gcd(q, e.denominator)
        if self.trunc is not None:
            q = q * self.trunc.denominator // math.gcd(q, self.trunc.denominator)
        return q

    @property
    def start(self) -> int:
        q = self.ramification
        if self.terms:
            return int(min(self.terms) * q)
        return int(self.trunc * q) if self.trunc is not None else 0

    @property
    def truncation(self) -> int | None:
        if self.trunc is None:
            return None
        return int(math.ceil(self.trunc * self.ramification))

    @property
    def coeffs(self) -> list[Fraction]:
        q = self.ramification
        lo = self.start
        if self.trunc is not None:
            hi = self.truncation
        else:
            hi = int(max(self.terms) * q) + 1 if self.terms else lo
        return [self.coeff(Fraction(k, q)) for k in range(lo, hi)]

    def _trunc_min(self, other: "PuiseuxSeries") -> Fraction | None:
        if self.trunc is None:
            return other.trunc
        if other.trunc is None:
            return self.trunc
        return min(self.trunc, other.trunc)

    def __add__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        assert self.point == other.point
        t = self._trunc_min(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return PuiseuxSeries(self.point, terms, t)

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.point, {e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return self + (-other)

    def scale(self, c) -> "PuiseuxSeries":
        c = Fraction(c)
        if not c:
            return PuiseuxSeries(self.point, {}, self.trunc)
        return PuiseuxSeries(self.point, {e: c * v for e, v in self.terms.items()}, self.trunc)

    def shift_exponents(self, d) -> "PuiseuxSeries":
        d = Fraction(d)
        return PuiseuxSeries(self.point, {e + d: c for e, c in self.terms.items()},
                             None if self.trunc is None else self.trunc + d)

    def __mul__(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        # unknown tails: tail(a) * val(b) and val(a) * tail(b)
        bounds = []
        if self.trunc is not None:
            vb = other.valuation()
            if vb is not None:
                bounds.append(self.trunc + vb)
        if other.trunc is not None:
            va = self.valuation()
            if va is not None:
                bounds.append(other.trunc + va)
        t = min(bounds) if bounds else None
        terms: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if t is None or e < t:
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return PuiseuxSeries(self.point, terms, t)

    def truncate(self, bound) -> "PuiseuxSeries":
        bound = Fraction(bound)
        t = bound if self.trunc is None else min(self.trunc, bound)
        return PuiseuxSeries(self.point, {e: c for e, c in self.terms.items() if e < t}, t)

    def derivative(self) -> "PuiseuxSeries":
        """d/dt in the local coordinate."""
        return PuiseuxSeries(self.point,
                             {e - 1: c * e for e, c in self.terms.items() if e},
                             None if self.trunc is None else self.trunc - 1)


def series_from_polynomial(p: Polynomial, point: Point) -> PuiseuxSeries:
    """p(x) expanded at the point (exact; negative exponents at infinity)."""
    if isinstance(point, _Infinity):
        return PuiseuxSeries(INF, {Fraction(-i): p[i] for i in range(p.degree + 1)}, None)
    s = p.shift(point)
    return PuiseuxSeries(point, {Fraction(i): s[i] for i in range(s.degree + 1)}, None)


def laurent_at_zero(f: RationalFunction, upto: Fraction, point: Point = Fraction(0)) -> PuiseuxSeries:
    """Laurent expansion of f(t) at t = 0 with all exponents < upto exact.
    The caller must already have localized f; `point` only labels the result."""
    if f.is_zero():
        return PuiseuxSeries(point, {}, None)
    num, den = f.num, f.den
    vd = 0
    while den[vd] == 0:
        vd += 1
    u = Polynomial(den.coeffs[vd:])
    # invert the unit u up to enough terms: exponents i + n - vd < upto
    n_terms = max(0, math.ceil(upto) + vd - _poly_val(num)) + 1
    inv = [Fraction(1) / u[0]]
    for n in range(1, n_terms):
        s = Fraction(0)
        for k in range(1, min(n, u.degree) + 1):
            s += u[k] * inv[n - k]
        inv.append(-s / u[0])
    terms: dict[Fraction, Fraction] = {}
    for i in range(num.degree + 1):
        if num[i] == 0:
            continue
        for n, c in enumerate(inv):
            e = Fraction(i + n - vd)
            if e < upto:
                terms[e] = terms.get(e, Fraction(0)) + num[i] * c
    return PuiseuxSeries(point, terms, Fraction(upto))


def _poly_val(p: Polynomial) -> int:
    if p.is_zero():
        return 0
    v = 0
    while p[v] == 0:
        v += 1
    return v


# ---------------------------------------------------------------------------
# localization and theta-stratification
# ---------------------------------------------------------------------------

def localize(op: OrePoly, point: Point) -> OrePoly:
    """Move the point to t = 0: x -> x + xi, or x -> 1/t at infinity.
    No rescaling: applying the result at 0 equals applying op at the point,
    so module elements can be localized too."""
    if isinstance(point, _Infinity):
        return transform_infinity_raw(op)
    if point == 0:
        return op
    return translate(op, point)


def _falling_factorials(r: int) -> list[Polynomial]:
    ff = [Polynomial([1])]
    for i in range(r):
        ff.append(ff[-1] * Polynomial([-i, 1]))
    return ff


def theta_strata(op: OrePoly) -> tuple[int, list[Polynomial]]:
    """(u_min, [R_u]) with op = sum_u t^u R_u(theta) for the localized
    operator op; the R list is indexed by u - u_min."""
    prim = primitive_integer_form(op)
    r = prim.order
    ff = _falling_factorials(r)
    strata: dict[int, Polynomial] = {}
    for i in range(r + 1):
        p = prim[i].num
        for k in range(p.degree + 1):
            if p[k] == 0:
                continue
            u = k - i
            strata[u] = strata.get(u, Polynomial()) + p[k] * ff[i]
    u_min = min(strata)
    u_max = max(strata)
    return u_min, [strata.get(u, Polynomial()) for u in range(u_min, u_max + 1)]


def indicial_polynomial(op: OrePoly, point: Point) -> Polynomial:
    """R_{u_min} of the localized operator, primitive integer, positive lead.
    Its degree is ord(op) exactly when the point is regular; its rational
    roots are the candidate starting exponents."""
    if op.is_zero():
        raise ValueError("indicial polynomial of the zero operator")
    loc = localize(op, point)
    _, strata = theta_strata(loc)
    ints, _ = strata[0].primitive_integer()
    return Polynomial(ints)


@dataclass
class PointClassification:
    point: Point
    kind: str                       # one of the five kind constants
    exponents: list[Fraction]       # rational indicial roots, with multiplicity


@dataclass
class LocalBasis:
    point: Point
    kind: str                       # ordinary or puiseux_regular
    solutions: list[PuiseuxSeries]  # full basis, ord(L) series
    exponents: list[Fraction]       # starting exponents (multiset, sorted)
    indicial: Polynomial
    ramification: int = 1


class NotPuiseux(Exception):
    """The point has no full basis of log-free rational-exponent Puiseux
    series; carries the classification saying which way it fails."""

    def __init__(self, classification: PointClassification):
        self.classification = classification
        super().__init__(f"{classification.kind} point {classification.point}")


def _solve_class(strata: list[Polynomial], roots: list[tuple[Fraction, int]],
                 n_max: int) -> tuple[list[tuple[dict[Fraction, Fraction], Fraction]], int]:
    """Log-free solutions for one congruence class of indicial roots
    (pairwise integer differences). Returns ([(terms, trunc)], log-free dim)."""
    rho = min(r for r, _ in roots)
    offsets = {int(r - rho) for r, _ in roots}
    R0 = strata[0]
    U = len(strata) - 1
    nvars = 0
    coeffs: list[list[Fraction]] = []      # c_n as a row over the free variables
    constraints: list[list[Fraction]] = []
    for n in range(n_max + 1):
        rhs = [Fraction(0)] * nvars
        for u in range(1, min(n, U) + 1):
            f = strata[u].eval(rho + n - u)
            if f:
                prev = coeffs[n - u]
                for i, c in enumerate(prev):
                    rhs[i] -= f * c
        a = R0.eval(rho + n)
        if a != 0:
            coeffs.append([c / a for c in rhs])
        else:
            assert n in offsets
            constraints.append(rhs)
            nvars += 1
            coeffs.append([Fraction(0)] * (nvars - 1) + [Fraction(1)])
    padded = [row + [Fraction(0)] * (nvars - len(row)) for row in constraints]
    if padded:
        kernel = QMatrix(padded, nvars).nullspace()
    else:
        kernel = [[Fraction(1 if i == j else 0) for j in range(nvars)] for i in range(nvars)]
    trunc = rho + n_max + 1
    out = []
    for v in kernel:
        terms: dict[Fraction, Fraction] = {}
        for n, cn in enumerate(coeffs):
            val = sum((c * v[i] for i, c in enumerate(cn)), Fraction(0))
            if val:
                terms[rho + n] = val
        out.append((terms, trunc))
    return out, len(kernel)


def _analyze(op: OrePoly, point: Point, nterms: int) -> tuple[PointClassification, LocalBasis | None]:
    r = op.order
    loc = localize(op, point)
    _, strata = theta_strata(loc)
    ints, _ = strata[0].primitive_integer()
    ind = Polynomial(ints)
    rep = rational_roots(ind)
    exps = sorted(root for root, m in rep.roots for _ in range(m))
    if ind.degree < r:
        return PointClassification(point, IRREGULAR, exps), None
    if rep.has_irrational_factor:
        return PointClassification(point, IRRATIONAL_EXPONENT, exps), None
    classes: dict[Fraction, list[tuple[Fraction, int]]] = {}
    for root, mult in rep.roots:
        classes.setdefault(root - math.floor(root), []).append((root, mult))
    max_root = max((root for root, _ in rep.roots), default=Fraction(0))
    solutions: list[PuiseuxSeries] = []
    q = 1
    for key in sorted(classes):
        cls = classes[key]
        rho = min(root for root, _ in cls)
        span = int(max(root for root, _ in cls) - rho)
        n_max = span + nterms + math.ceil(max_root - rho - span)
        raw, dim = _solve_class(strata, cls, n_max)
        if dim < sum(m for _, m in cls):
            return PointClassification(point, LOGARITHMIC, exps), None
        for terms, trunc in raw:
            solutions.append(PuiseuxSeries(point, terms, trunc))
        for root, _ in cls:
            q = q * root.denominator // math.gcd(q, root.denominator)
    solutions.sort(key=lambda s: s.valuation())
    if isinstance(point, _Infinity):
        kind = ORDINARY if exps == [Fraction(i) for i in range(r)] else PUISEUX_REGULAR
    else:
        prim = primitive_integer_form(op)
        kind = ORDINARY if prim.lc.num.eval(point) != 0 else PUISEUX_REGULAR
    basis = LocalBasis(point=point, kind=kind, solutions=solutions,
                       exponents=exps, indicial=ind, ramification=q)
    return PointClassification(point, kind, exps), basis


def classify_point(op: OrePoly, point: Point) -> PointClassification:
    if op.is_zero():
        raise ValueError("cannot classify a point of the zero operator")
    r = op.order
    if not isinstance(point, _Infinity):
        prim = primitive_integer_form(op)
        if prim.lc.num.eval(point) != 0:
            return PointClassification(point, ORDINARY, [Fraction(i) for i in range(r)])
    cls, _ = _analyze(op, point, nterms=max(r, 2))
    return cls


def local_basis(op: OrePoly, point: Point, nterms: int | None = None) -> LocalBasis:
    """Full basis of log-free Puiseux series solutions at an ordinary or
    regular point, each exact for at least nterms coefficient positions
    beyond its start. Raises NotPuiseux otherwise."""
    if op.is_zero():
        raise ValueError("local basis of the zero operator")
    if nterms is None:
        nterms = op.order + 10
    cls, basis = _analyze(op, point, nterms)
    if basis is None:
        raise NotPuiseux(cls)
    return basis


def ordinary_series_basis(op: OrePoly, point: Point, nterms: int | None = None) -> LocalBasis:
    """The power-series basis at an ordinary point, echelon-normalized:
    solution i starts x^i + O(x^r)."""
    basis = local_basis(op, point, nterms)
    if basis.kind != ORDINARY:
        raise ValueError(f"{point} is not an ordinary point")
    return basis


def apply_to_series(op: OrePoly, series: PuiseuxSeries) -> PuiseuxSeries:
    """Image of the series under the operator, applied at the series' point.
    The operator is given in x and D and is localized here; an exact series
    stays exact only under polynomial local coefficients, otherwise the input
    must carry a truncation (the image would be an infinite expansion)."""
    loc = localize(op, series.point)
    poly_coeffs = all(c.is_zero() or c.den.degree == 0 for c in loc.coeffs)
    if series.trunc is None and not poly_coeffs:
        raise ValueError("truncate the series before applying an operator "
                         "with a pole at the point")
    out_trunc = _apply_trunc_bound(loc, series.trunc)
    out = PuiseuxSeries(series.point, {}, out_trunc)
    der = series
    for i, a in enumerate(loc.coeffs):
        if i:
            der = der.derivative()
        if a.is_zero():
            continue
        if out_trunc is None:
            scaled = a.num * (Fraction(1) / a.den[0])
            lau = PuiseuxSeries(series.point,
                                {Fraction(k): scaled[k]
                                 for k in range(scaled.degree + 1)}, None)
        else:
            v = der.valuation()
            if v is None:
                continue
            lau = laurent_at_zero(a, out_trunc - v, series.point)
        out = out + lau * der
    return out


def _apply_trunc_bound(loc: OrePoly, base: Fraction | None) -> Fraction | None:
    if base is None:
        return None
    shifts = []
    for i, a in enumerate(loc.coeffs):
        if a.is_zero():
            continue
        shifts.append(a.valuation_at(Fraction(0)) - i)
    if not shifts:
        return base
    return base + min(shifts)
