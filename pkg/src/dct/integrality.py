"""The quotient module K[D]/<L>: classes [P]_L, integrality, constants.

A class is integral at a point when P maps every local Puiseux solution of L
to a series with nonnegative starting exponent. Verdicts here are exact: the
images of a local basis are brought to echelon form over the exponents, and
the echelon pivot valuations are invariants of the whole solution space, so
no basis-dependent cancellation can fool the check in either direction.

Constants ([P] with D[P] = 0) come from rational solutions of the adjoint:
DP = qL forces q into V(adjoint(L)) and determines P by back-substitution
from the top coefficient; the single compatibility defect left at the bottom
is linear in q, so the constants correspond to the kernel of that defect on
the rational solution space.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import INF, Point, Polynomial, RationalFunction, nullspace, poly, rational_roots
from .localsolve import NotPuiseux, apply_to_series, classify_point, local_basis
from .ore import D_OP, OrePoly, adjoint, right_divmod, singular_support

_F0 = Fraction(0)


@dataclass(frozen=True)
class ModClass:
    """Canonical representative of [rep]_modulus, with ord(rep) < ord(modulus)."""
    modulus: OrePoly
    rep: OrePoly

    def is_zero(self) -> bool:
        return self.rep.is_zero()


@dataclass(frozen=True)
class PointIntegrality:
    integral: bool
    worst_valuation: Fraction
    witness_solution_index: int


@dataclass(frozen=True)
class IntegralityReport:
    cls: ModClass
    per_point: dict
    completely_integral: bool


@dataclass(frozen=True)
class ConstantSpace:
    modulus: OrePoly
    basis: list            # (P: OrePoly, q: RationalFunction) with D*P = q*L


def reduce(P: OrePoly, L: OrePoly) -> ModClass:
    if L.is_zero():
        raise ValueError("zero modulus")
    _, rem = right_divmod(P, L)
    return ModClass(L, rem)


def is_constant(c: ModClass) -> bool:
    return reduce(D_OP * c.rep, c.modulus).is_zero()


def _pole_order(f: RationalFunction, point: Point) -> int:
    if point is INF:
        return max(0, f.num.degree - f.den.degree)
    n = 0
    d = f.den
    lin = poly(-point, 1)
    while True:
        q, r = d.divmod(lin)
        if not r.is_zero():
            return n
        d, n = q, n + 1


def _echelon_pivots(images: list) -> tuple[list[tuple[Fraction, int]], list]:
    """Reduce truncated series against each other by leading exponent.
    Returns (pivots as (valuation, original index)), plus rows that became
    zero to their window."""
    work = list(enumerate(images))
    pivots: list[tuple[Fraction, int]] = []
    exhausted = []
    while True:
        best = None
        for idx, s in work:
            if s.terms:
                v = min(s.terms)
                if best is None or v < best[0]:
                    best = (v, idx, s)
        if best is None:
            exhausted = [s for _, s in work]
            break
        v, idx, piv = best
        pivots.append((v, idx))
        c0 = piv.coeff(v)
        nxt = []
        for jdx, s in work:
            if jdx == idx:
                continue
            cv = s.coeff(v)
            if cv:
                s = s - piv.scale(cv / c0)
            nxt.append((jdx, s))
        work = nxt
    return pivots, exhausted


def local_integrality(c: ModClass, point: Point, guard: int = 5) -> tuple[bool, Fraction, int]:
    """(integral, worst valuation over the solution space, witness index).

    The witness index refers to the local basis ordering; -1 means the
    representative annihilates the whole basis to the examined window.
    guard widens the initial expansion window; the verdict must not depend
    on it, only the number of internal retries may."""
    if c.rep.is_zero():
        return True, _F0, -1
    cls = classify_point(c.modulus, point)
    if cls.kind not in ("ordinary", "puiseux_regular"):
        raise NotPuiseux(cls)
    low = min(cls.exponents)
    pole = max(_pole_order(f, point) for f in c.rep.coeffs)
    window = math.ceil(abs(low)) + c.rep.order + pole + guard
    for _ in range(6):
        basis = local_basis(c.modulus, point, nterms=window)
        images = [apply_to_series(c.rep, f) for f in basis.solutions]
        pivots, exhausted = _echelon_pivots(images)
        ok = all(s.trunc is not None and s.trunc > 0 for s in exhausted)
        if pivots:
            worst, widx = min(pivots)
            if worst < 0:
                return False, worst, widx        # witnessed, exact
            if ok:
                return True, worst, widx
        elif ok:
            return True, _F0, -1
        window *= 2
    raise ArithmeticError(f"integrality window exhausted at {point}")


def _rep_pole_points(rep: OrePoly) -> list[Fraction]:
    out = set()
    for f in rep.coeffs:
        if f.den.degree > 0:
            report = rational_roots(f.den)
            if report.has_irrational_factor:
                raise ValueError("representative has an irrational pole; "
                                 "cannot enumerate check points exactly")
            out.update(xi for xi, _ in report.roots)
    return sorted(out)


def _check_points(c: ModClass, base: OrePoly | None) -> list[Point]:
    ref = base if base is not None else c.modulus
    finite, _ = singular_support(ref)
    lead = ref.coeffs[-1].num
    stripped = lead
    for xi, m in rational_roots(lead).roots:
        for _ in range(m):
            stripped, _ = stripped.divmod(poly(-xi, 1))
    if stripped.degree > 0:
        raise ValueError("operator has irrational singularities; pass a base "
                         "operator whose singularities cover the solution poles")
    pts = sorted(set(finite) | set(_rep_pole_points(c.rep)))
    return pts + [INF]


def complete_integrality(c: ModClass, base: OrePoly | None = None,
                         guard: int = 5) -> IntegralityReport:
    """Check integrality at every singularity, every representative pole,
    and infinity.

    base, when given, must be an operator whose solutions generate those of
    c.modulus multiplicatively (a symmetric-power or lclm source): solutions
    are then analytic away from sing(base), so only those points plus the
    representative's poles can break integrality.
    """
    per = {}
    ok = True
    for pt in _check_points(c, base):
        flag, worst, widx = local_integrality(c, pt, guard=guard)
        per[pt] = PointIntegrality(flag, worst, widx)
        ok = ok and flag
    return IntegralityReport(c, per, ok)


def is_pseudoconstant(c: ModClass, base: OrePoly | None = None,
                      guard: int = 5) -> bool:
    if c.rep.is_zero() or is_constant(c):
        return False
    return complete_integrality(c, base, guard=guard).completely_integral


def constant_space(L: OrePoly) -> ConstantSpace:
    """All constants of order < ord(L), as (P, q) pairs with D*P = q*L."""
    if L.is_zero():
        raise ValueError("constant space of the zero operator")
    from .algsols import rational_solutions
    r = L.order
    qs = rational_solutions(adjoint(L))
    if not qs or r == 0:
        return ConstantSpace(L, [])
    built = []           # (p-coefficients, defect) per rational solution q
    for q in qs:
        a = [q * L[i] for i in range(r + 1)]
        p = [None] * r
        p[r - 1] = a[r]
        for j in range(r - 1, 0, -1):
            p[j - 1] = a[j] - p[j].derivative()
        built.append((p, p[0].derivative() - a[0]))
    # the defect is linear in q: keep the kernel combinations
    den = Polynomial([1])
    for _, d in built:
        den = den * d.den if d else den
    rows: dict[int, list[Fraction]] = {}
    for i, (_, d) in enumerate(built):
        dd = d * RationalFunction(den)
        assert dd.den.degree == 0
        pnum = dd.num * (1 / dd.den[0])
        for j in range(pnum.degree + 1):
            if pnum[j]:
                rows.setdefault(j, [_F0] * len(built))[i] = pnum[j]
    kernel = nullspace([rows[j] for j in sorted(rows)], ncols=len(built))
    basis = []
    for vec in kernel:
        pacc = [RationalFunction(Polynomial()) for _ in range(r)]
        qacc = RationalFunction(Polynomial())
        for lam, (p, _), q in zip(vec, built, qs):
            if lam:
                qacc = qacc + lam * q
                for j in range(r):
                    pacc[j] = pacc[j] + lam * p[j]
        P = OrePoly(pacc)
        if not P.is_zero():
            basis.append((P, qacc))
    return ConstantSpace(L, basis)
