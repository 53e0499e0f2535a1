"""Rational and algebraic solutions of linear differential operators.

rational_solutions finds the full Q-basis of V(L) ∩ Q(x) by the classical
valuation-bound method: at every finite point the valuation of a rational
solution is an integer root of the local indicial polynomial, so a denominator
bound can be read off the most negative such root per singularity; clearing it
reduces the problem to polynomial solutions, whose degree is bounded the same
way at infinity.

Irrational singularities never get expanded: per squarefree factor f of the
lead coefficient the integer indicial roots at the (conjugate) roots of f are
exactly the integer roots of the lambda-resultant Res_x(f, I(lambda, x)),
where I is the indicial polynomial at a symbolic root of f.
"""

from fractions import Fraction

from .algebra import (
    INF,
    P_ONE,
    Polynomial,
    RationalFunction,
    integer_roots,
    nullspace,
    poly,
    rational_roots,
)
from .localsolve import indicial_polynomial
from .ore import OrePoly, ore_mul, primitive_integer_form

_F0 = Fraction(0)


def _falling_factorial_poly(i: int) -> Polynomial:
    # lambda (lambda-1) ... (lambda-i+1)
    out = P_ONE
    for t in range(i):
        out = out * poly(-t, 1)
    return out


def _multiplicity(a: Polynomial, f: Polynomial) -> tuple[int, Polynomial]:
    """Largest m with f^m | a, plus the cofactor a / f^m."""
    m = 0
    while True:
        q, r = a.divmod(f)
        if not r.is_zero():
            return m, a
        a, m = q, m + 1


def _uniform_parts(f: Polynomial, coeffs: list[Polynomial]) -> list[Polynomial]:
    """Split squarefree f into factors whose roots all see the same
    multiplicity in every coefficient (so the symbolic indicial polynomial
    below has nonvanishing data at every root of each part)."""
    parts = [f]
    done = False
    while not done:
        done = True
        refined: list[Polynomial] = []
        for part in parts:
            split = None
            for a in coeffs:
                if a.is_zero():
                    continue
                _, cof = _multiplicity(a, part)
                g = part.gcd(cof)
                if 0 < g.degree < part.degree:
                    q, r = part.divmod(g)
                    assert r.is_zero()
                    split = (g.monic(), q.monic())
                    break
            if split is None:
                refined.append(part)
            else:
                refined.extend(split)
                done = False
        parts = refined
    return parts


def _symbolic_indicial(part: Polynomial, coeffs: list[Polynomial]) -> list[Polynomial]:
    """Indicial polynomial at a symbolic root of `part`, as x-coefficient
    list of lambda-polynomials (entries reduced mod part)."""
    data = []
    v = None
    for i, a in enumerate(coeffs):
        if a.is_zero():
            continue
        m, cof = _multiplicity(a, part)
        data.append((i, m, cof))
        v = m - i if v is None else min(v, m - i)
    fprime = part.derivative()
    xdeg = part.degree
    lam: list[Polynomial] = [Polynomial() for _ in range(xdeg)]
    for i, m, cof in data:
        if m - i != v:
            continue
        b = cof
        for _ in range(m):
            b = b * fprime
        _, b = b.divmod(part)
        ff = _falling_factorial_poly(i)
        for j in range(b.degree + 1):
            if b[j]:
                lam[j] = lam[j] + ff * b[j]
    return lam


def _integer_roots_at_part(part: Polynomial, coeffs: list[Polynomial]) -> list[int]:
    """All integers that occur as indicial roots at some root of `part`."""
    lam = _symbolic_indicial(part, coeffs)
    d_nom = max(j for j, c in enumerate(lam) if not c.is_zero())
    lam_deg = max(c.degree for c in lam if not c.is_zero())
    npoints = part.degree * lam_deg + 1
    pts: list[tuple[Fraction, Fraction]] = []
    x0 = 0
    while len(pts) < npoints:
        top = lam[d_nom].eval(x0)
        if top != 0 or lam_deg == 0:
            b0 = Polynomial([lam[j].eval(x0) for j in range(d_nom + 1)])
            pts.append((Fraction(x0), part.resultant(b0)))
        x0 += 1
    nres = Polynomial.interpolate(pts)
    assert not nres.is_zero()
    out = []
    for n, _ in integer_roots(nres):
        b = Polynomial([lam[j].eval(n) for j in range(d_nom + 1)])
        if part.gcd(b).degree > 0:
            out.append(n)
    return out


def _denominator_bound(L: OrePoly, support: Polynomial) -> Polynomial:
    """Polynomial q with den(y) | q for every rational solution y whose
    finite poles lie among the roots of `support`. A zero return means some
    singularity admits no integer valuation at all, so the only rational
    solution is 0."""
    coeffs = [c.num for c in L.coeffs]
    lead = coeffs[-1]
    den = P_ONE
    sf = support.squarefree_part()
    report = rational_roots(sf)
    cof = sf
    for xi, _ in report.roots:
        q, r = cof.divmod(poly(-xi, 1))
        assert r.is_zero()
        cof = q
        if lead.eval(xi) != 0:
            continue                      # ordinary point: no pole possible
        ints = [n for n, _ in integer_roots(indicial_polynomial(L, xi))]
        if not ints:
            return Polynomial()           # valuation has no integer option
        worst = min(ints)
        if worst < 0:
            den = den * poly(-xi, 1) ** (-worst)
    if cof.degree > 0:
        for part in _uniform_parts(cof.monic(), coeffs):
            ints = _integer_roots_at_part(part, coeffs)
            if not ints:
                return Polynomial()
            worst = min(ints)
            if worst < 0:
                den = den * part ** (-worst)
    return den


def rational_solutions(L: OrePoly, pole_support: Polynomial | None = None) -> list[RationalFunction]:
    """Q-basis of the rational-function solutions of L.

    pole_support, when given, must be a polynomial whose roots contain every
    finite pole of every rational solution (e.g. the lead coefficient of a
    base operator when L is one of its symmetric powers); it defaults to the
    lead coefficient of L itself.
    """
    if L.is_zero():
        raise ValueError("rational solutions of the zero operator")
    L = primitive_integer_form(L)
    if L.order == 0:
        return []
    lead = L.coeffs[-1].num
    support = pole_support if pole_support is not None else lead
    den = _denominator_bound(L, support)
    if den.is_zero():
        return []
    if den.degree > 0:
        M = primitive_integer_form(ore_mul(L, OrePoly([RationalFunction(P_ONE, den)])))
    else:
        M = L
    # polynomial degree bound: deg N appears at infinity as exponent -N
    cands = [-n for n, _ in integer_roots(indicial_polynomial(M, INF)) if n <= 0]
    if not cands:
        return []
    ndeg = max(cands)
    mco = [c.num for c in M.coeffs]
    rows: dict[int, list[Fraction]] = {}
    for k in range(ndeg + 1):
        ff = 1
        for i, a in enumerate(mco):
            if i > k:
                break
            if not a.is_zero() and ff:
                for j in range(a.degree + 1):
                    if a[j]:
                        row = rows.setdefault(k - i + j, [_F0] * (ndeg + 1))
                        row[k] += ff * a[j]
            ff *= k - i
    basis = nullspace([rows[p] for p in sorted(rows)], ncols=ndeg + 1)
    out = []
    for vec in basis:
        z = Polynomial(vec)
        out.append(RationalFunction(z, den))
    return out
