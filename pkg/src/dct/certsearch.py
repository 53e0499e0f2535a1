"""Searches for transcendence certificates.

Three certificate families, in increasing cost:

  * singular structure: a logarithmic, irregular, or irrational-exponent
    point already forces a transcendental solution, no algebra needed;
  * monomial pseudoconstants of a symmetric power, found by enumerating the
    integer points of a small polytope cut out by the minimal local
    exponents;
  * general pseudoconstants from a linear ansatz with a prescribed
    denominator, found as the nullspace of the "no negative exponents in
    any image" conditions.

An order-growth probe over symmetric powers is also provided; it is a
heuristic signal only, never a proof in either direction.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    INF,
    P_ONE,
    Point,
    Polynomial,
    RationalFunction,
    _Infinity,
    nullspace,
    poly,
    rational_roots,
)
from .integrality import (
    ModClass,
    complete_integrality,
    constant_space,
    is_constant,
    is_pseudoconstant,
    reduce,
)
from .localsolve import (
    IRRATIONAL_EXPONENT,
    IRREGULAR,
    LOGARITHMIC,
    ORDINARY,
    PUISEUX_REGULAR,
    NotPuiseux,
    classify_point,
    indicial_polynomial,
    laurent_at_zero,
    local_basis,
    series_from_polynomial,
)
from .ore import OrePoly, lclm, right_divmod, singular_support, symmetric_power, symmetric_power_order

PSEUDOCONSTANT = "pseudoconstant"
SYMPOW_PSEUDOCONSTANT = "sympow_pseudoconstant"
SINGULAR_STRUCTURE = "singular_structure"

CONSISTENT_WITH_LINEAR = "consistent_with_linear"
SUPERLINEAR = "superlinear"
INCONCLUSIVE = "inconclusive"

_PUISEUX_KINDS = (ORDINARY, PUISEUX_REGULAR)
_STRUCTURE_KINDS = (LOGARITHMIC, IRREGULAR, IRRATIONAL_EXPONENT)


@dataclass(frozen=True)
class AnsatzConfig:
    """Knobs for the denominator-bound ansatz.

    denom_bounds overrides the per-singularity denominator degree; guard
    widens every local expansion window; each escalation doubles all
    bounds and retries."""
    denom_bounds: dict | None = None
    guard: int = 5
    max_escalations: int = 2


@dataclass
class Certificate:
    kind: str
    operator: OrePoly
    s: int = 1
    P: OrePoly | None = None
    point: Point | None = None
    classification: str | None = None
    exponent_tables: dict = field(default_factory=dict)
    # integer point count of the monomial polytope per examined power;
    # populated by the monomial-driven searches, not part of the JSON form
    polytope_counts: dict | None = None


@dataclass(frozen=True)
class GrowthProbe:
    orders: tuple           # ((s, ord of the s-th symmetric power), ...)
    classification: str


def _min_rational_exponent(op: OrePoly, pt: Point) -> Fraction | None:
    rep = rational_roots(indicial_polynomial(op, pt))
    if not rep.roots:
        return None
    return min(r for r, _ in rep.roots)


def _exponent_tables(L: OrePoly, sings: list) -> dict:
    out = {}
    for pt in [*sings, INF]:
        out[pt] = tuple(classify_point(L, pt).exponents)
    return out


def clearing_factor(L: OrePoly) -> Polynomial:
    """The smallest u in Q[x] with [u] integral at every finite singularity:
    a factor (x - xi)^ceil(-e) for each point whose minimal exponent e is
    negative."""
    sings, _ = singular_support(L)
    u = P_ONE
    for xi in sorted(sings):
        cls = classify_point(L, xi)
        if cls.kind not in _PUISEUX_KINDS:
            raise NotPuiseux(cls)
        k = max(0, math.ceil(-min(cls.exponents)))
        if k:
            u = u * poly(-xi, 1) ** k
    return u


# ---------------------------------------------------------------------------
# the linear ansatz
# ---------------------------------------------------------------------------
# Candidates are q = u/prod (x-xi)^{N_i} * sum c_{i,j} x^i D^j with
# 0 <= i <= N = sum N_i and j < ord(L). Applying q to every local basis
# element at every singularity and at infinity and forbidding negative
# exponents is a finite linear system in the c_{i,j}; its nullspace, taken
# modulo the constants, is the certificate candidate space. Every survivor
# is re-verified from scratch before it is returned.


def ansatz_search(L: OrePoly, cfg: AnsatzConfig | None = None,
                  base: OrePoly | None = None) -> list[ModClass]:
    """Pseudoconstant classes of L found at the configured denominator
    bounds, linearly independent modulo constants. An empty result means
    none at these bounds, not nonexistence.

    base, when given, names the operator whose singularities carry the
    integrality conditions (for symmetric powers, the original operator);
    it is passed through to the final verification."""
    if L.is_zero():
        raise ValueError("ansatz over the zero operator")
    if cfg is None:
        cfg = AnsatzConfig()
    ref = base if base is not None else L
    sings = sorted(singular_support(ref)[0])
    cls = {}
    for pt in [*sings, INF]:
        c = classify_point(L, pt)
        if c.kind not in _PUISEUX_KINDS:
            raise NotPuiseux(c)
        cls[pt] = c
    r = L.order
    u = P_ONE
    bounds = {}
    for xi in sings:
        k = max(0, math.ceil(-min(cls[xi].exponents)))
        if k:
            u = u * poly(-xi, 1) ** k
        if cfg.denom_bounds is not None and xi in cfg.denom_bounds:
            n = cfg.denom_bounds[xi]
            if n < 0:
                raise ValueError("denominator bounds must be nonnegative")
        else:
            n = r * (1 + k)
        bounds[xi] = n
    for esc in range(cfg.max_escalations + 1):
        scaled = {xi: n * 2 ** esc for xi, n in bounds.items()}
        found = _ansatz_at_bounds(L, base, sings, cls, u, scaled, cfg.guard)
        if found:
            return found
    return []


def _ansatz_at_bounds(L, base, sings, cls, u, bounds, guard):
    r = L.order
    den = P_ONE
    for xi in sings:
        den = den * poly(-xi, 1) ** bounds[xi]
    G = RationalFunction(u, den)
    N = sum(bounds.values())
    ncols = (N + 1) * r
    rows = []
    for pt in [*sings, INF]:
        rows.extend(_point_rows(L, pt, cls[pt], G, N, guard))
    if rows:
        vecs = nullspace(rows, ncols)
    else:
        vecs = [[Fraction(i == j) for j in range(ncols)] for i in range(ncols)]
    cands = []
    for v in vecs:
        coeffs = [G * RationalFunction(Polynomial(v[j * (N + 1):(j + 1) * (N + 1)]))
                  for j in range(r)]
        P = OrePoly(coeffs)
        if not P.is_zero():
            cands.append(P)
    if not cands:
        return []
    consts = [P for P, _ in constant_space(L).basis]
    out = []
    for P in _independent_mod(cands, consts, r):
        c = reduce(P, L)
        try:
            if is_pseudoconstant(c, base=base):
                out.append(reduce(_canonical_rep(c.rep), L))
        except ValueError:
            # unverifiable (a pole position outside Q): never certified
            continue
    return out


def _point_rows(L, pt, cls_pt, G, N, guard):
    """Constraint rows at one point: coefficient of every negative local
    exponent, in every image of a local basis element, must vanish."""
    r = L.order
    e_min = min(cls_pt.exponents)
    gloc = _localize_rf(G, pt)
    v_g = gloc.valuation_at(Fraction(0))
    reach = N if isinstance(pt, _Infinity) else r - 1
    W = r + guard + max(0, math.ceil(reach - e_min - v_g))
    U = r + guard + max(0, math.ceil(reach - e_min))
    xser = series_from_polynomial(poly(0, 1), pt)
    for _ in range(5):
        basis = local_basis(L, pt, nterms=W)
        gser = laurent_at_zero(gloc, Fraction(v_g + U), pt)
        rows, ok = _expand_rows(basis, gser, xser, pt, N, r)
        if ok:
            return rows
        W *= 2
        U *= 2
    raise RuntimeError(f"expansion windows at {pt} failed to stabilize")


def _expand_rows(basis, gser, xser, pt, N, r):
    ncols = (N + 1) * r
    rows = []
    for f in basis.solutions:
        rowmap = {}
        der = f
        for j in range(r):
            if j:
                der = _dx(der, pt)
            cur = gser * der
            for i in range(N + 1):
                if i:
                    cur = cur * xser
                if cur.trunc is not None and cur.trunc <= 0:
                    return [], False
                col = j * (N + 1) + i
                for e, cv in cur.terms.items():
                    if e < 0:
                        row = rowmap.setdefault(e, [Fraction(0)] * ncols)
                        row[col] += cv
        rows.extend(row for _, row in sorted(rowmap.items()))
    return rows, True


def _dx(s, pt):
    # d/dx in the local chart; at infinity x = 1/t gives d/dx = -t^2 d/dt
    d = s.derivative()
    if isinstance(pt, _Infinity):
        return d.shift_exponents(2).scale(-1)
    return d


def _localize_rf(f: RationalFunction, pt: Point) -> RationalFunction:
    if isinstance(pt, _Infinity):
        m = max(f.num.degree, f.den.degree)
        return RationalFunction(_reversed_poly(f.num, m), _reversed_poly(f.den, m))
    return RationalFunction(f.num.shift(pt), f.den.shift(pt))


def _reversed_poly(p: Polynomial, m: int) -> Polynomial:
    out = [Fraction(0)] * (m + 1)
    for i in range(p.degree + 1):
        out[m - i] = p[i]
    return Polynomial(out)


def _poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    g = a.gcd(b)
    return a * b.divmod(g)[0]


def _independent_mod(cands, consts, r):
    """The candidates that survive Gaussian elimination after the constant
    classes have claimed their pivots; reductions are mirrored on the
    operators so each survivor is an actual class representative."""
    ops = [*consts, *cands]
    den = P_ONE
    for P in ops:
        for c in P.coeffs:
            den = _poly_lcm(den, c.den)
    cleared = []
    width = 1
    for P in ops:
        ps = []
        for j in range(r):
            c = P.coeffs[j] if j < len(P.coeffs) else RationalFunction(0)
            p = c.num * den.divmod(c.den)[0]
            ps.append(p)
            width = max(width, p.degree + 1)
        cleared.append(ps)
    pivots = []
    out = []
    for idx, (ps, P) in enumerate(zip(cleared, ops)):
        v = [ps[j][k] for j in range(r) for k in range(width)]
        op = P
        for pc, pv, pop in pivots:
            if v[pc]:
                lam = v[pc] / pv[pc]
                v = [a - lam * b for a, b in zip(v, pv)]
                op = op - lam * pop
        pc = next((k for k, a in enumerate(v) if a), None)
        if pc is None:
            continue
        pivots.append((pc, v, op))
        if idx >= len(consts):
            out.append(op)
    return out


def _canonical_rep(P: OrePoly) -> OrePoly:
    """Scale so the highest-order coefficient has a primitive integer
    numerator with positive leading coefficient."""
    _, scale = P.coeffs[P.order].num.primitive_integer()
    return (Fraction(1) / scale) * P


# ---------------------------------------------------------------------------
# monomial search over symmetric powers
# ---------------------------------------------------------------------------
# For P = prod (x-xi)^{a_i}, integrality of [P] mod the s-th symmetric power
# reads a_i + e_i(s) >= 0 at each finite singularity and
# e_inf(s) - sum a_i >= 0 at infinity, where e is the minimal local
# exponent. The integer points of that polytope are the candidates.


def _polytope_box(Ls, sings):
    exps = [_min_rational_exponent(Ls, xi) for xi in sings]
    e_inf = _min_rational_exponent(Ls, INF)
    if e_inf is None or any(e is None for e in exps):
        return None
    return [math.ceil(-e) for e in exps], math.floor(e_inf)


def _polytope_points(lows, cap):
    """Integer points with a_i >= lows[i] and sum a_i <= cap, lexicographic."""
    m = len(lows)
    pts = []

    def rec(prefix, total):
        k = len(prefix)
        if k == m:
            pts.append(tuple(prefix))
            return
        for a in range(lows[k], cap - total - sum(lows[k + 1:]) + 1):
            rec(prefix + [a], total + a)

    if sum(lows) <= cap:
        rec([], 0)
    return pts


def _monomial_candidate(sings, a) -> RationalFunction:
    num = P_ONE
    den = P_ONE
    for xi, ai in zip(sings, a):
        if ai > 0:
            num = num * poly(-xi, 1) ** ai
        elif ai < 0:
            den = den * poly(-xi, 1) ** (-ai)
    return RationalFunction(num, den)


def _monomial_step(L, Ls, sings):
    box = _polytope_box(Ls, sings)
    if box is None:
        return 0, None
    lows, cap = box
    points = _polytope_points(lows, cap)
    for a in points:
        c = reduce(OrePoly([_monomial_candidate(sings, a)]), Ls)
        try:
            if is_pseudoconstant(c, base=L):
                return len(points), c
        except ValueError:
            continue
    return len(points), None


def polytope_counts(L: OrePoly, s_max: int) -> dict:
    """Integer point counts of the monomial polytope for s = 1..s_max,
    with no integrality checks run."""
    sings = sorted(singular_support(L)[0])
    out = {}
    for s in range(1, s_max + 1):
        Ls = L if s == 1 else symmetric_power(L, s)
        box = _polytope_box(Ls, sings)
        out[s] = 0 if box is None else len(_polytope_points(*box))
    return out


def monomial_search(L: OrePoly, s_max: int) -> Certificate | None:
    """First monomial pseudoconstant over the symmetric powers up to s_max,
    smallest power first, candidates in lexicographic order."""
    if s_max < 1:
        raise ValueError("s_max must be positive")
    sings = sorted(singular_support(L)[0])
    counts = {}
    for s in range(1, s_max + 1):
        Ls = L if s == 1 else symmetric_power(L, s)
        count, hit = _monomial_step(L, Ls, sings)
        counts[s] = count
        if hit is not None:
            return Certificate(
                kind=PSEUDOCONSTANT if s == 1 else SYMPOW_PSEUDOCONSTANT,
                operator=L, s=s, P=_canonical_rep(hit.rep),
                exponent_tables=_exponent_tables(L, sings),
                polytope_counts=dict(counts))
    return None


def sympow_pseudoconstant_search(L: OrePoly, s_max: int,
                                 cfg: AnsatzConfig | None = None) -> Certificate | None:
    """Pseudoconstant search over L and its symmetric powers up to s_max:
    per power, the cheap monomial step first, then the full ansatz."""
    if s_max < 1:
        raise ValueError("s_max must be positive")
    if cfg is None:
        cfg = AnsatzConfig()
    sings = sorted(singular_support(L)[0])
    counts = {}
    for s in range(1, s_max + 1):
        Ls = L if s == 1 else symmetric_power(L, s)
        count, hit = _monomial_step(L, Ls, sings)
        counts[s] = count
        rep = hit.rep if hit is not None else None
        if rep is None:
            classes = ansatz_search(Ls, cfg, base=L)
            if classes:
                rep = classes[0].rep
        if rep is not None:
            return Certificate(
                kind=PSEUDOCONSTANT if s == 1 else SYMPOW_PSEUDOCONSTANT,
                operator=L, s=s, P=_canonical_rep(rep),
                exponent_tables=_exponent_tables(L, sings),
                polytope_counts=dict(counts))
    return None


def singularity_certificate(L: OrePoly) -> Certificate | None:
    """A singular-structure certificate at the first point (finite points
    in ascending order, then infinity) that is logarithmic, irregular, or
    has an irrational exponent; none when every point has a full Puiseux
    basis."""
    sings = sorted(singular_support(L)[0])
    for pt in [*sings, INF]:
        cls = classify_point(L, pt)
        if cls.kind in _STRUCTURE_KINDS:
            return Certificate(
                kind=SINGULAR_STRUCTURE, operator=L, s=1, point=pt,
                classification=cls.kind,
                exponent_tables=_exponent_tables(L, sings))
    return None


def growth_probe(L: OrePoly, s_max: int, adjoin_polynomials: bool = False) -> GrowthProbe:
    """Orders of the symmetric powers up to s_max and a crude reading of
    their growth. Not a proof: a finite prefix never settles the
    linear-versus-quadratic dichotomy."""
    if s_max < 2:
        raise ValueError("need at least two powers to probe growth")
    M = L
    if adjoin_polynomials:
        d2 = OrePoly([0, 0, 1])
        if not right_divmod(L, d2)[1].is_zero():
            M = lclm(L, d2)
    orders = tuple((s, M.order if s == 1 else symmetric_power_order(M, s))
                   for s in range(1, s_max + 1))
    return GrowthProbe(orders, _classify_growth([o for _, o in orders]))


def _classify_growth(o):
    d2 = [o[i + 2] - 2 * o[i + 1] + o[i] for i in range(len(o) - 2)]
    if not d2:
        return INCONCLUSIVE
    if d2[-1] == 0:
        return CONSISTENT_WITH_LINEAR
    if d2[-1] > 0 and (len(d2) == 1 or d2[-2] > 0):
        return SUPERLINEAR
    return INCONCLUSIVE


def verify_certificate(c: Certificate) -> bool:
    """Independent re-check of a certificate from scratch, with widened
    truncation guards. Malformed certificates raise; well-formed ones
    whose claim fails return False."""
    if not isinstance(c, Certificate):
        raise ValueError("not a certificate")
    if c.kind == SINGULAR_STRUCTURE:
        if c.point is None or c.classification not in _STRUCTURE_KINDS:
            raise ValueError("malformed singular-structure certificate")
        return classify_point(c.operator, c.point).kind == c.classification
    if c.kind in (PSEUDOCONSTANT, SYMPOW_PSEUDOCONSTANT):
        if c.P is None or c.s < 1:
            raise ValueError("malformed pseudoconstant certificate")
        if c.kind == PSEUDOCONSTANT and c.s != 1:
            raise ValueError("plain pseudoconstant must have s = 1")
        Ls = c.operator if c.s == 1 else symmetric_power(c.operator, c.s)
        cl = reduce(c.P, Ls)
        if cl.is_zero() or is_constant(cl):
            return False
        try:
            return complete_integrality(cl, base=c.operator,
                                        guard=10).completely_integral
        except (ValueError, NotPuiseux):
            return False
    raise ValueError(f"unknown certificate kind {c.kind!r}")
