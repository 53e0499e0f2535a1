"""The Ore algebra Q(x)[D] of linear differential operators, D = d/dx.

Multiplication is composition: (A*B)(y) = A(B(y)), governed by the
commutation rule D*a = a*D + a'. Coefficients are RationalFunction; the
zero operator has order -1.

Least common left multiples, symmetric products and symmetric powers are
all computed the same way: set up the finite-dimensional Q(x)-module the
construction lives in, stream the derivatives of the defining element as
integer polynomial vectors, and take the first linear dependence
(see dct._lindep). Symmetric powers use the multiset module directly, not
iterated binary products, so the result is the minimal annihilator of the
s-th power of a generic solution.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _lindep
from .algebra import (
    P_ONE,
    Polynomial,
    Rational,
    RationalFunction,
    RF_ONE,
    RF_ZERO,
    _as_ratfun,
    _zx_add,
    _zx_deriv,
    _zx_divmod,
    _zx_gcd,
    _zx_mul,
    _zx_norm,
    _zx_primitive,
    _zx_scale,
    rational_roots,
)


class OrePoly:
    """Operator sum a_i(x) D^i; index = power of D. Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            r = _as_ratfun(c)
            if r is NotImplemented:
                raise TypeError(f"bad operator coefficient {c!r}")
            cs.append(r)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("OrePoly is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> RationalFunction:
        return self.coeffs[-1] if self.coeffs else RF_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> RationalFunction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RF_ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, OrePoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"OrePoly({list(self.coeffs)!r})"

    def __add__(self, other: "OrePoly") -> "OrePoly":
        if not isinstance(other, OrePoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly(out)

    def __neg__(self) -> "OrePoly":
        return OrePoly([-c for c in self.coeffs])

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "OrePoly":
        if isinstance(other, OrePoly):
            return ore_mul(self, other)
        return NotImplemented

    def __rmul__(self, other) -> "OrePoly":
        # function * operator is plain coefficient scaling
        f = _as_ratfun(other)
        if f is NotImplemented:
            return NotImplemented
        return OrePoly([f * c for c in self.coeffs])

    def apply(self, f) -> RationalFunction:
        f = _as_ratfun(f)
        out = RF_ZERO
        for a in self.coeffs:
            if a:
                out = out + a * f
            f = f.derivative()
        return out

    __call__ = apply


D_OP = OrePoly([0, 1])


def _d_compose(coeffs: list[RationalFunction]) -> list[RationalFunction]:
    # coefficient list of D * (sum c_j D^j)
    out = [c.derivative() for c in coeffs] + [RF_ZERO]
    for j, c in enumerate(coeffs):
        out[j + 1] = out[j + 1] + c
    return out


def ore_mul(a: OrePoly, b: OrePoly) -> OrePoly:
    if a.is_zero() or b.is_zero():
        return OrePoly()
    cur = list(b.coeffs)
    out = [RF_ZERO] * (a.order + b.order + 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, c in enumerate(cur):
                out[j] = out[j] + ai * c
        if i < a.order:
            cur = _d_compose(cur)
    return OrePoly(out)


def adjoint(a: OrePoly) -> OrePoly:
    """Formal adjoint: D |-> -D, coefficients move to the right.
    Satisfies (A*B)^adj = B^adj * A^adj and (A^adj)^adj = A."""
    out = OrePoly()
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        term = [ai]
        for _ in range(i):
            term = _d_compose(term)
        if i & 1:
            term = [-c for c in term]
        out = out + OrePoly(term)
    return out


def right_divmod(a: OrePoly, b: OrePoly) -> tuple[OrePoly, OrePoly]:
    """(q, r) with a = q*b + r and ord(r) < ord(b)."""
    if b.is_zero():
        raise ZeroDivisionError("right division by the zero operator")
    r = list(a.coeffs)
    qc: dict[int, RationalFunction] = {}
    # cache D^k * b coefficient lists
    shifts: list[list[RationalFunction]] = [list(b.coeffs)]
    while len(r) - 1 >= b.order and r:
        k = len(r) - 1 - b.order
        while len(shifts) <= k:
            shifts.append(_d_compose(shifts[-1]))
        sb = shifts[k]
        q = r[-1] / sb[-1]
        qc[k] = q
        for j, c in enumerate(sb):
            r[j] = r[j] - q * c
        while r and r[-1].is_zero():
            r.pop()
    ql = [RF_ZERO] * (max(qc) + 1 if qc else 0)
    for k, v in qc.items():
        ql[k] = v
    return OrePoly(ql), OrePoly(r)


def translate(a: OrePoly, xi: Rational | int) -> OrePoly:
    """x |-> x + xi; solutions move by y(x) |-> y(x + xi)."""
    return OrePoly([RationalFunction(c.num.shift(xi), c.den.shift(xi))
                    for c in a.coeffs])


def _ratfun_inv_subst(f: RationalFunction) -> RationalFunction:
    # f(1/t) as a rational function of t
    d = max(f.num.degree, f.den.degree)
    rn = Polynomial([f.num[d - i] for i in range(d + 1)])
    rd = Polynomial([f.den[d - i] for i in range(d + 1)])
    return RationalFunction(rn, rd)


def transform_infinity_raw(a: OrePoly) -> OrePoly:
    """x |-> 1/t, D |-> -t^2 D, with no rescaling: applying the result at
    t = 0 is applying a at infinity, so module elements transform too."""
    t2 = RationalFunction(Polynomial([0, 0, -1]))
    out = OrePoly()
    power = OrePoly([1])
    for i, c in enumerate(a.coeffs):
        if i:
            power = ore_mul(power, OrePoly([RF_ZERO, t2]))
        if not c.is_zero():
            out = out + _ratfun_inv_subst(c) * power
    return out


def transform_infinity(a: OrePoly) -> OrePoly:
    """Operator annihilating y(1/t) for every solution y(x) of a:
    x |-> 1/t, D |-> -t^2 D. Result is in primitive integer form."""
    return primitive_integer_form(transform_infinity_raw(a))


def primitive_integer_form(a: OrePoly) -> OrePoly:
    """Left-scale by an element of Q(x) so all coefficients are integer
    polynomials with no common factor (integer or polynomial), and the
    leading coefficient has a positive lead. This is a canonical form:
    operators equal up to a Q(x) factor normalize identically."""
    if a.is_zero():
        return a
    den = P_ONE
    for c in a.coeffs:
        g = den.gcd(c.den)
        q, _ = c.den.divmod(g)
        den = den * q
    polys = []
    for c in a.coeffs:
        q, r = den.divmod(c.den)
        assert r.is_zero()
        polys.append(c.num * q)
    num = 0
    dlcm = 1
    for pl in polys:
        for cf in pl.coeffs:
            num = math.gcd(num, cf.numerator)
            dlcm = dlcm * cf.denominator // math.gcd(dlcm, cf.denominator)
    scale = Fraction(dlcm, num) if num else Fraction(1)
    ints = [[int(cf * scale) for cf in pl.coeffs] for pl in polys]
    g: list[int] = []
    for il in ints:
        if il:
            g = _zx_gcd(g, il)
        if g == [1]:
            break
    if len(g) > 1:
        quots = []
        for il in ints:
            if il:
                q2 = _zx_divmod(il, g)
                assert q2 is not None and not q2[1]
                quots.append(q2[0])
            else:
                quots.append([])
        ints = quots
    if ints[-1][-1] < 0:
        ints = [[-c for c in il] for il in ints]
    return OrePoly([RationalFunction(Polynomial(il)) for il in ints])


def integer_coeff_lists(a: OrePoly) -> list[list[int]]:
    """Coefficients of a primitive-integer-form operator as int lists."""
    out = []
    for c in a.coeffs:
        if c.den.degree != 0 or c.den.lc != 1:
            raise ValueError("operator is not in polynomial form")
        out.append([int(x) for x in c.num.coeffs])
        for x in c.num.coeffs:
            if x.denominator != 1:
                raise ValueError("operator is not in integer polynomial form")
    return out


def operator_from_int_lists(lists: Sequence[Sequence[int]]) -> OrePoly:
    return OrePoly([RationalFunction(Polynomial(c)) for c in lists])


def singular_support(a: OrePoly) -> tuple[list[Rational], bool]:
    """Rational roots of the leading coefficient of the primitive integer
    form (the finite singular points), plus a flag for a residual factor
    with no rational roots. The point at infinity is judged separately."""
    if a.is_zero():
        raise ValueError("singular support of the zero operator")
    prim = primitive_integer_form(a)
    rep = rational_roots(prim.lc.num)
    return [r for r, _ in rep.roots], rep.has_irrational_factor


# ---------------------------------------------------------------------------
# module streams: lclm, symmetric product, symmetric power
# ---------------------------------------------------------------------------
# A module is (ncols, den, rows, start): den in Z[x]; rows[i] is a sparse
# list of (col, poly in Z[x]) such that differentiation acts on coordinate
# row vectors c as c' + c N / den. The integer stream w_k = den^k c_k obeys
#   w_{k+1} = den * w_k' - k * den' * w_k + w_k N.

SparseRows = list[list[tuple[int, list[int]]]]


def _int_stream(start: Sequence[Sequence[int]], den: list[int],
                rows: SparseRows) -> Iterator[list[list[int]]]:
    w = [list(e) for e in start]
    dend = _zx_deriv(den)
    k = 0
    while True:
        yield [list(e) for e in w]
        nxt = [_zx_add(_zx_mul(den, _zx_deriv(e)),
                       _zx_scale(_zx_mul(dend, e), -k)) for e in w]
        for i, e in enumerate(w):
            if not e:
                continue
            for col, poly in rows[i]:
                nxt[col] = _zx_add(nxt[col], _zx_mul(e, poly))
        w = nxt
        k += 1


def _np_stream(start: Sequence[Sequence[int]], den: list[int],
               rows: SparseRows, p: int) -> Iterator[list[np.ndarray]]:
    w = [_lindep.np_poly(e, p) for e in start]
    dnp = _lindep.np_poly(den, p)
    ddnp = _lindep.np_deriv(dnp, p)
    rows_p = [[(col, _lindep.np_poly(poly, p)) for col, poly in r] for r in rows]
    k = 0
    while True:
        yield list(w)
        nxt = [_lindep.np_add(_lindep.np_conv(dnp, _lindep.np_deriv(e, p), p),
                              np_neg_scale(_lindep.np_conv(ddnp, e, p), k, p), p)
               for e in w]
        for i, e in enumerate(w):
            if not e.size:
                continue
            for col, poly in rows_p[i]:
                nxt[col] = _lindep.np_add(nxt[col], _lindep.np_conv(e, poly, p), p)
        w = nxt
        k += 1


def np_neg_scale(a: np.ndarray, k: int, p: int) -> np.ndarray:
    return _lindep.np_scale(a, (-k) % p, p)


def _first_dependence_module(ncols: int, den: list[int], rows: SparseRows,
                             start: Sequence[Sequence[int]], max_steps: int,
                             engine: str) -> _lindep.Dependence:
    if engine == "exact" or (engine == "auto" and ncols <= 12):
        dep = _lindep.first_dependence_exact(
            _int_stream(start, den, rows), ncols, max_steps)
    else:
        dep = _lindep.first_dependence_modular(
            lambda p: _np_stream(start, den, rows, p), ncols,
            lambda: _int_stream(start, den, rows), max_steps)
    if dep is None:  # pragma: no cover - dependence is guaranteed in range
        raise RuntimeError("no dependence within the module dimension")
    return dep


def _operator_from_dependence(dep: _lindep.Dependence, den: list[int]) -> OrePoly:
    coeffs = []
    denp = Polynomial(den)
    power = P_ONE
    for j, b in enumerate(dep.coeffs):
        if j:
            power = power * denp
        coeffs.append(RationalFunction(b * power))
    return primitive_integer_form(OrePoly(coeffs))


def _poly_lcm_int(a: list[int], b: list[int]) -> list[int]:
    # integer common multiple (a/g)*b, kept divisible by a and b in Z[x]:
    # the primitive part alone need not be, when a or b has integer content
    from .algebra import _zx_gcd
    g = _zx_gcd(a, b)
    q = _zx_divmod(a, g)
    assert q is not None and not q[1]
    out = _zx_mul(q[0], b)
    return [-c for c in out] if out[-1] < 0 else out


def _companion_rows(plists: list[list[int]], den: list[int], offset: int,
                    n: int) -> list[list[tuple[int, list[int]]]]:
    # rows for one block of the direct sum Q(x)[D]/L: basis [D^i], i < n
    lead = plists[-1]
    mult = _zx_divmod(den, lead)
    assert mult is not None and not mult[1]
    mult = mult[0]
    rows: list[list[tuple[int, list[int]]]] = []
    for i in range(n):
        if i < n - 1:
            rows.append([(offset + i + 1, list(den))])
        else:
            row = []
            for j in range(n):
                entry = _zx_norm([-c for c in _zx_mul(mult, plists[j])])
                if entry:
                    row.append((offset + j, entry))
            rows.append(row)
    return rows


def lclm(a: OrePoly, b: OrePoly) -> OrePoly:
    """Least common left multiple: the minimal-order monic-normalizable M
    with M = U*a = V*b; its solution space is the sum of both spaces."""
    if a.is_zero() or b.is_zero():
        raise ValueError("lclm with the zero operator")
    if a.order == 0:
        return primitive_integer_form(b)
    if b.order == 0:
        return primitive_integer_form(a)
    pa = integer_coeff_lists(primitive_integer_form(a))
    pb = integer_coeff_lists(primitive_integer_form(b))
    m, n = len(pa) - 1, len(pb) - 1
    den = _poly_lcm_int(pa[-1], pb[-1])
    rows = _companion_rows(pa, den, 0, m) + _companion_rows(pb, den, m, n)
    start = [[] for _ in range(m + n)]
    start[0] = [1]
    start[m] = [1]
    dep = _first_dependence_module(m + n, den, rows, start, m + n, "exact")
    return _operator_from_dependence(dep, den)


def symmetric_product(a: OrePoly, b: OrePoly, engine: str = "auto") -> OrePoly:
    """Minimal annihilator of y*z for generic solutions y of a, z of b."""
    if a.order < 1 or b.order < 1:
        raise ValueError("symmetric product needs operators of order >= 1")
    pa = integer_coeff_lists(primitive_integer_form(a))
    pb = integer_coeff_lists(primitive_integer_form(b))
    m, n = len(pa) - 1, len(pb) - 1
    den = _poly_lcm_int(pa[-1], pb[-1])
    ma = _zx_divmod(den, pa[-1])[0]
    mb = _zx_divmod(den, pb[-1])[0]
    ncols = m * n
    rows: SparseRows = [[] for _ in range(ncols)]
    for i in range(m):
        for j in range(n):
            acc: dict[int, list[int]] = {}

            def add(col: int, poly: list[int]) -> None:
                acc[col] = _zx_add(acc.get(col, []), poly)

            if i < m - 1:
                add((i + 1) * n + j, list(den))
            else:
                for k in range(m):
                    add(k * n + j, _zx_scale(_zx_mul(ma, pa[k]), -1))
            if j < n - 1:
                add(i * n + j + 1, list(den))
            else:
                for k in range(n):
                    add(i * n + k, _zx_scale(_zx_mul(mb, pb[k]), -1))
            rows[i * n + j] = [(c, e) for c, e in sorted(acc.items()) if e]
    start = [[] for _ in range(ncols)]
    start[0] = [1]
    dep = _first_dependence_module(ncols, den, rows, start, ncols, engine)
    return _operator_from_dependence(dep, den)


def _multiset_basis(r: int, s: int) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    basis = []
    for comb in combinations_with_replacement(range(r), s):
        e = [0] * r
        for c in comb:
            e[c] += 1
        basis.append(tuple(e))
    basis.sort(reverse=True)
    return basis, {t: i for i, t in enumerate(basis)}


def _sympow_module(plists: list[list[int]], s: int) -> tuple[int, list[int], SparseRows, list[list[int]]]:
    r = len(plists) - 1
    den = plists[-1]
    basis, index = _multiset_basis(r, s)
    rows: SparseRows = []
    for e in basis:
        acc: dict[int, list[int]] = {}

        def add(col: int, poly: list[int]) -> None:
            acc[col] = _zx_add(acc.get(col, []), poly)

        for i in range(r - 1):
            if e[i]:
                shifted = list(e)
                shifted[i] -= 1
                shifted[i + 1] += 1
                add(index[tuple(shifted)], _zx_scale(den, e[i]))
        if e[r - 1]:
            for j in range(r):
                target = list(e)
                target[r - 1] -= 1
                target[j] += 1
                add(index[tuple(target)], _zx_scale(plists[j], -e[r - 1]))
        rows.append([(c, v) for c, v in sorted(acc.items()) if v])
    start = [[] for _ in basis]
    top = [0] * r
    top[0] = s
    start[index[tuple(top)]] = [1]
    return len(basis), den, rows, start


def symmetric_power(a: OrePoly, s: int, engine: str = "auto") -> OrePoly:
    """Minimal annihilator of y^s for a generic solution y of a, computed
    on the multiset module in one pass (not by iterated binary products)."""
    if s < 1:
        raise ValueError("symmetric power needs s >= 1")
    if a.order < 1:
        raise ValueError("symmetric power needs an operator of order >= 1")
    prim = primitive_integer_form(a)
    if s == 1:
        return prim
    plists = integer_coeff_lists(prim)
    ncols, den, rows, start = _sympow_module(plists, s)
    dep = _first_dependence_module(ncols, den, rows, start, ncols, engine)
    return _operator_from_dependence(dep, den)


def symmetric_power_order(a: OrePoly, s: int, agreeing: int = 3) -> int:
    """Order of the symmetric power only, via the mod-p probe.

    Advisory (see _lindep.first_dependence_order_only): the index is exact
    unless every probed prime is simultaneously unlucky."""
    if a.order < 1:
        raise ValueError("symmetric power needs an operator of order >= 1")
    prim = primitive_integer_form(a)
    plists = integer_coeff_lists(prim)
    if s == 1:
        return len(plists) - 1
    ncols, den, rows, start = _sympow_module(plists, s)
    k = _lindep.first_dependence_order_only(
        lambda p: _np_stream(start, den, rows, p), ncols,
        agreeing=agreeing, max_steps=ncols)
    assert k is not None
    return k
