"""Exact commutative base layer: rationals, polynomials, rational functions,
matrices over Q, and rational root isolation.

Representations are canonical everywhere:

* ``Rational`` is ``fractions.Fraction`` (gcd-reduced, positive denominator,
  canonical zero).
* ``Polynomial`` is dense over Q, index = degree, empty tuple = zero, last
  coefficient nonzero.
* ``RationalFunction`` keeps a monic denominator coprime to the numerator;
  zero is 0/1.

No floats appear anywhere in this module's arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class _Infinity:
    """Sentinel for the point at infinity; compares equal only to itself."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()

Point = Fraction | _Infinity


# ---------------------------------------------------------------------------
# integer polynomial helpers (raw lists of python ints, index = degree)
# ---------------------------------------------------------------------------

def _zx_norm(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zx_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _zx_norm(out)


def _zx_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _zx_norm(out)


def _zx_scale(a: Sequence[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [c * x for x in a]


def _zx_content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _zx_primitive(a: Sequence[int]) -> list[int]:
    g = _zx_content(a)
    if g in (0, 1):
        return list(a)
    return [c // g for c in a]


def _zx_deriv(a: Sequence[int]) -> list[int]:
    return _zx_norm([i * a[i] for i in range(1, len(a))])


def _zx_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    # lc(b)^(deg a - deg b + 1) * a  mod b, computed without fractions
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        lr = r[-1]
        r = [c * lb for c in r[:-1]]
        shift = len(r) - db
        for j in range(db):
            r[shift + j] -= lr * b[j]
        _zx_norm(r)
    return r


def _zx_gcd_exact(a: list[int], b: list[int]) -> list[int]:
    # primitive PRS; result is primitive with positive leading coefficient
    a = _zx_primitive(a)
    b = _zx_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zx_pseudo_rem(a, b)
        a, b = b, _zx_primitive(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _zx_gcd(a: list[int], b: list[int]) -> list[int]:
    if not a:
        g = _zx_primitive(b)
    elif not b:
        g = _zx_primitive(a)
    elif min(len(a), len(b)) <= 24:
        g = _zx_gcd_exact(a, b)
    else:
        from . import _modular
        g = _modular.zx_gcd_big(a, b)
    if g and g[-1] < 0:
        g = [-c for c in g]
    return g


def _zx_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]] | None:
    # exact division helper over Z; returns None if not divisible over Q
    q: list[int] = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b):
        if r[-1] % lb:
            return None
        c = r[-1] // lb
        k = len(r) - len(b)
        q[k] = c
        for j in range(len(b)):
            r[k + j] -= c * b[j]
        _zx_norm(r)
    return q, r


# ---------------------------------------------------------------------------
# polynomials over Q
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense univariate polynomial over Q. Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational | int] = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Polynomial is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Rational:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _F0

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else _F0

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return -(self - other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            return Polynomial([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [_F0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = P_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q: list[Fraction] = [_F0] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        d = other.degree
        lead = other.lc
        while len(r) - 1 >= d and r:
            c = r[-1] / lead
            k = len(r) - 1 - d
            q[k] = c
            for j in range(d + 1):
                r[k + j] -= c * other.coeffs[j]
            while r and r[-1] == 0:
                r.pop()
        return Polynomial(q), Polynomial(r)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd."""
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        a, _ = self.primitive_integer()
        b, _ = other.primitive_integer()
        return Polynomial(_zx_gcd(a, b)).monic()

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.lc == 1:
            return self
        inv = 1 / self.lc
        return Polynomial([c * inv for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial([i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def shift(self, a: Rational | int) -> "Polynomial":
        """p(x + a), exact Taylor shift by repeated synthetic division."""
        a = Fraction(a)
        if a == 0 or self.is_zero():
            return self
        work = list(self.coeffs)
        out: list[Fraction] = []
        while work:
            if len(work) == 1:
                out.append(work[0])
                break
            q = [_F0] * (len(work) - 1)
            q[-1] = work[-1]
            for i in range(len(work) - 2, 0, -1):
                q[i - 1] = q[i] * a + work[i]
            out.append(q[0] * a + work[0])
            work = q
        return Polynomial(out)

    def eval(self, a: Rational | int) -> Rational:
        acc = _F0
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def content(self) -> Rational:
        """c > 0 with self/c an integer polynomial of content 1; 0 for zero."""
        if self.is_zero():
            return _F0
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_integer(self) -> tuple[list[int], Rational]:
        """(integer coefficient list, scale) with self = scale * intpoly,
        intpoly primitive with positive leading coefficient."""
        if self.is_zero():
            return [], _F1
        c = self.content()
        ints = [int(x / c) for x in self.coeffs]
        if ints[-1] < 0:
            ints = [-v for v in ints]
            c = -c
        return ints, c

    def squarefree_part(self) -> "Polynomial":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self.monic()
        q, r = self.divmod(g)
        assert r.is_zero()
        return q.monic()

    def squarefree_decomposition(self) -> list[tuple["Polynomial", int]]:
        """Yun's algorithm: [(g_i, i)] with self = lc * prod g_i^i, g_i monic
        squarefree, pairwise coprime, g_i nonconstant."""
        p = self.monic()
        if p.degree <= 0:
            return []
        out: list[tuple[Polynomial, int]] = []
        dp = p.derivative()
        a = p.gcd(dp)
        b, _ = p.divmod(a)
        c, _ = dp.divmod(a)
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g.monic(), i))
            b, _ = b.divmod(g)
            c, _ = d.divmod(g)
            d = c - b.derivative()
            i += 1
        return out

    def resultant(self, other: "Polynomial") -> Rational:
        """Res_x(self, other), exact."""
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return _F0
        if a.degree * b.degree > 64:
            from . import _modular
            ia, sa = a.primitive_integer()
            ib, sb = b.primitive_integer()
            return sa ** b.degree * sb ** a.degree * _modular.resultant_int(ia, ib)
        res = _F1
        while True:
            da, db = a.degree, b.degree
            if db == 0:
                return res * b.lc ** da
            _, r = a.divmod(b)
            if r.is_zero():
                return _F0
            res *= Fraction(-1) ** (da * db) * b.lc ** (da - r.degree)
            a, b = b, r

    @staticmethod
    def interpolate(points: Sequence[tuple[Rational, Rational]]) -> "Polynomial":
        """Lagrange interpolation through distinct abscissae."""
        result = Polynomial()
        for i, (xi, yi) in enumerate(points):
            if yi == 0:
                continue
            num = Polynomial([yi])
            den = _F1
            for j, (xj, _) in enumerate(points):
                if i != j:
                    num = num * Polynomial([-xj, 1])
                    den *= xi - xj
            result = result + num * (1 / den)
        return result


def _as_poly(v) -> "Polynomial":
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, (int, Fraction)):
        return Polynomial([v])
    return NotImplemented


P_ZERO = Polynomial()
P_ONE = Polynomial([1])
P_X = Polynomial([0, 1])


def poly(*coeffs) -> Polynomial:
    """Ascending-degree convenience constructor."""
    return Polynomial(coeffs)


# ---------------------------------------------------------------------------
# rational functions over Q
# ---------------------------------------------------------------------------

class RationalFunction:
    """num/den with den monic and gcd(num, den) = 1; zero is 0/1. Immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = P_ZERO, P_ONE
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            if den.lc != 1:
                inv = 1 / den.lc
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RationalFunction is immutable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.is_polynomial():
            return f"RationalFunction({list(self.num.coeffs)!r})"
        return f"RationalFunction({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    def __add__(self, other) -> "RationalFunction":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other) -> "RationalFunction":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-reduce before multiplying to keep gcds small
        a = RationalFunction(self.num, other.den)
        b = RationalFunction(other.num, self.den)
        return RationalFunction(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        return _as_ratfun(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        if d.degree == 0:
            return RationalFunction(n.derivative(), d)
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def eval(self, a: Rational | int) -> Rational:
        db = self.den.eval(a)
        if db == 0:
            raise ZeroDivisionError(f"pole at {a}")
        return self.num.eval(a) / db

    def valuation_at(self, point: Point) -> int:
        """Order of vanishing at the point (negative at a pole).

        At INF this is deg(den) - deg(num), the order in 1/x.
        Raises ValueError for the zero function."""
        if self.is_zero():
            raise ValueError("valuation of the zero function")
        if isinstance(point, _Infinity):
            return self.den.degree - self.num.degree
        return _root_multiplicity(self.num, point) - _root_multiplicity(self.den, point)


def _as_ratfun(v) -> "RationalFunction":
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, (int, Fraction, Polynomial)):
        return RationalFunction(v)
    return NotImplemented


def _root_multiplicity(p: Polynomial, a: Rational) -> int:
    m = 0
    lin = Polynomial([-a, 1])
    while not p.is_zero():
        q, r = p.divmod(lin)
        if not r.is_zero():
            break
        m += 1
        p = q
    return m


RF_ZERO = RationalFunction(0)
RF_ONE = RationalFunction(1)


# ---------------------------------------------------------------------------
# generic dense polynomials over any field-like coefficient objects
# ---------------------------------------------------------------------------
# Used for polynomials in y over Q(x): coefficients are RationalFunction.
# Elements are plain lists, index = degree, trailing zeros stripped;
# `zero`/`one` are exemplar coefficients.

def fp_norm(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def fp_add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return fp_norm(out)


def fp_neg(a: Sequence) -> list:
    return [-c for c in a]


def fp_sub(a: Sequence, b: Sequence) -> list:
    return fp_add(a, fp_neg(b))


def fp_mul(a: Sequence, b: Sequence, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return fp_norm(out)


def fp_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = []
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1] / b[-1]
        k = len(r) - 1 - db
        while len(q) <= k:
            q.append(c * 0)
        q[k] = c
        for j in range(db + 1):
            r[k + j] = r[k + j] - c * b[j]
        fp_norm(r)
    return fp_norm(q), r


def fp_gcd_monic(a: Sequence, b: Sequence) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = fp_divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1] ** 0 / a[-1]
        a = [c * inv for c in a]
    return a


def fp_xgcd(a: Sequence, b: Sequence, zero, one) -> tuple[list, list, list]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = fp_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, zero))
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, zero))
    if r0:
        inv = r0[-1] ** 0 / r0[-1]
        r0 = [c * inv for c in r0]
        s0 = [c * inv for c in s0]
        t0 = [c * inv for c in t0]
    return r0, s0, t0


# ---------------------------------------------------------------------------
# exact matrices over Q
# ---------------------------------------------------------------------------

class QMatrix:
    """Row-major exact matrix over Q with deterministic elimination."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Rational | int]], ncols: int | None = None):
        rs = [[c if isinstance(c, Fraction) else Fraction(c) for c in row] for row in rows]
        if rs:
            ncols = len(rs[0])
            for row in rs:
                if len(row) != ncols:
                    raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        self.rows = rs
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rref(self) -> tuple["QMatrix", list[int]]:
        """Reduced row echelon form; pivots chosen leftmost column first,
        smallest row index first."""
        m = [list(r) for r in self.rows]
        pivots: list[int] = []
        prow = 0
        for col in range(self.ncols):
            sel = None
            for i in range(prow, len(m)):
                if m[i][col] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            m[prow], m[sel] = m[sel], m[prow]
            inv = 1 / m[prow][col]
            m[prow] = [c * inv for c in m[prow]]
            for i in range(len(m)):
                if i != prow and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[prow])]
            pivots.append(col)
            prow += 1
            if prow == len(m):
                break
        out = QMatrix.__new__(QMatrix)
        out.rows = m
        out.ncols = self.ncols
        return out, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Rational]]:
        """Basis of the right kernel, one vector per free column, ascending."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            v = [_F0] * self.ncols
            v[free] = _F1
            for r, pcol in enumerate(pivots):
                v[pcol] = -red.rows[r][free]
            basis.append(v)
        return basis


def nullspace(rows: Sequence[Sequence[Rational | int]], ncols: int | None = None) -> list[list[Rational]]:
    return QMatrix(rows, ncols).nullspace()


def solve_affine(rows: Sequence[Sequence[Rational | int]],
                 rhs: Sequence[Rational | int]) -> tuple[list[Rational], list[list[Rational]]] | None:
    """One solution of A x = b plus a kernel basis, or None if inconsistent."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = QMatrix(aug, n + 1).rref()
    if n in pivots:
        return None
    x = [_F0] * n
    for r, pcol in enumerate(pivots):
        x[pcol] = red.rows[r][n]
    kernel = QMatrix(rows, n).nullspace() if rows else [
        [_F1 if i == j else _F0 for j in range(n)] for i in range(n)]
    return x, kernel


# ---------------------------------------------------------------------------
# rational roots
# ---------------------------------------------------------------------------

class RootReport:
    """Rational roots with multiplicities plus an irrationality flag.

    has_irrational_factor is True exactly when deflating all rational roots
    leaves positive degree (the residual may have irrational or complex
    roots; no distinction is attempted)."""

    __slots__ = ("roots", "has_irrational_factor")

    def __init__(self, roots: list[tuple[Rational, int]], has_irrational_factor: bool):
        self.roots = roots
        self.has_irrational_factor = has_irrational_factor

    def __repr__(self) -> str:
        return f"RootReport({self.roots!r}, irr={self.has_irrational_factor})"


_SMALL_FACTOR_LIMIT = 10 ** 12


def _divisors_from_factorization(n: int) -> list[int]:
    n = abs(n)
    fac: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    divs = [1]
    for p, e in fac.items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _deflate_all(ints: list[int], root: Fraction) -> tuple[list[int], int]:
    # divide out (q x - p) as often as possible; keeps integer coefficients
    p_, q_ = root.numerator, root.denominator
    mult = 0
    cur = ints
    while len(cur) > 1:
        # synthetic division by (x - p/q): remainder = value, quotient over Q;
        # over Z: cur = (q x - p) * quo / q^(deg-1)... do it with Fractions then clear
        acc = Fraction(0)
        quo: list[Fraction] = []
        for c in reversed(cur):
            acc = acc * root + c
            quo.append(acc)
        if acc != 0:
            break
        quo.pop()
        quof = list(reversed(quo))
        lcm = 1
        for c in quof:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        cur = _zx_primitive([int(c * lcm) for c in quof])
        mult += 1
    return cur, mult


def _rational_roots_divisor_search(ints: list[int]) -> tuple[list[tuple[Fraction, int]], list[int]]:
    roots: list[tuple[Fraction, int]] = []
    cur = ints
    nums = _divisors_from_factorization(cur[0])
    dens = _divisors_from_factorization(cur[-1])
    candidates = sorted({Fraction(s * p, q) for p in nums for q in dens for s in (1, -1)})
    for cand in candidates:
        if len(cur) <= 1:
            break
        if cur[0] % cand.numerator or cur[-1] % cand.denominator:
            continue
        cur2, mult = _deflate_all(cur, cand)
        if mult:
            roots.append((cand, mult))
            cur = cur2
    return roots, cur


def _rational_roots_modular(ints: list[int]) -> tuple[list[tuple[Fraction, int]], list[int]]:
    from . import _modular

    roots: list[tuple[Fraction, int]] = []
    cur = ints
    candidates = _modular.rational_root_candidates(cur)
    for cand in sorted(set(candidates)):
        if len(cur) <= 1:
            break
        cur2, mult = _deflate_all(cur, cand)
        if mult:
            roots.append((cand, mult))
            cur = cur2
    roots.sort()
    return roots, cur


def rational_roots(p: Polynomial) -> RootReport:
    """All rational roots of p with multiplicities, exactly.

    Divisor search on the primitive integer form when the extreme
    coefficients factor quickly; otherwise a modular root-finding path with
    exact verification (see dct._modular.rational_root_candidates for the
    completeness bound, far beyond any meaningful exponent)."""
    if p.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    if p.degree == 0:
        return RootReport([], False)
    ints, _ = p.primitive_integer()
    # strip x^k
    k = 0
    while ints[0] == 0:
        ints = ints[1:]
        k += 1
    roots: list[tuple[Fraction, int]] = []
    if k:
        roots.append((_F0, k))
    if len(ints) > 1:
        if abs(ints[0]) <= _SMALL_FACTOR_LIMIT and abs(ints[-1]) <= _SMALL_FACTOR_LIMIT:
            found, residual = _rational_roots_divisor_search(ints)
        else:
            found, residual = _rational_roots_modular(ints)
        roots.extend(found)
        has_irr = len(residual) > 1
    else:
        has_irr = False
    roots.sort()
    return RootReport(roots, has_irr)


def integer_roots(p: Polynomial) -> list[tuple[int, int]]:
    rep = rational_roots(p)
    return [(int(r), m) for r, m in rep.roots if r.denominator == 1]
