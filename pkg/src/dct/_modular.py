"""Modular arithmetic helpers: deterministic primality, prime ladders, CRT,
rational reconstruction, dense polynomial arithmetic over F_p on plain int
lists (index = degree), mod-p root finding, Hensel lifting, and integer
resultants via CRT under a Hadamard bound.

Everything here is exact; primes are chosen deterministically (descending
from fixed starting points) so all runs are reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import _zx_deriv, _zx_divmod, _zx_norm, _zx_primitive

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic for all n < 3.3e24 (covers everything used here)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(start: int) -> Iterator[int]:
    """Primes < start, descending."""
    k = start - 1
    if k % 2 == 0:
        k -= 1
    while k > 2:
        if is_prime(k):
            yield k
        k -= 2


P24_START = 1 << 24   # ladder for int64-safe elimination
P62_START = 1 << 62   # ladder for reconstruction and resultants


def inv_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


def crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 mod m1, x = r2 mod m2 (m1, m2 coprime)."""
    t = (r2 - r1) * inv_mod(m1 % m2, m2) % m2
    return r1 + m1 * t


def symmetric_lift(r: int, m: int) -> int:
    r %= m
    return r - m if 2 * r > m else r


def rational_reconstruct(c: int, m: int,
                         num_bound: int | None = None,
                         den_bound: int | None = None) -> Fraction | None:
    """The unique n/d with n = c*d mod m, |n| <= num_bound, 0 < d <= den_bound,
    gcd(n, d) = 1, provided 2*num_bound*den_bound < m; None if no candidate."""
    if num_bound is None:
        num_bound = math.isqrt((m - 1) // 2)
    if den_bound is None:
        den_bound = math.isqrt((m - 1) // 2)
    c %= m
    if c == 0:
        return Fraction(0)
    r0, r1 = m, c
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0:
        return None
    num, den = (r1, t1) if t1 > 0 else (-r1, -t1)
    if den > den_bound or math.gcd(num, den) != 1:
        return None
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# dense polynomials over F_p (int lists, index = degree, trailing zeros cut)
# ---------------------------------------------------------------------------

def nmod(a: Sequence[int], p: int) -> list[int]:
    return _zx_norm([c % p for c in a])


def nmod_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _zx_norm([c % p for c in out])


def nmod_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not b:
        raise ZeroDivisionError
    inv = inv_mod(b[-1], p)
    bm = [c * inv % p for c in b]
    r = list(a)
    while len(r) >= len(bm):
        lr = r[-1] % p
        if lr:
            k = len(r) - len(bm)
            for j in range(len(bm) - 1):
                r[k + j] = (r[k + j] - lr * bm[j]) % p
        r.pop()
        _zx_norm(r)
    return _zx_norm([c % p for c in r])


def nmod_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = nmod(a, p), nmod(b, p)
    while b:
        a, b = b, nmod_rem(a, b, p)
    if a:
        inv = inv_mod(a[-1], p)
        a = [c * inv % p for c in a]
    return a


def nmod_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def nmod_pow_poly(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    """base^e mod f over F_p."""
    result = [1]
    b = nmod_rem(nmod(base, p), f, p) if len(base) >= len(f) else nmod(base, p)
    while e:
        if e & 1:
            result = nmod_rem(nmod_mul(result, b, p), f, p)
        e >>= 1
        if e:
            b = nmod_rem(nmod_mul(b, b, p), f, p)
    return result


def nmod_resultant(a: Sequence[int], b: Sequence[int], p: int) -> int:
    a, b = nmod(a, p), nmod(b, p)
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = nmod_rem(a, b, p)
        if not r:
            return 0
        res = res * pow(b[-1], da - (len(r) - 1), p) % p
        if (da * db) & 1:
            res = p - res
        a, b = b, r


def lagrange_mod(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Interpolating polynomial mod p through distinct abscissae."""
    result: list[int] = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi % p == 0:
            continue
        num = [yi % p]
        den = 1
        for j, xj in enumerate(xs):
            if i != j:
                num = nmod_mul(num, [(-xj) % p, 1], p)
                den = den * (xi - xj) % p
        scale = inv_mod(den, p)
        term = [c * scale % p for c in num]
        if len(result) < len(term):
            result += [0] * (len(term) - len(result))
        for k, c in enumerate(term):
            result[k] = (result[k] + c) % p
    return _zx_norm(result)


# ---------------------------------------------------------------------------
# roots over F_p and lifting
# ---------------------------------------------------------------------------

def roots_mod_p(f: Sequence[int], p: int) -> list[int]:
    """Distinct roots of f in F_p, ascending. Deterministic splitting."""
    f = nmod(f, p)
    if not f:
        raise ValueError("roots of the zero polynomial")
    if len(f) == 1:
        return []
    # gcd(x^p - x, f) = product of (x - r) over the distinct roots r
    xp = nmod_pow_poly([0, 1], p, f, p)
    sub = list(xp) + [0] * max(0, 2 - len(xp))
    sub[1] = (sub[1] - 1) % p
    lin = nmod_gcd(_zx_norm(sub), f, p)
    roots: list[int] = []
    stack = [lin]
    half = (p - 1) // 2
    while stack:
        g = stack.pop()
        d = len(g) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.append((-g[0]) % p)
            continue
        a = 0
        while True:
            t = nmod_pow_poly([a, 1], half, g, p)
            t = list(t) if t else [0]
            t[0] = (t[0] - 1) % p
            w = nmod_gcd(_zx_norm(t), g, p)
            if 0 < len(w) - 1 < d:
                q, r = _nmod_divmod(g, w, p)
                assert not r
                stack.append(w)
                stack.append(q)
                break
            a += 1
    return sorted(roots)


def _nmod_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    inv = inv_mod(b[-1], p)
    q = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] * inv % p
        k = len(r) - len(b)
        if c:
            q[k] = c
            for j in range(len(b) - 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
        r.pop()
        _zx_norm(r)
    return _zx_norm(q), _zx_norm([c % p for c in r])


def hensel_lift_root(f: Sequence[int], df: Sequence[int], r: int, p: int,
                     target: int) -> tuple[int, int]:
    """Lift a simple root r of f mod p to a root mod q >= target (q = p^(2^k))."""
    q = p
    while q < target:
        q *= q
        fr = 0
        for c in reversed(f):
            fr = (fr * r + c) % q
        dr = 0
        for c in reversed(df):
            dr = (dr * r + c) % q
        r = (r - fr * inv_mod(dr, q)) % q
    return r, q


def rational_root_candidates(ints: Sequence[int]) -> list[Fraction]:
    """Superset of the rational roots of a primitive integer polynomial with
    nonzero constant term; complete by Hensel lifting past 2*|a0|*|an|."""
    from .algebra import _zx_gcd

    f = list(ints)
    g = _zx_gcd(f, _zx_deriv(f))
    if len(g) > 1:
        div = _zx_divmod(f, g)
        assert div is not None and not div[1]
        f = _zx_primitive(div[0])
    df = _zx_deriv(f)
    b_num = abs(f[0])
    b_den = abs(f[-1])
    target = 2 * b_num * b_den + 1
    residues: list[int] = []
    for p in primes_below(P62_START):
        if f[-1] % p == 0:
            continue
        if len(nmod_gcd(f, df, p)) > 1:
            continue
        residues = roots_mod_p(f, p)
        break
    out: list[Fraction] = []
    for r in residues:
        lifted, mod = hensel_lift_root(f, df, r, p, target)
        cand = rational_reconstruct(lifted, mod, b_num, b_den)
        if cand is not None and b_num % abs(cand.numerator) == 0 \
                and b_den % cand.denominator == 0:
            out.append(cand)
    return out


def integer_root_candidates_mod(f: Sequence[int], p: int, bound: int | None = None) -> list[int]:
    """Symmetric lifts of the mod-p roots, filtered to |r| <= bound."""
    if bound is None:
        bound = (p - 1) // 2
    out = []
    for r in roots_mod_p(f, p):
        s = symmetric_lift(r, p)
        if abs(s) <= bound:
            out.append(s)
    return sorted(out)


# ---------------------------------------------------------------------------
# integer gcd and resultant via CRT
# ---------------------------------------------------------------------------

def zx_gcd_big(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z, positive leading coefficient.

    Min-degree prime class with CRT lifting; every answer is verified by
    exact trial division, so unlucky primes only cost retries."""
    a = _zx_primitive(a)
    b = _zx_primitive(b)
    lc_g = math.gcd(a[-1], b[-1])
    best_deg: int | None = None
    acc: list[int] = []
    modulus = 1
    prev: list[int] | None = None
    count = 0
    for p in primes_below(P62_START):
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        gp = nmod_gcd(a, b, p)
        d = len(gp) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            acc, modulus, prev = [], 1, None
        elif d > best_deg:
            continue
        scaled = [c * lc_g % p for c in gp]
        if modulus == 1:
            acc = scaled
            modulus = p
        else:
            acc = [crt(x, modulus, y, p) for x, y in zip(acc, scaled)]
            modulus *= p
        cand = _zx_primitive([symmetric_lift(c, modulus) for c in acc])
        if cand == prev:
            da = _zx_divmod(a, cand)
            db = _zx_divmod(b, cand)
            if da is not None and not da[1] and db is not None and not db[1]:
                if cand[-1] < 0:
                    cand = [-c for c in cand]
                return cand
        prev = cand
        count += 1
        if count > 120:
            break
    from .algebra import _zx_gcd_exact
    return _zx_gcd_exact(a, b)


def resultant_int(a: Sequence[int], b: Sequence[int]) -> int:
    """Res(a, b) over Z, exact: CRT past twice the Hadamard bound."""
    if not a or not b:
        return 0
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    na = math.isqrt(sum(c * c for c in a)) + 1
    nb = math.isqrt(sum(c * c for c in b)) + 1
    bound = 2 * na ** n * nb ** m
    acc = 0
    modulus = 1
    for p in primes_below(P62_START):
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        rp = nmod_resultant(a, b, p)
        if modulus == 1:
            acc, modulus = rp, p
        else:
            acc = crt(acc, modulus, rp, p)
            modulus *= p
        if modulus > bound:
            return symmetric_lift(acc, modulus)
    raise RuntimeError("prime ladder exhausted")  # pragma: no cover
