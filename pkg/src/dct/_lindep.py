"""First linear dependence of a vector stream over Q(x).

A stream yields vectors w_0, w_1, ... in Z[x]^n (entries are plain int
lists, index = degree). The task everywhere in this package (least common
left multiples, symmetric powers, annihilators of algebraic functions) is
the same: find the smallest k such that w_0..w_k are linearly dependent
over Q(x) and return polynomial coefficients b_0..b_k, b_k != 0, with
sum b_j w_j = 0.

Two engines:

* `first_dependence_exact` - incremental fraction-free echelon over Z[x]
  with joint content removal and combination tracking. Always exact; meant
  for small dimensions.

* `first_dependence_modular` - the same echelon over F_p[x] for a
  deterministic descending ladder of 24-bit primes (int64-safe numpy
  convolutions), CRT + rational reconstruction of the dependence, then a
  rigorous certificate:

    - minimality: reduction mod p can only lower ranks, so a dependence at
      index k mod p proves first_dependence <= k over Q(x); independence of
      w_0..w_{k-1} mod the same p proves >= k.
    - annihilation: sum b_j w_j is evaluated exactly over Z[x] against the
      caller's exact stream (regenerating the stream with bignum arithmetic
      is cheap; only the echelon is not) and must vanish identically.

  Unlucky primes (where ranks drop early or leading coefficients vanish)
  land in separate candidate groups and are outvoted; nothing is trusted
  without the certificate.

* `first_dependence_order_only` - just the index k, cross-checked at
  `agreeing` primes. Advisory: bad primes can in principle all agree on a
  low index, so callers must label results from this engine accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _modular
from .algebra import Polynomial, _zx_divmod, _zx_gcd, _zx_mul, _zx_norm


class BadPrime(Exception):
    """A stream factory may raise this to have the engine skip the prime."""


@dataclass
class Dependence:
    index: int
    coeffs: list[Polynomial]  # length index+1, integer, jointly primitive
    certified: bool = True

    def __post_init__(self):
        assert not self.coeffs[-1].is_zero()


_MAX_CONV = 1 << 15  # keeps int64 convolution sums below 2**63 for 24-bit p


# ---------------------------------------------------------------------------
# exact engine
# ---------------------------------------------------------------------------

def _zx_axpy(a: list[int], x: list[int], b: list[int], y: list[int]) -> list[int]:
    # a*x - b*y
    p1 = _zx_mul(a, x)
    p2 = _zx_mul(b, y)
    if len(p1) < len(p2):
        p1 += [0] * (len(p2) - len(p1))
    for i, c in enumerate(p2):
        p1[i] -= c
    return _zx_norm(p1)


def _joint_reduce(chunks: list[list[list[int]]]) -> None:
    """Divide all polynomials in all chunks by their joint content, in place."""
    ig = 0
    for ch in chunks:
        for e in ch:
            for c in e:
                ig = math.gcd(ig, c)
                if ig == 1:
                    break
            if ig == 1:
                break
        if ig == 1:
            break
    if ig > 1:
        for ch in chunks:
            for e in ch:
                for i in range(len(e)):
                    e[i] //= ig
    pg: list[int] | None = None
    for ch in chunks:
        for e in ch:
            if not e:
                continue
            pg = list(e) if pg is None else _zx_gcd(pg, e)
            if pg is not None and len(pg) == 1:
                return
    if pg is None or len(pg) <= 1:
        return
    for ch in chunks:
        for j, e in enumerate(ch):
            if e:
                div = _zx_divmod(e, pg)
                assert div is not None and not div[1]
                ch[j] = div[0]


def first_dependence_exact(stream: Iterable[Sequence[Sequence[int]]],
                           ncols: int,
                           max_steps: int | None = None) -> Dependence | None:
    # rows: (pivot_col, entries, comb); invariant: every row is zero at all
    # other rows' pivot columns, so reduction is a single pass
    rows: list[tuple[int, list[list[int]], list[list[int]]]] = []
    for k, vec in enumerate(stream):
        if max_steps is not None and k > max_steps:
            return None
        v = [list(e) for e in vec]
        comb: list[list[int]] = [[] for _ in range(k)] + [[1]]
        for pc, entries, rcomb in rows:
            e = v[pc]
            if not e:
                continue
            piv = entries[pc]
            v = [_zx_axpy(piv, ve, e, re) for ve, re in zip(v, entries)]
            rc = rcomb + [[]] * (k + 1 - len(rcomb))
            comb = [_zx_axpy(piv, ce, e, re) for ce, re in zip(comb, rc)]
            _joint_reduce([v, comb])
        if not any(v):
            if comb[k][-1] < 0:
                comb = [[-c for c in e] for e in comb]
            return Dependence(k, [Polynomial(c) for c in comb])
        col = min((c for c in range(ncols) if v[c]), key=lambda c: (len(v[c]), c))
        piv = v[col]
        for i, (pc, entries, rcomb) in enumerate(rows):
            e = entries[col]
            if not e:
                continue
            nent = [_zx_axpy(piv, re, e, ve) for re, ve in zip(entries, v)]
            rc = rcomb + [[]] * (k + 1 - len(rcomb))
            ncomb = [_zx_axpy(piv, ce, e, we) for ce, we in zip(rc, comb)]
            _joint_reduce([nent, ncomb])
            rows[i] = (pc, nent, ncomb)
        rows.append((col, v, comb))
    return None


# ---------------------------------------------------------------------------
# F_p[x] arithmetic on numpy int64 arrays (index = degree, trimmed)
# ---------------------------------------------------------------------------

_EMPTY = np.zeros(0, dtype=np.int64)


def _np_trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else _EMPTY


def np_poly(ints: Sequence[int], p: int) -> np.ndarray:
    return _np_trim(np.array([c % p for c in ints], dtype=np.int64))


def np_add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = max(a.size, b.size)
    if not n:
        return _EMPTY
    out = np.zeros(n, dtype=np.int64)
    out[: a.size] += a
    out[: b.size] += b
    return _np_trim(out % p)


def np_scale(a: np.ndarray, c: int, p: int) -> np.ndarray:
    c %= p
    if not c:
        return _EMPTY
    return _np_trim((a * c) % p)


def np_deriv(a: np.ndarray, p: int) -> np.ndarray:
    if a.size <= 1:
        return _EMPTY
    return _np_trim((a[1:] * np.arange(1, a.size, dtype=np.int64)) % p)


def np_conv(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return _np_conv(a, b, p)


def _np_conv(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if not a.size or not b.size:
        return _EMPTY
    if min(a.size, b.size) > _MAX_CONV:
        raise RuntimeError("convolution length exceeds the int64-safe cap")
    return _np_trim(np.convolve(a, b) % p)


def _np_axpy(a: np.ndarray, x: np.ndarray, b: np.ndarray, y: np.ndarray,
             p: int) -> np.ndarray:
    c1 = _np_conv(a, x, p)
    c2 = _np_conv(b, y, p)
    n = max(c1.size, c2.size)
    if not n:
        return _EMPTY
    out = np.zeros(n, dtype=np.int64)
    out[: c1.size] += c1
    out[: c2.size] -= c2
    return _np_trim(out % p)


def _np_divmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    db = b.size - 1
    inv = pow(int(b[-1]), -1, p)
    bm = (b * inv) % p
    r = a.copy()
    q = np.zeros(max(0, a.size - db), dtype=np.int64)
    for top in range(a.size - 1, db - 1, -1):
        c = int(r[top])
        if c:
            q[top - db] = c
            if db:
                r[top - db: top] = (r[top - db: top] - c * bm[:db]) % p
            r[top] = 0
    return _np_trim((q * inv) % p), _np_trim(r[:db])


def _np_rem(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    db = b.size - 1
    if not db:
        return _EMPTY
    inv = pow(int(b[-1]), -1, p)
    bm = (b * inv) % p
    r = a.copy()
    for top in range(a.size - 1, db - 1, -1):
        c = int(r[top])
        if c:
            r[top - db: top] = (r[top - db: top] - c * bm[:db]) % p
    return _np_trim(r[:db])


def _np_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    while b.size:
        a, b = b, _np_rem(a, b, p)
    if a.size:
        a = (a * pow(int(a[-1]), -1, p)) % p
    return a


def _np_content_reduce(chunks: list[list[np.ndarray]], p: int) -> None:
    # fold shortest-first: the gcd usually collapses to a scalar immediately
    live = sorted((e for ch in chunks for e in ch if e.size), key=lambda e: e.size)
    if not live or live[0].size == 1:
        return
    g = live[0]
    for e in live[1:]:
        g = _np_gcd(g, e, p)
        if g.size == 1:
            return
    for ch in chunks:
        for j, e in enumerate(ch):
            if e.size:
                q, r = _np_divmod(e, g, p)
                assert not r.size
                ch[j] = q


def _echelon_mod_p(stream: Iterator[Sequence[np.ndarray]], ncols: int, p: int,
                   max_steps: int | None) -> tuple[int, list[list[int]]] | None:
    """(k, dependence coeff int lists mod p, top entry monic) or None."""
    rows: list[tuple[int, list[np.ndarray], list[np.ndarray]]] = []
    for k, vec in enumerate(stream):
        if max_steps is not None and k > max_steps:
            return None
        v = [np.asarray(e, dtype=np.int64) % p for e in vec]
        v = [_np_trim(e) for e in v]
        comb: list[np.ndarray] = [_EMPTY] * k + [np.ones(1, dtype=np.int64)]
        for pc, entries, rcomb in rows:
            e = v[pc]
            if not e.size:
                continue
            piv = entries[pc]
            v = [_np_axpy(piv, ve, e, re, p) for ve, re in zip(v, entries)]
            rc = rcomb + [_EMPTY] * (k + 1 - len(rcomb))
            comb = [_np_axpy(piv, ce, e, re, p) for ce, re in zip(comb, rc)]
            _np_content_reduce([v, comb], p)
        if not any(e.size for e in v):
            top = comb[k]
            inv = pow(int(top[-1]), -1, p)
            return k, [[int(c) for c in (ce * inv) % p] for ce in comb]
        col = min((c for c in range(ncols) if v[c].size),
                  key=lambda c: (v[c].size, c))
        piv = v[col]
        for i, (pc, entries, rcomb) in enumerate(rows):
            e = entries[col]
            if not e.size:
                continue
            nent = [_np_axpy(piv, re, e, ve, p) for re, ve in zip(entries, v)]
            rc = rcomb + [_EMPTY] * (k + 1 - len(rcomb))
            ncomb = [_np_axpy(piv, ce, e, we, p) for ce, we in zip(rc, comb)]
            _np_content_reduce([nent, ncomb], p)
            rows[i] = (pc, nent, ncomb)
        rows.append((col, v, comb))
    return None


# ---------------------------------------------------------------------------
# modular engine with reconstruction and certification
# ---------------------------------------------------------------------------

StreamFactory = Callable[[int], Iterator[Sequence[np.ndarray]]]
ExactStreamFactory = Callable[[], Iterator[Sequence[Sequence[int]]]]


class _Group:
    __slots__ = ("modulus", "residues", "last")

    def __init__(self):
        self.modulus = 1
        self.residues: list[list[int]] | None = None
        self.last: list[list[Fraction]] | None = None

    def add(self, coeffs: list[list[int]], p: int) -> None:
        if self.residues is None:
            self.residues = [list(c) for c in coeffs]
            self.modulus = p
            return
        for acc, new in zip(self.residues, coeffs):
            for i in range(len(acc)):
                acc[i] = _modular.crt(acc[i], self.modulus, new[i], p)
        self.modulus *= p

    def reconstruct(self) -> list[list[Fraction]] | None:
        assert self.residues is not None
        out: list[list[Fraction]] = []
        for cpoly in self.residues:
            row: list[Fraction] = []
            for c in cpoly:
                f = _modular.rational_reconstruct(c, self.modulus)
                if f is None:
                    return None
                row.append(f)
            out.append(row)
        return out


def _clear_to_integer(vec: list[list[Fraction]]) -> list[Polynomial]:
    lcm = 1
    for cpoly in vec:
        for c in cpoly:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [[int(c * lcm) for c in cpoly] for cpoly in vec]
    g = 0
    for cpoly in ints:
        for c in cpoly:
            g = math.gcd(g, c)
    if g > 1:
        ints = [[c // g for c in cpoly] for cpoly in ints]
    top = _zx_norm(list(ints[-1]))
    if top and top[-1] < 0:
        ints = [[-c for c in cpoly] for cpoly in ints]
    return [Polynomial(c) for c in ints]


def _certify_annihilation(cand: list[Polynomial],
                          exact_stream: ExactStreamFactory) -> bool:
    """Exact check that sum_j cand[j] * w_j = 0 over Z[x]."""
    from .algebra import _zx_add

    cints = [[int(x) for x in c.coeffs] for c in cand]
    it = exact_stream()
    acc: list[list[int]] | None = None
    for cj in cints:
        w = next(it)
        if acc is None:
            acc = [[] for _ in range(len(w))]
        if not cj:
            continue
        for col in range(len(w)):
            if w[col]:
                acc[col] = _zx_add(acc[col], _zx_mul(cj, list(w[col])))
    return acc is not None and not any(acc)


def first_dependence_modular(stream_factory: StreamFactory, ncols: int,
                             exact_stream: ExactStreamFactory,
                             max_steps: int | None = None,
                             max_primes: int = 400) -> Dependence | None:
    ladder = _modular.primes_below(_modular.P24_START)
    groups: dict[tuple, _Group] = {}
    used = 0
    for p in ladder:
        if used >= max_primes:
            raise RuntimeError("prime budget exhausted without certification")
        used += 1
        try:
            res = _echelon_mod_p(stream_factory(p), ncols, p, max_steps)
        except BadPrime:
            continue
        if res is None:
            # no dependence within max_steps mod p => none exactly either
            # (rank can only drop mod p), certified immediately
            return None
        k, coeffs = res
        key = (k, tuple(len(c) for c in coeffs))
        grp = groups.setdefault(key, _Group())
        grp.add(coeffs, p)
        rec = grp.reconstruct()
        if rec is None:
            continue
        if grp.last is not None and rec == grp.last:
            cand = _clear_to_integer(rec)
            if not cand[-1].is_zero() and _certify_annihilation(cand, exact_stream):
                return Dependence(k, cand, certified=True)
        grp.last = rec
    raise RuntimeError("prime ladder exhausted")  # pragma: no cover


def first_dependence_order_only(stream_factory: StreamFactory, ncols: int,
                                agreeing: int = 3,
                                max_steps: int | None = None,
                                max_primes: int = 60) -> int | None:
    """Index of the first dependence, agreed by `agreeing` primes.

    Advisory: a dependence index mod p is a lower bound for the true index;
    agreement of several primes on the maximum seen is strong evidence, not
    proof, that it is the true index. None means no dependence within
    max_steps (that direction IS rigorous from a single prime)."""
    best = -1
    count = 0
    used = 0
    for p in _modular.primes_below(_modular.P24_START):
        if used >= max_primes:
            raise RuntimeError("prime budget exhausted in order probe")
        used += 1
        try:
            res = _echelon_mod_p(stream_factory(p), ncols, p, max_steps)
        except BadPrime:
            continue
        if res is None:
            return None
        k = res[0]
        if k > best:
            best, count = k, 1
        elif k == best:
            count += 1
        if count >= agreeing:
            return best
    raise RuntimeError("prime ladder exhausted in order probe")  # pragma: no cover
