"""Rational solution spaces of operators."""

from fractions import Fraction as F

import pytest
from conftest import F_2F1A, F_EX1, F_EXP, F_QUINTIC, op

from dct.algebra import Polynomial, RationalFunction, nullspace, poly
from dct.algsols import rational_solutions
from dct.ore import OrePoly, lclm

D2 = op([], [], [1])
EULER2 = op([-2], [], [0, 0, 1])        # x^2 D^2 - 2
XD_MINUS_2 = op([-2], [0, 1])           # x D - 2


def _rank(rows, ncols):
    return ncols - len(nullspace(rows, ncols))


def _span_equal(fs, gs):
    """Exact Q-span comparison of two lists of rational functions."""
    if len(fs) != len(gs):
        return False
    if not fs:
        return True
    den = Polynomial([1])
    for h in (*fs, *gs):
        den = den * h.den
    rows = []
    for h in (*fs, *gs):
        cleared = h * RationalFunction(den)
        assert cleared.den.degree == 0
        rows.append(cleared.num * (1 / cleared.den[0]))
    ncols = max(r.degree for r in rows) + 1
    vecs = [[r[i] for i in range(ncols)] for r in rows]
    k = len(fs)
    return _rank(vecs[:k], ncols) == _rank(vecs[k:], ncols) == _rank(vecs, ncols)


def rat(num, den=(1,)):
    return RationalFunction(Polynomial(list(num)), Polynomial(list(den)))


class TestRationalSolutions:
    def test_d_squared(self):
        sols = rational_solutions(D2)
        assert _span_equal(sols, [rat((1,)), rat((0, 1))])

    def test_euler_with_pole(self):
        sols = rational_solutions(EULER2)
        assert _span_equal(sols, [rat((1,), (0, 1)), rat((0, 0, 1))])

    def test_monomial(self):
        sols = rational_solutions(XD_MINUS_2)
        assert _span_equal(sols, [rat((0, 0, 1))])

    def test_first_order_shifted(self):
        # (x-2)D - 3 has solutions c (x-2)^3
        L = op([-3], [-2, 1])
        assert _span_equal(rational_solutions(L), [rat((-8, 12, -6, 1))])

    def test_ex1_has_only_constants(self):
        assert _span_equal(rational_solutions(F_EX1), [rat((1,))])

    def test_2f1a_none(self):
        assert rational_solutions(F_2F1A) == []

    def test_exp_none(self):
        assert rational_solutions(F_EXP) == []

    def test_quintic_none(self):
        # the lead 256x^5 - 3125 has no rational roots; the solution
        # branches ramify there, leaving no rational solution
        assert rational_solutions(F_QUINTIC) == []

    def test_lclm_collects_both(self):
        L = lclm(XD_MINUS_2, op([-1, -1], [-1, 0, 1]))   # x^2 and (x+1)/(x-1)-ish
        sols = rational_solutions(L)
        assert len(sols) == 2
        for f in sols:
            assert L.apply(f).num.is_zero()

    def test_everything_returned_solves_exactly(self):
        for L in (D2, EULER2, XD_MINUS_2, F_EX1):
            for f in rational_solutions(L):
                assert L.apply(f).num.is_zero()

    def test_returned_basis_is_independent(self):
        for L in (D2, EULER2):
            sols = rational_solutions(L)
            den = Polynomial([1])
            for h in sols:
                den = den * h.den
            rows = []
            for h in sols:
                cleared = h * RationalFunction(den)
                rows.append(cleared.num)
            ncols = max(r.degree for r in rows) + 1
            assert _rank([[r[i] for i in range(ncols)] for r in rows], ncols) == len(sols)

    def test_pole_support_hint(self):
        # restricting candidate poles to the stated support must not lose
        # the solution when the support covers the actual poles
        sols = rational_solutions(EULER2, pole_support=poly(0, 0, 1))
        assert _span_equal(sols, [rat((1,), (0, 1)), rat((0, 0, 1))])

    def test_zero_operator_rejected(self):
        with pytest.raises(ValueError):
            rational_solutions(OrePoly([]))
