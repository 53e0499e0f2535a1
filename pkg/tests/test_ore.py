import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dct.algebra import INF, Polynomial, RationalFunction, poly
from dct.ore import (
    D_OP,
    OrePoly,
    adjoint,
    integer_coeff_lists,
    lclm,
    operator_from_int_lists,
    ore_mul,
    primitive_integer_form,
    right_divmod,
    singular_support,
    symmetric_power,
    symmetric_power_order,
    symmetric_product,
    transform_infinity,
    translate,
)
from conftest import D2, F_2F1A, F_EX1, F_EXP, F_L2, F_ORD3, F_ORD3B, F_QUINTIC, op

F = Fraction


def rf(*coeffs):
    return RationalFunction(Polynomial(coeffs))


def small_ops(rng, order, deg=1, bound=4):
    while True:
        cs = [Polynomial([rng.randint(-bound, bound) for _ in range(deg + 1)])
              for _ in range(order + 1)]
        if not cs[-1].is_zero():
            return OrePoly([RationalFunction(c) for c in cs])


class TestArithmetic:
    def test_commutation_rule(self):
        # D*x = x*D + 1
        x_op = op([0, 1])
        prod = ore_mul(D_OP, x_op)
        assert prod == op([1, 0], [0, 1])

    def test_apply(self):
        # (D^2 - 1)(x^2) = 2 - x^2
        img = F_EXP.apply(rf(0, 0, 1))
        assert img == rf(2, 0, -1)

    def test_apply_composition(self):
        rng = random.Random(7)
        for _ in range(20):
            a, b = small_ops(rng, 2), small_ops(rng, 1)
            y = rf(rng.randint(-3, 3), rng.randint(-3, 3), 1)
            assert ore_mul(a, b).apply(y) == a.apply(b.apply(y))

    def test_mul_associative(self):
        rng = random.Random(3)
        for _ in range(15):
            a, b, c = (small_ops(rng, rng.randint(0, 2)) for _ in range(3))
            assert ore_mul(ore_mul(a, b), c) == ore_mul(a, ore_mul(b, c))

    def test_order_adds_under_mul(self):
        assert ore_mul(F_2F1A, F_EXP).order == 4


class TestAdjoint:
    def test_adjoint_of_d(self):
        assert adjoint(D_OP) == op([], [-1])

    def test_involution_and_antihomomorphism(self):
        rng = random.Random(11)
        for _ in range(15):
            a, b = small_ops(rng, 2), small_ops(rng, 2)
            assert adjoint(adjoint(a)) == a
            assert adjoint(ore_mul(a, b)) == ore_mul(adjoint(b), adjoint(a))

    def test_fixture_involution(self):
        for L in (F_2F1A, F_ORD3, F_QUINTIC):
            assert adjoint(adjoint(L)) == L


class TestDivision:
    def test_reconstruction(self):
        rng = random.Random(5)
        for _ in range(20):
            a, b = small_ops(rng, rng.randint(1, 3)), small_ops(rng, rng.randint(1, 2))
            q, r = right_divmod(a, b)
            assert a == ore_mul(q, b) + r
            assert r.order < b.order

    def test_exact_division_of_product(self):
        q, r = right_divmod(ore_mul(F_EXP, F_2F1A), F_2F1A)
        assert r.is_zero() and q == F_EXP


class TestLclm:
    def test_constants_and_exponentials(self):
        # solutions {1, e^x}: D^2 - D
        got = lclm(D_OP, op([-1], [1]))
        assert got == op([], [-1], [1])

    def test_right_divisibility(self):
        m = lclm(F_EXP, F_2F1A)
        for f in (F_EXP, F_2F1A):
            _, r = right_divmod(m, f)
            assert r.is_zero()
        assert m.order == 4

    def test_l2_fixture(self):
        assert F_L2.order == 4
        for f in (D2, F_2F1A):
            _, r = right_divmod(F_L2, f)
            assert r.is_zero()

    def test_common_factor_drops_order(self):
        # both have solution space containing solutions of D
        a = ore_mul(op([-1], [1]), D_OP)     # solutions {1, e^x}
        b = ore_mul(op([1], [1]), D_OP)      # solutions {1, e^-x}
        assert lclm(a, b).order == 3

    def test_order_zero_returns_other(self):
        assert lclm(op([7]), F_2F1A) == primitive_integer_form(F_2F1A)


class TestSymmetricProduct:
    def test_exponentials(self):
        # (e^x)*(e^x) = e^{2x}: D - 2
        e1 = op([-1], [1])
        assert symmetric_product(e1, e1) == op([-2], [1])

    def test_powers_of_x(self):
        # solutions x^2 and x^3 multiply to x^5: xD - 5
        a = op([-2], [0, 1])
        b = op([-3], [0, 1])
        assert symmetric_product(a, b) == op([-5], [0, 1])

    def test_order_two_times_two(self):
        got = symmetric_product(F_EXP, op([1], [], [1]))
        # products of {e^x, e^-x} and {sin, cos}: 4-dimensional
        assert got.order == 4


class TestSymmetricPower:
    def test_s1_is_identity(self):
        assert symmetric_power(F_2F1A, 1) == primitive_integer_form(F_2F1A)

    def test_trig_square(self):
        # {sin^2, sin cos, cos^2}: D^3 + 4D
        got = symmetric_power(op([1], [], [1]), 2)
        assert got == op([], [4], [], [1])

    def test_exp_square(self):
        # solutions {e^2x, 1, e^-2x}
        got = symmetric_power(F_EXP, 2)
        assert got == op([], [-4], [], [1])

    def test_quintic_small_orders(self):
        assert symmetric_power(F_QUINTIC, 2).order == 9
        assert symmetric_power(F_QUINTIC, 3).order == 15

    def test_l2_small_orders(self):
        assert symmetric_power(F_L2, 2).order == 10

    def test_advisory_order_probe_matches(self):
        for L, s, expect in [(F_QUINTIC, 2, 9), (F_L2, 2, 10), (F_QUINTIC, 3, 15)]:
            assert symmetric_power_order(L, s) == expect

    def test_symmetric_square_solution_check(self):
        # y = cosh: y^2 = (cosh 2x + 1)/2 must satisfy sym^2(D^2-1)
        M = symmetric_power(F_EXP, 2)
        # check on the rational certificate instead: apply to exp via series
        # is covered elsewhere; here verify sin/cos algebra exactly:
        # (D^3+4D) annihilates sin^2 = (1-cos 2x)/2 <=> D^2+4 annihilates cos 2x
        assert M == op([], [-4], [], [1])


class TestTransforms:
    def test_translate_moves_singularities(self):
        pts, irr = singular_support(translate(F_EX1, 1))
        assert (pts, irr) == ([F(-2), F(-1), F(0)], False)

    def test_translate_inverse(self):
        assert translate(translate(F_2F1A, F(3, 2)), F(-3, 2)) == F_2F1A

    def test_infinity_on_exponential(self):
        # D - 1 -> t^2 D + 1
        got = transform_infinity(op([-1], [1]))
        assert got == op([1], [0, 0, 1])

    def test_infinity_involution(self):
        for L in (F_2F1A, F_EX1, F_QUINTIC):
            twice = transform_infinity(transform_infinity(L))
            assert twice == primitive_integer_form(L)


class TestNormalForms:
    def test_primitive_integer_form_fixture(self):
        prim = primitive_integer_form(F_2F1A)
        assert integer_coeff_lists(prim) == [[1], [-40, 62], [0, -48, 48]]

    def test_primitive_idempotent_and_scale_invariant(self):
        rng = random.Random(13)
        for _ in range(10):
            a = small_ops(rng, 2)
            prim = primitive_integer_form(a)
            assert primitive_integer_form(prim) == prim
            f = rf(rng.randint(1, 5), rng.randint(1, 3))
            assert primitive_integer_form(f * a) == prim

    def test_int_lists_roundtrip(self):
        lists = integer_coeff_lists(primitive_integer_form(F_ORD3))
        assert operator_from_int_lists(lists) == primitive_integer_form(F_ORD3)

    def test_int_lists_rejects_rational(self):
        bad = OrePoly([RationalFunction(Polynomial([1]), Polynomial([0, 1])),
                       RationalFunction(Polynomial([1]))])
        with pytest.raises(ValueError):
            integer_coeff_lists(bad)


class TestSingularSupport:
    def test_fixture_supports(self):
        assert singular_support(F_EX1) == ([F(-1), F(0), F(1)], False)
        assert singular_support(F_ORD3) == ([F(-1), F(0), F(1)], False)
        assert singular_support(F_ORD3B) == ([F(0), F(1), F(2)], False)
        assert singular_support(F_2F1A) == ([F(0), F(1)], False)

    def test_irrational_support_flagged(self):
        # 256x^5 - 3125 has no rational roots
        assert singular_support(F_QUINTIC) == ([], True)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3),
       st.lists(st.integers(-6, 6), min_size=1, max_size=3))
def test_divmod_property(ac, bc):
    a = OrePoly([rf(c) for c in ac] + [rf(0, 1)])
    b = OrePoly([rf(c) for c in bc] + [rf(1, 1)])
    q, r = right_divmod(a, b)
    assert a == ore_mul(q, b) + r and r.order < b.order
