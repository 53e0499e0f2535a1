"""Certificate searches: ansatz, monomial/symmetric-power, singular
structure, growth probe, and independent verification."""

from fractions import Fraction as F

import pytest
from conftest import (D2, F_2F1A, F_2F1B, F_2F1C, F_2F1D, F_EX1, F_EXP, F_L2,
                      F_ORD3, F_ORD3B, F_QUINTIC, op)

from dct.algebra import INF, Polynomial, RationalFunction, poly
from dct.certsearch import (CONSISTENT_WITH_LINEAR, INCONCLUSIVE,
                            PSEUDOCONSTANT, SINGULAR_STRUCTURE, SUPERLINEAR,
                            SYMPOW_PSEUDOCONSTANT, AnsatzConfig,
                            ansatz_search, clearing_factor, growth_probe,
                            monomial_search, polytope_counts,
                            singularity_certificate,
                            sympow_pseudoconstant_search, verify_certificate)
from dct.integrality import (complete_integrality, is_constant,
                             is_pseudoconstant, reduce)
from dct.localsolve import (IRRATIONAL_EXPONENT, IRREGULAR, LOGARITHMIC,
                            NotPuiseux)
from dct.ore import D_OP, OrePoly, lclm, ore_mul, symmetric_power

ONE = OrePoly([1])
# x^2 D^2 + x D: solutions 1 and log x
XD_SQUARED = op([], [0, 1], [0, 0, 1])
# x^2 D^2 + x D - 2: indicial roots are the square roots of 2
SQRT2_EXP = op([-2], [0, 1], [0, 0, 1])


class TestClearingFactor:
    def test_all_nonnegative_exponents(self):
        assert clearing_factor(F_2F1A) == Polynomial([1])

    def test_2f1c(self):
        # min exponents -1/6 at 0 and -13/24 at 1, both ceil to 1
        assert clearing_factor(F_2F1C) == poly(0, 1) * poly(-1, 1)

    def test_ord3(self):
        # table mins: -1 at 0, -2 at 1, -2/3 at -1
        expect = poly(0, 1) * poly(-1, 1) ** 2 * poly(1, 1)
        assert clearing_factor(F_ORD3) == expect

    def test_irregular_point_rejected(self):
        # x^3 D^2 + 1 has an exponential singularity at 0
        with pytest.raises(NotPuiseux):
            clearing_factor(op([1], [], [0, 0, 0, 1]))


class TestAnsatzSearch:
    def test_ex1_contains_one(self):
        classes = ansatz_search(F_EX1)
        assert any(c.rep == ONE for c in classes)

    def test_results_are_pseudoconstants_and_not_constant(self):
        for c in ansatz_search(F_EX1):
            assert is_pseudoconstant(c)
            assert not is_constant(c)

    def test_ord3b_empty_at_one_escalation(self):
        cfg = AnsatzConfig(max_escalations=1)
        assert ansatz_search(F_ORD3B, cfg) == []

    def test_explicit_bounds_respected(self):
        # bounds {0: 0, 1: 0} leave only polynomial numerators over u
        cfg = AnsatzConfig(denom_bounds={F(0): 0, F(1): 0}, max_escalations=0)
        classes = ansatz_search(F_EX1, cfg)
        assert any(c.rep == ONE for c in classes)

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            ansatz_search(F_EX1, AnsatzConfig(denom_bounds={F(0): -1}))

    def test_zero_operator_rejected(self):
        with pytest.raises(ValueError):
            ansatz_search(OrePoly([]))

    def test_irregular_operator_raises(self):
        with pytest.raises(NotPuiseux):
            ansatz_search(F_EXP)


class TestMonomialSearch:
    def test_2f1c_hits_at_power_five(self):
        cert = monomial_search(F_2F1C, 6)
        assert cert is not None and cert.s == 5
        assert cert.kind == SYMPOW_PSEUDOCONSTANT
        assert cert.P == op([0, -1, 3, -3, 1])     # x(x-1)^3
        assert verify_certificate(cert)

    def test_2f1c_nothing_below_five(self):
        assert monomial_search(F_2F1C, 4) is None

    def test_2f1d_nothing_up_to_three(self):
        assert monomial_search(F_2F1D, 3) is None

    def test_counts_match_searched_powers(self):
        cert = monomial_search(F_2F1C, 6)
        assert cert.polytope_counts == {1: 0, 2: 0, 3: 0, 4: 0, 5: 1}

    def test_polytope_counts_prefix(self):
        counts = polytope_counts(F_2F1C, 6)
        assert [counts[s] for s in range(1, 5)] == [0, 0, 0, 0]
        assert counts[5] >= 1 and counts[6] >= 1

    def test_deterministic(self):
        a = monomial_search(F_2F1C, 5)
        b = monomial_search(F_2F1C, 5)
        assert a.P == b.P and a.s == b.s

    def test_bad_smax_rejected(self):
        with pytest.raises(ValueError):
            monomial_search(F_2F1C, 0)


class TestSympowSearch:
    def test_2f1b_square_certificate_degrees(self):
        cert = sympow_pseudoconstant_search(F_2F1B, 2)
        assert cert is not None and cert.s == 2
        assert cert.kind == SYMPOW_PSEUDOCONSTANT
        assert cert.P.order == 2
        degs = [cert.P[j].num.degree for j in (2, 1, 0)]
        assert degs == [11, 10, 9]
        assert all(cert.P[j].den.degree == 0 for j in range(3))
        assert verify_certificate(cert)

    def test_2f1a_is_immediate(self):
        cert = sympow_pseudoconstant_search(F_2F1A, 1)
        assert cert is not None and cert.s == 1
        assert cert.kind == PSEUDOCONSTANT
        assert cert.P == ONE
        assert verify_certificate(cert)

    def test_quintic_has_none(self):
        # all solutions algebraic: no power can carry a pseudoconstant
        assert sympow_pseudoconstant_search(F_QUINTIC, 2) is None


class TestSingularityCertificate:
    def test_exp_irregular_at_infinity(self):
        cert = singularity_certificate(F_EXP)
        assert cert is not None and cert.kind == SINGULAR_STRUCTURE
        assert cert.point == INF and cert.classification == IRREGULAR
        assert verify_certificate(cert)

    def test_log_at_zero(self):
        cert = singularity_certificate(XD_SQUARED)
        assert cert.point == F(0) and cert.classification == LOGARITHMIC
        assert verify_certificate(cert)

    def test_irrational_exponent(self):
        cert = singularity_certificate(SQRT2_EXP)
        assert cert.point == F(0)
        assert cert.classification == IRRATIONAL_EXPONENT
        assert verify_certificate(cert)

    def test_full_puiseux_operator_has_none(self):
        assert singularity_certificate(F_2F1A) is None
        assert singularity_certificate(F_ORD3) is None


class TestGrowthProbe:
    def test_quintic_linear(self):
        probe = growth_probe(F_QUINTIC, 4)
        assert [o for _, o in probe.orders] == [4, 9, 15, 21]
        assert probe.classification == CONSISTENT_WITH_LINEAR

    def test_exp_linear(self):
        probe = growth_probe(F_EXP, 5)
        assert [o for _, o in probe.orders] == [2, 3, 4, 5, 6]
        assert probe.classification == CONSISTENT_WITH_LINEAR

    def test_l2_superlinear_prefix(self):
        probe = growth_probe(F_L2, 3)
        assert [o for _, o in probe.orders] == [4, 10, 20]
        assert probe.classification == SUPERLINEAR

    def test_orders_strictly_increase(self):
        for L in (F_2F1C, F_EXP):
            probe = growth_probe(L, 4)
            orders = [o for _, o in probe.orders]
            assert all(a < b for a, b in zip(orders, orders[1:]))

    def test_adjoin_polynomials(self):
        # D^2 already right-divides D^2, so adjoining is a no-op there
        probe = growth_probe(D2, 3, adjoin_polynomials=True)
        assert probe.orders[0] == (1, 2)
        # F_2F1A gains the polynomial solutions 1, x
        probe = growth_probe(F_2F1A, 2, adjoin_polynomials=True)
        assert probe.orders[0][1] == lclm(F_2F1A, D2).order

    def test_smax_too_small(self):
        with pytest.raises(ValueError):
            growth_probe(F_EXP, 1)

    def test_two_point_probe_is_inconclusive(self):
        probe = growth_probe(F_EXP, 2)
        assert probe.classification == INCONCLUSIVE


class TestLclmProperties:
    def test_lclm_with_d_keeps_pseudoconstant(self):
        # every solution of F_2F1A is integral everywhere, and so are the
        # constants adjoined by D, so [1] stays completely integral
        N = lclm(F_2F1A, D_OP)
        c = reduce(ONE, N)
        assert is_pseudoconstant(c)
        # the lemma's conclusion: [1] integral mod both factors,
        # non-constant mod at least one
        assert complete_integrality(reduce(ONE, F_2F1A)).completely_integral
        assert complete_integrality(reduce(ONE, D_OP)).completely_integral
        assert not is_constant(reduce(ONE, F_2F1A))

    def test_lclm_with_d2_desk_check(self):
        # a certificate for lclm(F_2F1A, D^2) at power s forces one for
        # some power d <= s of F_2F1A itself
        N = lclm(F_2F1A, D2)
        cert = sympow_pseudoconstant_search(N, 1)
        if cert is not None:
            assert any(
                sympow_pseudoconstant_search(F_2F1A, d) is not None
                for d in range(1, cert.s + 1))

    def test_gauge_transform_transports_back(self):
        # L' annihilates the derivatives of F_2F1A's solutions: with
        # C = -(p2 D + p1)/p0, g = f' implies C.g = f, so L' = D.C - 1.
        p0, p1, p2 = F_2F1A[0], F_2F1A[1], F_2F1A[2]
        inv = RationalFunction(-1) / p0
        C = OrePoly([inv * p1, inv * p2])
        Lp = ore_mul(D_OP, C) - ONE
        classes = ansatz_search(Lp)
        assert classes, "gauge image should carry a pseudoconstant"
        for c in classes:
            back = reduce(ore_mul(c.rep, D_OP), F_2F1A)
            assert is_pseudoconstant(back)


class TestVerifyCertificate:
    def _c2f1c(self):
        return monomial_search(F_2F1C, 5)

    def test_searches_produce_verifiable_certificates(self):
        for cert in (self._c2f1c(),
                     sympow_pseudoconstant_search(F_2F1A, 1),
                     singularity_certificate(F_EXP)):
            assert verify_certificate(cert)

    def test_tampered_monomial_rejected(self):
        cert = self._c2f1c()
        cert.P = op([0, 0, -1, 3, -3, 1])          # x^2(x-1)^3
        assert not verify_certificate(cert)

    def test_tampered_power_rejected(self):
        cert = self._c2f1c()
        cert.s = 4
        assert not verify_certificate(cert)

    def test_tampered_operator_rejected(self):
        cert = self._c2f1c()
        cert.operator = F_2F1D
        assert not verify_certificate(cert)

    def test_zero_class_rejected(self):
        cert = self._c2f1c()
        cert.P = symmetric_power(F_2F1C, 5)        # reduces to zero
        assert not verify_certificate(cert)

    def test_constant_class_rejected(self):
        cert = sympow_pseudoconstant_search(F_2F1A, 1)
        cert.operator = D_OP
        cert.P = ONE                               # [1] mod D is a constant
        assert not verify_certificate(cert)

    def test_singular_structure_wrong_point(self):
        cert = singularity_certificate(F_EXP)
        cert.point = F(0)                          # ordinary point
        assert not verify_certificate(cert)

    def test_singular_structure_wrong_kind(self):
        cert = singularity_certificate(XD_SQUARED)
        cert.classification = IRREGULAR
        assert not verify_certificate(cert)

    def test_malformed_missing_p(self):
        cert = self._c2f1c()
        cert.P = None
        with pytest.raises(ValueError):
            verify_certificate(cert)

    def test_malformed_power(self):
        cert = self._c2f1c()
        cert.s = 0
        with pytest.raises(ValueError):
            verify_certificate(cert)

    def test_malformed_plain_kind_with_power(self):
        cert = self._c2f1c()
        cert.kind = PSEUDOCONSTANT                 # but s = 5
        with pytest.raises(ValueError):
            verify_certificate(cert)

    def test_malformed_unknown_kind(self):
        cert = self._c2f1c()
        cert.kind = "greatness"
        with pytest.raises(ValueError):
            verify_certificate(cert)

    def test_malformed_structure_without_point(self):
        cert = singularity_certificate(F_EXP)
        cert.point = None
        with pytest.raises(ValueError):
            verify_certificate(cert)

    def test_not_a_certificate(self):
        with pytest.raises(ValueError):
            verify_certificate("certificate")
