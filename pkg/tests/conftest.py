"""Shared fixture operators used across the test suite.

These are the running examples of the package: hypergeometric operators with
known local exponent data, two order-3 operators distinguished only by the
position of their singularities, the annihilator of the roots of a quintic,
and a couple of classical toys. All are written lowest D-power first.
"""

from fractions import Fraction as F

import pytest

from dct.algebra import Polynomial, RationalFunction
from dct.ore import OrePoly, lclm


def op(*plists):
    """Operator from coefficient lists, index i = coefficient of D^i."""
    return OrePoly([RationalFunction(Polynomial(p)) for p in plists])


def _mulp(*polys):
    out = Polynomial([1])
    for p in polys:
        out = out * p
    return out


def _xshift(a, k):
    # (x + a)^k as a Polynomial
    return _mulp(*([Polynomial([a, 1])] * k))


# 3x(x^2-1) D^2 + 2(3x^2-1) D; solutions 1 and int dx/(x(x^2-1))^(2/3)
F_EX1 = op([], [-2, 0, 6], [0, -3, 0, 3])

# (x^2-x) D^2 + (31/24 x - 5/6) D + 1/48
F_2F1A = op([F(1, 48)], [F(-5, 6), F(31, 24)], [0, -1, 1])

# (x^2-x) D^2 + (49/6 x - 7/3) D + 12
F_2F1B = op([12], [F(-7, 3), F(49, 6)], [0, -1, 1])

# (x^2-x) D^2 + (65/24 x - 7/6) D + 35/48
F_2F1C = op([F(35, 48)], [F(-7, 6), F(65, 24)], [0, -1, 1])

# (x^2-x) D^2 + (164/15 x - 16/3) D + 1403/60
F_2F1D = op([F(1403, 60)], [F(-16, 3), F(164, 15)], [0, -1, 1])

# (256x^5-3125) D^4 + 3200x^4 D^3 + 9840x^3 D^2 + 6120x^2 D - 504x
F_QUINTIC = op([0, -504], [0, 0, 6120], [0, 0, 0, 9840],
               [0, 0, 0, 0, 3200], [-3125, 0, 0, 0, 0, 256])

F_EXP = op([-1], [], [1])          # D^2 - 1

D2 = op([], [], [1])               # D^2

F_L2 = lclm(D2, F_2F1A)

# order 3, singularities {0, 1, -1, inf}
_o3_lead = _mulp(_xshift(-1, 3), _xshift(0, 3), _xshift(1, 3))
_o3_d2 = F(19, 5) * _mulp(_xshift(-1, 2), _xshift(0, 2), _xshift(1, 2),
                          Polynomial([F(-195, 152), F(22069, 9576), 1]))
# the x^9/x^8/x^6 leading terms force the D-coefficient scale +99/80 (falling
# factorial sum 1*FF3 + 19/5*FF2 + c*FF1 - 9/20 has roots -4/5,-3/4,3/4 only
# for c = +99/80); the finite-point exponent triples confirm the same sign
_o3_d1 = F(99, 80) * _mulp(_xshift(-1, 1), _xshift(0, 1), _xshift(1, 1),
                            Polynomial([F(205, 66), F(16795789, 5346),
                                        F(-105923, 5346), F(-117001919, 37422), 1]))
_o3_d0 = Polynomial([F(-3, 32), F(-828238469, 272160), F(-2560752251, 272160),
                     F(-19723513, 4320), F(256382531, 27216),
                     F(517319279, 68040), F(-9, 20)])
F_ORD3 = OrePoly([RationalFunction(p) for p in (_o3_d0, _o3_d1, _o3_d2, _o3_lead)])

# same initial exponents as F_ORD3 but singularities {0, 1, 2, inf}
_o3b_lead = _mulp(_xshift(-2, 3), _xshift(-1, 3), _xshift(0, 3))
_o3b_d2 = F(19, 5) * _mulp(_xshift(-2, 2), _xshift(-1, 2), _xshift(0, 2),
                           Polynomial([F(2420, 1197), F(-16547, 9576), 1]))
_o3b_d1 = F(99, 80) * _mulp(_xshift(-2, 1), _xshift(-1, 1), _xshift(0, 1),
                            Polynomial([F(-3200, 6237), F(7980386, 56133),
                                        F(-8566381, 37422), F(8816399, 112266), 1]))
_o3b_d0 = Polynomial([F(320, 63), F(1144387, 19440), F(5167531, 54432),
                      F(-2904319, 30240), F(-20050393, 136080),
                      F(5640547, 68040), F(-9, 20)])
F_ORD3B = OrePoly([RationalFunction(p) for p in (_o3b_d0, _o3b_d1, _o3b_d2, _o3b_lead)])


@pytest.fixture
def ops():
    """Bundle of the fixture operators, for tests that want them by name."""
    return {
        "F_EX1": F_EX1, "F_2F1A": F_2F1A, "F_2F1B": F_2F1B, "F_2F1C": F_2F1C,
        "F_2F1D": F_2F1D, "F_QUINTIC": F_QUINTIC, "F_EXP": F_EXP, "D2": D2,
        "F_L2": F_L2, "F_ORD3": F_ORD3, "F_ORD3B": F_ORD3B,
    }
