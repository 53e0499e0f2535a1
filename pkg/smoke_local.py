from fractions import Fraction as F

from dct.algebra import INF, Polynomial, poly, rational_roots, RationalFunction
from dct.ore import OrePoly, lclm
from dct.localsolve import (
    classify_point, indicial_polynomial, local_basis, ordinary_series_basis,
    apply_to_series, series_from_polynomial, laurent_at_zero, PuiseuxSeries,
    NotPuiseux,
)


def op(*plists):
    return OrePoly([RationalFunction(Polynomial(p)) for p in plists])


F_2F1A = op([F(1, 48)], [F(-5, 6), F(31, 24)], [0, -1, 1])
F_EX1 = op([], [-2, 0, 6], [0, -3, 0, 3])
F_EXP = op([-1], [], [1])

print("== indicial ==")
for pt, name in [(F(0), "0"), (F(1), "1"), (INF, "inf")]:
    ind = indicial_polynomial(F_2F1A, pt)
    print(f"F_2F1A at {name}: roots {rational_roots(ind).roots}")
print("F_EX1 at 0 roots:", rational_roots(indicial_polynomial(F_EX1, F(0))).roots)

print("== classify ==")
print("F_2F1A at 0:", classify_point(F_2F1A, F(0)))
print("F_2F1A at 1/2:", classify_point(F_2F1A, F(1, 2)))
print("F_EXP at inf:", classify_point(F_EXP, INF))
print("D^2 at inf:", classify_point(op([], [], [1]), INF))
print("xD^2+2D at inf:", classify_point(op([], [2], [0, 1]), INF))
print("2xD-1 at 0:", classify_point(op([-1], [0, 2]), F(0)))
L_LOG1 = op([1], [0, -1], [0, 0, 1])
print("x^2D^2-xD+1 at 0:", classify_point(L_LOG1, F(0)))
L_LOG2 = op([1], [0, -1], [0, -1, 1])
print("x(x-1)D^2-xD+1 at 0:", classify_point(L_LOG2, F(0)))
L_IRR = op([-2], [0, 0, 1], [0, 0, 0, 0])   # x^2 D - 2 -> irrational? no: exp roots
L_IRRAT = op([2], [0, -2, 0], [0, 0, 1])    # indicial with irrational roots?
print("NotPuiseux carriers:")
for L, pt in [(L_LOG1, F(0))]:
    try:
        local_basis(L, pt)
    except NotPuiseux as e:
        print("  raised:", e, "| kind:", e.classification.kind, "| exps:", e.classification.exponents)

print("== local bases F_2F1A ==")
for pt, name in [(F(0), "0"), (F(1), "1"), (INF, "inf")]:
    b = local_basis(F_2F1A, pt, nterms=4)
    print(f"at {name}: kind={b.kind} exps={b.exponents} q={b.ramification}")
    for s in b.solutions:
        print("   ", dict(sorted(s.terms.items())[:3]))
        img = apply_to_series(F_2F1A, s)
        assert not img.terms, (pt, s, img)
print("all annihilated OK")

print("== dense views ==")
b = local_basis(F_2F1A, INF, nterms=3)
s = b.solutions[-1]
print("series:", dict(sorted(s.terms.items())[:2]))
print("q:", s.ramification, "start:", s.start, "trunc:", s.truncation)
print("coeffs[:10]:", s.coeffs[:10])

print("== ordinary basis ==")
ob = ordinary_series_basis(F_EXP, F(0), nterms=8)
print("kind:", ob.kind, "exps:", ob.exponents)
for s in ob.solutions:
    print("   ", dict(sorted(s.terms.items())[:4]))

print("== no-log integer-distinct ==")
L_NOLOG = lclm(op([1], [0, 1]), op([-2], [0, 1]))
bn = local_basis(L_NOLOG, F(0), nterms=5)
print("exps:", bn.exponents, "kind:", bn.kind)
for s in bn.solutions:
    print("   ", dict(sorted(s.terms.items())[:3]), "ann:", not apply_to_series(L_NOLOG, s).terms)

print("== misc ==")
s = series_from_polynomial(poly(0, 0, 1), F(0))
img = apply_to_series(F_EXP, s)
print("(D^2-1)(x^2):", sorted(img.terms.items()), "trunc:", img.trunc)
# spec TRIVIAL example: multiply a series at inf by x: exponent shift -1
si = local_basis(F_2F1A, INF, nterms=3).solutions[0]
xi = apply_to_series(op([0, 1]), si)   # operator 'x'
print("x * (t^{1/8}+...):", sorted(xi.terms.items())[:2])
# order-0 operator and composition property
A = op([0, 1], [1])     # D + x
B = op([2], [0, 1])     # xD + 2
AB = None
from dct.ore import ore_mul
AB = ore_mul(A, B)
f = local_basis(F_2F1A, F(0), nterms=8).solutions[1]
lhs = apply_to_series(AB, f)
rhs = apply_to_series(A, apply_to_series(B, f))
common = min(x for x in [lhs.trunc, rhs.trunc] if x is not None)
ok = all(lhs.coeff(e) == rhs.coeff(e) for e in set(lhs.terms) | set(rhs.terms) if e < common)
print("composition agrees on common window:", ok)
