#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Exact re-derivations with sympy. Sign checks replace pi and j01 by rational enclosures
(AccumBounds) and keep sqrt(3) exact, so a passed check does not depend on floating point.
"""

from functools import reduce
from typing import List, NamedTuple

import sympy as sp
from sympy import AccumBounds, Rational

from certificates.report import CheckResult, point_check
from utils.helper import log

PI_BOUNDS = AccumBounds(Rational('3.14159265358979'), Rational('3.14159265358980'))
J01_BOUNDS = AccumBounds(Rational('2.404825557695772'), Rational('2.404825557695773'))
SQRT3 = sp.sqrt(3)

r, s, q, x, pi = sp.symbols('r s q x pi', positive=True)


def fold(e):
    """
    Collapse an expression holding enclosures into one AccumBounds (exact expressions pass through).
    sympy keeps sums such as AccumBounds(...) + 3*sqrt(3) unevaluated; those are combined here.
    """

    e = sp.sympify(e)
    if isinstance(e, AccumBounds) or not e.has(AccumBounds):
        return e

    parts = [fold(arg) for arg in e.args]
    if e.is_Add:
        return reduce(_add, parts)
    if e.is_Mul:
        return reduce(_mul, parts)
    if e.is_Pow:
        return parts[0] ** parts[1]
    raise ValueError(f"Cannot fold enclosure through {e.func.__name__}.")


def _add(a, b):
    return b.__add__(a) if isinstance(b, AccumBounds) else a + b


def _mul(a, b):
    return b.__mul__(a) if isinstance(b, AccumBounds) else a * b


def upper(e):
    """Upper end of an enclosure (the value itself for exact numbers)."""
    e = fold(e)
    return e.max if isinstance(e, AccumBounds) else e


def lower(e):
    e = fold(e)
    return e.min if isinstance(e, AccumBounds) else e


def enclose(expr, pi_value=PI_BOUNDS):
    """Substitute the pi enclosure into a symbolic expression."""
    return fold(sp.sympify(expr).subs(pi, pi_value))


def _negative(name: str, e) -> CheckResult:
    top = upper(e)
    return point_check(f'strict:{name}', -float(top)) if bool(top < 0) else \
        CheckResult(name=f'strict:{name}', margin=-float(top), passed=False, samples=1)


def _positive(name: str, e) -> CheckResult:
    bottom = lower(e)
    return point_check(f'strict:{name}', float(bottom)) if bool(bottom > 0) else \
        CheckResult(name=f'strict:{name}', margin=float(bottom), passed=False, samples=1)


def _identity(name: str, difference) -> CheckResult:
    holds = sp.expand(sp.cancel(sp.together(difference))) == 0
    return point_check(f'strict:{name}', 1.0 if holds else -1.0)


##########################
# Symbolic U, V, W forms #
##########################

def uvw(r_=r, s_=s, pi_=pi):
    U = (Rational(320, 9) * pi_ ** 2 + 216) * (r_ ** 2 + s_ ** 2) - 324 * SQRT3 * r_ * s_ \
        + Rational(640, 9) * pi_ ** 2 - 864
    V = 4 * (r_ + 1) ** 3 + 45 * (r_ - 1) * (s_ ** 2 - 1)
    W = Rational(4480, 3) * pi_ ** 2 * (r_ - 1) * (r_ + 1) ** 2 * (s_ ** 2 - 1)
    return U, V, W


class ConvexityDerivation(NamedTuple):
    second_derivative: sp.Expr
    cubic: sp.Expr
    matches: bool


def derive_convexity_cubic() -> ConvexityDerivation:
    """
    d^2/ds^2 (U V + W) with r = x + 1, its expanded form, and the lower bound obtained by dropping
    the s^2 term, replacing sqrt3 s by 1 and pi^2 by 9.
    """

    U, V, W = uvw()
    second = sp.expand(sp.diff(U * V + W, s, 2).subs(r, x + 1))

    quoted = (432 * (32 - 132 * x + 114 * x ** 2 + 49 * x ** 3)
              + Rational(640, 9) * pi ** 2 * (32 + 306 * x + 282 * x ** 2 + 91 * x ** 3)
              - 87480 * x * (x + 1) * SQRT3 * s
              + 480 * (40 * pi ** 2 + 243) * x * s ** 2)

    reduced = sp.expand((432 * (32 - 132 * x + 114 * x ** 2 + 49 * x ** 3)
                         + 640 * (32 + 306 * x + 282 * x ** 2 + 91 * x ** 3)
                         - 87480 * x * (x + 1)))
    cubic = 34304 + 51336 * x + 142248 * x ** 2 + 79408 * x ** 3

    matches = sp.expand(second - quoted) == 0 and sp.expand(reduced - cubic) == 0
    if not matches:
        log("Convexity cubic does not follow from the second derivative of U V + W.", verbosity=1, color='red')

    return ConvexityDerivation(second_derivative=second, cubic=cubic, matches=bool(matches))


def boundary_polynomials():
    """Trapezoid edges: (name, U V + W restricted to the edge in x, quoted polynomial, ratio)."""

    c = 4 + 3 * SQRT3

    s0 = (x - Rational(1, 2)) * ((160 * pi ** 2 + 972) * x ** 4 + (1760 * pi ** 2 + 10692) * x ** 3
                                 + (4680 * pi ** 2 + 32805) * x ** 2 + (3400 * pi ** 2 + 35235) * x
                                 + (-3100 * pi ** 2 + 34020))
    diag = (x - Rational(2, 5)) * ((7000000 * pi ** 2 + 7441875 * c) * x ** 4
                                   + (21400000 * pi ** 2 + 15278625 * c) * x ** 3
                                   + (34200000 * pi ** 2 + 8693325 * c) * x ** 2
                                   + (7976000 * pi ** 2 + 12510855 * c) * x
                                   + (-10211200 * pi ** 2 + 11572632 * c))
    fifth = ((243000 + 40000 * pi ** 2) * x ** 5 + (2551500 - 145800 * SQRT3 + 420000 * pi ** 2) * x ** 4
             + (7341030 - 1312200 * SQRT3 + 1095600 * pi ** 2) * x ** 3
             + (6530625 - 2996190 * SQRT3 + 934600 * pi ** 2) * x ** 2
             + (4352859 - 3623130 * SQRT3 - 138480 * pi ** 2) * x
             + (-4211433 - 2383830 * SQRT3 + 820260 * pi ** 2))

    def edge(r_, s_):
        U, V, W = uvw(r_, s_)
        return U * V + W

    return [
        ('s=0', edge(x + Rational(3, 2), 0), s0, Rational(8, 9)),
        ('s=2-r', edge(x + Rational(8, 5), Rational(2, 5) - x), diag, Rational(4, 5625)),
        ('s=2/5', edge(x + Rational(3, 2), Rational(2, 5)), fifth, Rational(4, 1125)),
    ]


def _coefficients(poly, var=x) -> List:
    return sp.Poly(sp.expand(poly), var).all_coeffs()[::-1]


########################
# Theorem 1upS (q, p)  #
########################

def strict_checks_1upS() -> List[CheckResult]:
    """
    Q_c - Q_1 = -(128 pi^2 + 243)(q - 6)(q - q_c1) / (384 pi^2) and
    Q_l - Q_1 = q ((621 pi^2 - 32 pi^4 - 5832) q + 1458 pi^2) / (384 pi^4), so each difference is
    positive exactly on its crossing interval; the crossing points are then bounded with enclosures.
    """

    Q_c = -q ** 2 / 4 + 4 * q - 12
    Q_l = 9 * (4 * pi ** 2 - 27) * q ** 2 / (16 * pi ** 4)
    Q_1 = ((32 * pi ** 2 + 243) * q ** 2 - 1458 * q) / (384 * pi ** 2)
    q_c1 = 768 * pi ** 2 / (128 * pi ** 2 + 243)
    q_l1 = 1458 * pi ** 2 / (32 * pi ** 4 - 621 * pi ** 2 + 5832)
    slope = 621 * pi ** 2 - 32 * pi ** 4 - 5832

    checks = [
        _identity('Qc-Q1_factorization',
                  (Q_c - Q_1) * 384 * pi ** 2 + (128 * pi ** 2 + 243) * (q - 6) * (q - q_c1)),
        _identity('Ql-Q1_factorization', (Q_l - Q_1) * 384 * pi ** 4 - q * (slope * q + 1458 * pi ** 2)),
        _negative('Ql-Q1_slope', enclose(slope)),
        _negative('qc1_below_5.04', enclose(q_c1) - Rational('5.04')),
        _positive('ql1_above_5.09', enclose(q_l1) - Rational('5.09')),
    ]

    return checks


######################
# Theorem 1opt (r,s) #
######################

def strict_checks_1opt() -> List[CheckResult]:
    """Endpoint values and coefficient signs of every reduction, with pi and j01 enclosed."""

    P, J = PI_BOUNDS, J01_BOUNDS
    c = 1 - J ** 2 / P ** 2
    checks = []

    # Sector at s = 2 - r (divided by r - 1)
    for rv in (Rational(1), Rational(5, 4)):
        checks.append(_negative(f'sector_reduced_r={rv}', (rv + 3) - c * sp.sqrt(27 * (rv + 1) * (3 - rv))))

    # Linearised rectangle inequality
    for rv in (Rational(5, 4), Rational(3, 2)):
        checks.append(_negative(f'sector_rectangle_r={rv}',
                                (rv - 1) * Rational(81, 4) - c ** 2 * 27 * (rv + 1) * Rational(8, 9)))

    # Linear trial function endpoints
    def linearrs(rv, s_left):
        return ((rv + 1) ** 2 - Rational(7, 54) * P ** 2 * (3 + rv ** 2 * s_left ** 2)
                - Rational(5, 12) * sp.sqrt(27 * (rv ** 2 - 1) * (rv - 1) * (3 - rv)))

    for name, s_left, ends in (('linear_upper', Rational(1, 3), (Rational(5, 4), Rational(3, 2))),
                               ('linear_corner', Rational(2, 5), (Rational(3, 2), Rational(8, 5)))):
        for rv in ends:
            checks.append(_negative(f'{name}_r={rv}', linearrs(rv, s_left)))

    # Boundary polynomials: positive cofactors, and the s = 2/5 quintic convex and negative at both ends
    for edge, restricted, quoted, ratio in boundary_polynomials():
        checks.append(_identity(f'edge_{edge}_ratio', restricted - ratio * quoted))

        if edge == 's=2/5':
            coefficients = _coefficients(quoted)
            for k in range(2, len(coefficients)):
                checks.append(_positive(f'edge_{edge}_x^{k}', enclose(coefficients[k])))
            for xv in (Rational(0), Rational(1, 10)):
                checks.append(_negative(f'edge_{edge}_x={xv}', enclose(quoted.subs(x, xv))))
        else:
            cofactor = sp.cancel(quoted / (x - (Rational(1, 2) if edge == 's=0' else Rational(2, 5))))
            for k, coefficient in enumerate(_coefficients(cofactor)):
                checks.append(_positive(f'edge_{edge}_cofactor_x^{k}', enclose(coefficient)))

    checks.append(_positive('weight_majorant', Rational(12, 7) - P ** 2 / J ** 2))

    return checks


def strict_checks_lemma83() -> List[CheckResult]:
    """The rearrangement behind S^2 <= (12/sqrt3)(A + 3/2 E_T) as an exact identity."""

    w = 1 + 3 * s ** 2
    direct = (2 * r - (1 + s ** 2)) ** 2 - 3 * (r ** 2 - 1) * (1 - s ** 2)
    rearranged = w * (r - 2 * (1 + s ** 2) / w) ** 2 + 3 * s ** 2 * (1 - s ** 2) ** 2 / w

    return [_identity('lemma83_rearrangement', direct - rearranged)]
