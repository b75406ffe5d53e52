#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Scale-invariant eigenvalue functionals, and the sharp constants they are compared with
"""

from typing import Callable, Dict, NamedTuple

from geometry import constants as c
from geometry.triangle import GeometricSummary, harmonic

###############
# Functionals #
###############

# Each functional takes the geometric summary and mu1 <= mu2 of the same triangle


def mu1_S2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return mu1 * g.sumsq


def mu1_L2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return mu1 * g.perimeter ** 2


def mu1_A(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return mu1 * g.area


def mu1_D2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    """Cheng functional."""
    return mu1 * g.diameter ** 2


def excess_functional(delta: float) -> Callable:
    """mu1 (A + delta E_T)"""

    def f(g: GeometricSummary, mu1: float, mu2: float) -> float:
        return mu1 * (g.area + delta * g.excess)

    return f


def harmonic_A(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return harmonic(mu1, mu2) * g.area


def arithmetic_A2_S2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return (mu1 + mu2) / 2 * g.area ** 2 / g.sumsq


def product_A3_S2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return mu1 * mu2 * g.area ** 3 / g.sumsq


def harmonic_L2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return harmonic(mu1, mu2) * g.perimeter ** 2


def product_A2(g: GeometricSummary, mu1: float, mu2: float) -> float:
    return mu1 * mu2 * g.area ** 2


FUNCTIONALS: Dict[str, Callable] = {
    'mu1_S2': mu1_S2,
    'mu1_L2': mu1_L2,
    'mu1_A': mu1_A,
    'mu1_excess_1': excess_functional(1.0),
    'mu1_excess_3_2': excess_functional(1.5),
    'mu1_excess_opt': excess_functional(c.EXCESS_WEIGHT),
    'harmonic_A': harmonic_A,
    'arithmetic_A2_S2': arithmetic_A2_S2,
    'product_A3_S2': product_A3_S2,
    'harmonic_L2': harmonic_L2,
    'product_A2': product_A2,
    'mu1_D2': mu1_D2,
}


def evaluate(g: GeometricSummary, mu1: float, mu2: float, names=None) -> Dict[str, float]:
    """All (or the selected) functionals, plus the Szego-Weinberger margin of mu1 A."""

    names = list(FUNCTIONALS) if names is None else list(names)
    values = {name: FUNCTIONALS[name](g, mu1, mu2) for name in names}
    values['szego_weinberger_margin'] = c.SZEGO_WEINBERGER - mu1 * g.area

    return values


##########
# Claims #
##########

class Claim(NamedTuple):
    """functional <= constant over all triangles, attained at the equilateral one."""
    theorem: str
    functional: str
    constant: float
    degenerate_equality: bool = False


THEOREMS = (
    Claim('1upS', 'mu1_S2', c.MU1_S2),
    Claim('1upS', 'mu1_L2', c.MU1_L2),
    Claim('1upS', 'mu1_A', c.MU1_A),
    Claim('1opt', 'mu1_excess_1', c.MU1_A),
    Claim('1opt', 'mu1_excess_3_2', c.MU1_A),
    Claim('1opt', 'mu1_excess_opt', c.MU1_A, degenerate_equality=True),
    Claim('12upA', 'harmonic_A', c.HARMONIC_A),
    Claim('12upAS', 'arithmetic_A2_S2', c.ARITHMETIC_A2_S2),
    Claim('12upAS', 'product_A3_S2', c.PRODUCT_A3_S2),
)

CONJECTURES = (
    Claim('harmonic_perimeter', 'harmonic_L2', c.HARMONIC_L2),
    Claim('product_area', 'product_A2', c.PRODUCT_A2),
)

THEOREM_IDS = ('1upS', '1opt', '12upA', '12upAS', 'geom')
