#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Closed-form upper bounds on the first Neumann eigenvalues of the canonical triangle (-1,0), (1,0), (a,b),
each one the Rayleigh quotient (or Poincare mean) of an explicit trial function
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from geometry.constants import EXCESS_WEIGHT, EXCESS_WEIGHT_MAJORANT, J01, PI, SQRT3
from geometry.triangle import Triangle, harmonic, normalize, summarize
from spectra import transplant
from utils.helper import DomainError, log

MU1 = 'mu1'
HARMONIC_MEAN = 'harmonic_mean'
ARITHMETIC_MEAN = 'arithmetic_mean'
PRODUCT = 'product'
EXCESS = 'mu1_excess'

# q/b below which the transplanted pair beats the sharp harmonic constant
HARMONIC_THRESHOLD = 2 * SQRT3 * 243 ** 2 / (1024 * PI ** 4 - 243 ** 2)


@dataclass(frozen=True)
class BoundValue:
    """
    One closed-form bound. value bounds the functional of kind `functional_kind`, multiplied by
    the area when `per_area` is set.
    """

    name: str
    value: float
    functional_kind: str
    valid: bool = True
    per_area: bool = False
    params: dict = field(default_factory=dict, compare=False)

    def rescaled(self, scale: float, area: float) -> 'BoundValue':
        """
        Move from the canonical triangle (area b) to a similar one with the given scale and area,
        as a bound on the bare eigenvalue functional.
        """

        if self.functional_kind in (PRODUCT,):
            factor = scale ** 4
        elif self.functional_kind == EXCESS:
            return self
        else:
            factor = scale ** 2
        value = self.value / factor
        if self.per_area:
            value = value / area
        return BoundValue(self.name, value, self.functional_kind, self.valid, False, self.params)


def _check(b: float):
    if not b > 0:
        raise DomainError(f"Apex height must be positive, got b = {b}.")


##########
# Linear #
##########

def linear_mu1_bound(a: float, b: float, gamma: float) -> BoundValue:
    """R[f + gamma g] with f = x - a/3, g = y - b/3."""

    _check(b)
    value = 18 * (1 + gamma ** 2) / (3 + (a + gamma * b) ** 2)

    return BoundValue('linear', value, MU1, params={'gamma': gamma})


def best_linear_closed_form(a, b):
    """min over gamma of R[f + gamma g] = 36 / (q + sqrt(q^2 - 12 b^2)) (vectorized)."""

    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    q = a ** 2 + b ** 2 + 3
    return 36 / (q + np.sqrt(np.maximum(q ** 2 - 12 * b ** 2, 0)))


def best_linear_mu1_bound(a: float, b: float) -> BoundValue:
    """
    Linear bound at the optimal gamma: the critical points solve
    ab gamma^2 + (3 + a^2 - b^2) gamma - ab = 0, and gamma -> +-inf gives 18/b^2.
    """

    _check(b)
    ratio = lambda g: 18 * (1 + g ** 2) / (3 + (a + g * b) ** 2)

    candidates = [(18 / b ** 2, math.inf)]
    try:
        roots = np.roots([a * b, 3 + a ** 2 - b ** 2, -a * b])
    except np.linalg.LinAlgError:
        roots = None

    if roots is not None and np.all(np.isfinite(roots)):
        # Discriminant (3 + a^2 - b^2)^2 + 4 a^2 b^2 >= 0: real roots
        for g in np.real(roots):
            candidates.append((ratio(float(g)), float(g)))

    # Root finding failed: golden section on a bracket
    else:
        log(f"No critical point found for ({a}, {b}), falling back to golden section.", verbosity=2, color='yellow')
        res = minimize_scalar(ratio, bracket=(-10.0, 0.0, 10.0), method='golden')
        candidates.append((float(res.fun), float(res.x)))

    value, gamma = min(candidates)

    return BoundValue('best_linear', value, MU1, params={'gamma': gamma})


##############
# Transplant #
##############

def transplanted_mu1_bound(a: float, b: float) -> BoundValue:
    """R[u1 o tau^-1] = ((32 pi^2 + 243) q - 1458) / (144 b^2)"""

    _check(b)
    return BoundValue('transplant', transplant.rayleigh_v1(a, b), MU1)


def cheng_mu1_bound(D: float) -> BoundValue:
    """4 j01^2 / D^2 for convex domains of diameter D."""

    if not D > 0:
        raise DomainError(f"Diameter must be positive, got {D}.")

    return BoundValue('cheng', 4 * J01 ** 2 / D ** 2, MU1)


##########################
# Harmonic / arithmetic  #
##########################

def harmonic_poly_bound(a: float, b: float) -> BoundValue:
    """
    H(R[f1], R[f2]) = 80 / (3 (3 + a^2)) with f1 = x - a/3 and f2 = (x - a/3)^2 - (3 + a^2)/18.
    Bounds H(mu1, mu2); multiply by A = b for the area-normalized functional.
    """

    _check(b)
    r1 = 18 / (3 + a ** 2)
    r2 = 360 / (7 * (3 + a ** 2))

    return BoundValue('harmonic_poly', harmonic(r1, r2), HARMONIC_MEAN, params={'R_f1': r1, 'R_f2': r2})


def harmonic_transplant_bound(a: float, b: float) -> BoundValue:
    """
    H(R[v1], R[gamma v1 + v2]) * A for the orthogonalized transplanted pair, in closed form.
    """

    _check(b)
    q = a ** 2 + b ** 2 + 3
    value = ((1024 * PI ** 4 - 243 ** 2) * q ** 2 + 12 * 243 ** 2 * b ** 2) / (4608 * PI ** 2 * b * q)

    return BoundValue('harmonic_transplant', value, HARMONIC_MEAN, per_area=True,
                      params={'gamma': transplant.ortho_gamma(a, b)})


def arithmetic_transplant_bound(a: float, b: float) -> BoundValue:
    """M(R[v1], R[v2]) = 2 pi^2 q / (9 b^2) = pi^2 S^2 / (9 A^2)"""

    _check(b)
    q = a ** 2 + b ** 2 + 3

    return BoundValue('arithmetic_transplant', 2 * PI ** 2 * q / (9 * b ** 2), ARITHMETIC_MEAN)


def geometric_product_bound(a: float, b: float) -> BoundValue:
    """mu1 mu2 = H(mu1, mu2) M(mu1, mu2) <= (best harmonic bound) * (arithmetic bound)."""

    h = min(harmonic_poly_bound(a, b).value, harmonic_transplant_bound(a, b).value / b)
    m = arithmetic_transplant_bound(a, b).value

    return BoundValue('harmonic_x_arithmetic', h * m, PRODUCT, params={'H': h, 'M': m})


def harmonic_cases(a: float, b: float) -> List[str]:
    """
    Which of the three arguments bounds H(mu1, mu2) A by 4 pi^2 / (3 sqrt3):
    equilateral (q/b = 2 sqrt3), transplanted pair (q/b below the threshold), polynomial pair.
    """

    _check(b)
    q = a ** 2 + b ** 2 + 3
    ratio = q / b

    cases = []
    if abs(ratio - 2 * SQRT3) < 1e-12:
        cases.append('equilateral')
    elif ratio < HARMONIC_THRESHOLD:
        cases.append('transplant')
    if b + 20 * SQRT3 / PI ** 2 < ratio:
        cases.append('polynomial')

    return cases


##########
# Excess #
##########

def excess_trial_bound(a: float, b: float) -> BoundValue:
    """
    Bound on mu1 (A + pi^2/j01^2 E_T), the best of Cheng's sector bound, the linear trial function
    with the weight raised to 12/7, and v1 + v2/3 with (A + 12/7 E_T) <= (L^2 - 180 A^2/L^2) / (7 sqrt3).
    """

    _check(b)
    t = Triangle((-1.0, 0.0), (1.0, 0.0), (a, b))
    s = summarize(t)
    A, L, E = s.area, s.perimeter, s.excess

    candidates = {
        'sector': (J01 ** 2 / (s.diameter / 2) ** 2) * (A + EXCESS_WEIGHT * E),
        'linear': 18 / (3 + a ** 2) * (A + EXCESS_WEIGHT_MAJORANT * E),
        'equilateral_modes': transplant.transplanted_rayleigh(1.0, 1 / 3, a, b) * (L ** 2 - 180 * A ** 2 / L ** 2)
                             / (7 * SQRT3),
    }
    name = min(candidates, key=candidates.get)

    return BoundValue('excess_' + name, candidates[name], EXCESS, params=candidates)


##############
# Collection #
##############

def canonical_bounds(a: float, b: float) -> List[BoundValue]:
    return [best_linear_mu1_bound(a, b),
            transplanted_mu1_bound(a, b),
            cheng_mu1_bound(2.0),
            harmonic_poly_bound(a, b),
            harmonic_transplant_bound(a, b),
            arithmetic_transplant_bound(a, b),
            geometric_product_bound(a, b),
            excess_trial_bound(a, b)]


def all_bounds(t: Triangle) -> List[BoundValue]:
    """Every closed-form bound, rescaled to t's own size (bounds on the bare eigenvalue functionals)."""

    canonical, scale = normalize(t)
    a, b = canonical.v3
    return [bv.rescaled(scale, b) for bv in canonical_bounds(a, b)]


def min_bound(bounds: List[BoundValue], kind: str) -> Tuple[float, str]:
    """Smallest valid bound of a kind, and its name."""

    valid = [bv for bv in bounds if bv.functional_kind == kind and bv.valid]
    if not valid:
        return math.nan, ''
    best = min(valid, key=lambda bv: bv.value)
    return best.value, best.name
