#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
mu1 (A + pi^2/j01^2 E_T) <= 4 pi^2 / (3 sqrt3) over the (r,s) moduli, region by region:
a sector bound (Cheng) near degeneracy, a linear trial function in between, and the transplanted
v1 + v2/3 near the equilateral corner. Also the excess lemma S^2 <= (12/sqrt3)(A + 3/2 E_T).
"""

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from certificates.report import (EQUILATERAL_RS, EXCLUSION_RADIUS, CertificateReport, build_report,
                                 check_samples, near, point_check, sampled_check)
from certificates import strict as exact
from geometry.constants import EXCESS_WEIGHT, EXCESS_WEIGHT_MAJORANT, J01, PI, SQRT3
from geometry.triangle import in_region, lemma_S2_excess_forms
from spectra.transplant import transplanted_rayleigh
import utils.helper as hlp
from utils.helper import time_it
from utils.utils import sobol_points

SECTOR_C = 1 - J01 ** 2 / PI ** 2


##################
# Inequalities   #
##################

def sector_lhs(r, s):
    """(r-1)(r+3) - (1 - j01^2/pi^2) sqrt(27 (r^2-1)(1-s^2)) < 0"""
    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    return (r - 1) * (r + 3) - SECTOR_C * np.sqrt(np.maximum(27 * (r ** 2 - 1) * (1 - s ** 2), 0))


def linearrs_lhs(r, s):
    """(r+1)^2 - (7 pi^2/54)(3 + r^2 s^2) - (5/12) sqrt(27 (r^2-1)(1-s^2)) < 0"""
    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    return ((r + 1) ** 2 - 7 * PI ** 2 / 54 * (3 + r ** 2 * s ** 2)
            - 5 / 12 * np.sqrt(np.maximum(27 * (r ** 2 - 1) * (1 - s ** 2), 0)))


def eval_UVW(r, s) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three polynomials with U V + W < 0 equivalent to the v1 + v2/3 estimate."""

    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    U = (320 * PI ** 2 / 9 + 216) * (r ** 2 + s ** 2) - 324 * SQRT3 * r * s + 640 * PI ** 2 / 9 - 864
    V = 4 * (r + 1) ** 3 + 45 * (r - 1) * (s ** 2 - 1)
    W = 4480 * PI ** 2 / 3 * (r - 1) * (r + 1) ** 2 * (s ** 2 - 1)
    return U, V, W


def equirs_lhs(r, s):
    U, V, W = eval_UVW(r, s)
    return U * V + W


def equirs_structural(r, s):
    """
    160 b^2 (1+r) (R[v1 + v2/3] (L^2 - 180 A^2/L^2) - 28 pi^2/3), with the closed-form Rayleigh quotient;
    equals U V + W.
    """

    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    a, b2 = r * s, (r ** 2 - 1) * (1 - s ** 2)
    L2 = 4 * (1 + r) ** 2
    R = np.vectorize(lambda ai, bi: transplanted_rayleigh(1.0, 1 / 3, ai, bi))(a, np.sqrt(b2))
    return 160 * b2 * (1 + r) * (R * (L2 - 180 * b2 / L2) - 28 * PI ** 2 / 3)


def uvw_second_derivative(r, s):
    """d^2/ds^2 (U V + W) in the expanded form with x = r - 1."""

    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    x = r - 1
    return (432 * (32 - 132 * x + 114 * x ** 2 + 49 * x ** 3)
            + 640 * PI ** 2 / 9 * (32 + 306 * x + 282 * x ** 2 + 91 * x ** 3)
            - 87480 * x * (x + 1) * SQRT3 * s
            + 480 * (40 * PI ** 2 + 243) * x * s ** 2)


def convexity_cubic(x):
    """Lower bound of the second derivative on the trapezoid (s^2 term dropped, sqrt3 s <= 1, pi^2 >= 9)."""
    x = np.asarray(x, dtype=float)
    return 34304 + 51336 * x + 142248 * x ** 2 + 79408 * x ** 3


###########
# Regions #
###########

@dataclass(frozen=True)
class Region:
    """r in [r_lo, r_hi], s between s_lo(r) and s_hi(r), certified by one inequality."""

    name: str
    inequality: str
    r_lo: float
    r_hi: float
    s_lo: Callable
    s_hi: Callable

    def contains(self, r, s, tol: float = 1e-12):
        r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
        return ((r >= self.r_lo - tol) & (r <= self.r_hi + tol)
                & (s >= self.s_lo(r) - tol) & (s <= self.s_hi(r) + tol) & in_region(r, s))

    def sample(self, n: int, seed: int = None) -> np.ndarray:
        """Quasi-random (r, s) filling the closed region (r = 1 nudged inside)."""
        uv = sobol_points(n, d=2, seed=seed)
        r = self.r_lo + uv[:, 0] * (self.r_hi - self.r_lo)
        r = np.maximum(r, 1 + 1e-12)
        lo, hi = self.s_lo(r), self.s_hi(r)
        s = lo + uv[:, 1] * (hi - lo)
        return np.column_stack([r, s])


def _const(c):
    return lambda r: np.full_like(np.asarray(r, dtype=float), c)


REGIONS = (
    Region('sector_left', 'sector', 1.0, 1.25, _const(0.0), lambda r: 2 - np.asarray(r)),
    Region('sector_rectangle', 'sector', 1.25, 1.5, _const(0.0), _const(1 / 3)),
    Region('linear_upper', 'linearrs', 1.25, 1.5, _const(1 / 3), lambda r: 2 - np.asarray(r)),
    Region('linear_corner', 'linearrs', 1.5, 1.6, _const(0.4), lambda r: 2 - np.asarray(r)),
    Region('trapezoid', 'equirs', 1.5, 2.0, _const(0.0), lambda r: np.minimum(0.4, 2 - np.asarray(r))),
)

INEQUALITIES = {
    'sector': sector_lhs,
    'linearrs': linearrs_lhs,
    'equirs': equirs_lhs,
}


def fig2_cover(n: int = 500) -> int:
    """Number of points of an n x n grid over the moduli region (equilateral corner excluded) in no region."""

    r = np.linspace(1, 2, n + 1)[1:]
    s = np.linspace(0, 1, n + 1)[:-1]
    R, S = np.meshgrid(r, s, indexing='ij')
    R, S = R.ravel(), S.ravel()

    admissible = in_region(R, S) & ~near(np.column_stack([R, S]), EQUILATERAL_RS)
    covered = np.zeros_like(admissible)
    for region in REGIONS:
        covered |= region.contains(R, S)

    return int(np.sum(admissible & ~covered))


def _excluded(points: np.ndarray) -> np.ndarray:
    """Equality cases: the equilateral corner and the degenerate edge r = 1."""
    return near(points, EQUILATERAL_RS) | (points[:, 0] - 1 < EXCLUSION_RADIUS)


###########################
# Reductions (1-d checks) #
###########################

def _second_differences_positive(f: Callable, lo: float, hi: float, n: int = 401) -> float:
    """Smallest second difference of f on [lo, hi] (positive: convex on the grid)."""
    x = np.linspace(lo, hi, n)
    return float(np.min(np.diff(f(x), 2)))


def sector_reduced(r):
    """Sector inequality at s = 2 - r, divided by r - 1."""
    r = np.asarray(r, dtype=float)
    return (r + 3) - SECTOR_C * np.sqrt(27 * (r + 1) * (3 - r))


def sector_rectangle_linear(r):
    """Squared sector inequality at s = 1/3 with r + 3 <= 9/2, divided by r - 1."""
    r = np.asarray(r, dtype=float)
    return (r - 1) * (9 / 2) ** 2 - SECTOR_C ** 2 * 27 * (r + 1) * (1 - 1 / 9)


def linearrs_reduced(s_left: float):
    """Linear inequality with s = s_left on the left side and s = 2 - r on the right."""

    def f(r):
        r = np.asarray(r, dtype=float)
        return ((r + 1) ** 2 - 7 * PI ** 2 / 54 * (3 + r ** 2 * s_left ** 2)
                - 5 / 12 * np.sqrt(np.maximum(27 * (r ** 2 - 1) * (r - 1) * (3 - r), 0)))

    return f


def boundary_polynomials():
    """
    U V + W on the three trapezoid edges, as the expanded polynomials together with the constant c
    such that U V + W = c * polynomial. Keys: s=0 (r = x + 3/2), s=2-r (r = x + 8/5), s=2/5 (r = x + 3/2).
    """

    c = 4 + 3 * SQRT3
    pi2 = PI ** 2

    def s0(x):
        return (x - 0.5) * ((160 * pi2 + 972) * x ** 4 + (1760 * pi2 + 10692) * x ** 3
                            + (4680 * pi2 + 32805) * x ** 2 + (3400 * pi2 + 35235) * x + (-3100 * pi2 + 34020))

    def s_diag(x):
        return (x - 0.4) * ((7000000 * pi2 + 7441875 * c) * x ** 4 + (21400000 * pi2 + 15278625 * c) * x ** 3
                            + (34200000 * pi2 + 8693325 * c) * x ** 2 + (7976000 * pi2 + 12510855 * c) * x
                            + (-10211200 * pi2 + 11572632 * c))

    def s_two_fifths(x):
        return ((243000 + 40000 * pi2) * x ** 5 + (2551500 - 145800 * SQRT3 + 420000 * pi2) * x ** 4
                + (7341030 - 1312200 * SQRT3 + 1095600 * pi2) * x ** 3
                + (6530625 - 2996190 * SQRT3 + 934600 * pi2) * x ** 2
                + (4352859 - 3623130 * SQRT3 - 138480 * pi2) * x
                + (-4211433 - 2383830 * SQRT3 + 820260 * pi2))

    return {
        's=0': (s0, 8 / 9, 1.5, lambda r: np.zeros_like(r), (0.0, 0.5)),
        's=2-r': (s_diag, 4 / 5625, 1.6, lambda r: 2 - r, (0.0, 0.4)),
        's=2/5': (s_two_fifths, 4 / 1125, 1.5, lambda r: np.full_like(r, 0.4), (0.0, 0.1)),
    }


def reduction_checks(n: int = 401) -> list:
    """Every one-dimensional step that reduces the region inequalities to endpoint and sign checks."""

    checks = []

    # Sector, left part: convex in r, negative at both ends
    checks.append(point_check('sector_reduced_r=1', -float(sector_reduced(1.0)), at=(1.0,)))
    checks.append(point_check('sector_reduced_r=5/4', -float(sector_reduced(1.25)), at=(1.25,)))
    checks.append(point_check('sector_reduced_convex', _second_differences_positive(sector_reduced, 1.0, 1.25, n)))

    # Sector, rectangle: linear in r
    for r in (1.25, 1.5):
        checks.append(point_check(f'sector_rectangle_r={r:g}', -float(sector_rectangle_linear(r)), at=(r,)))

    # Linear trial function, two regions
    for name, s_left, lo, hi in (('linear_upper', 1 / 3, 1.25, 1.5), ('linear_corner', 0.4, 1.5, 1.6)):
        f = linearrs_reduced(s_left)
        checks.append(point_check(f'{name}_r={lo:g}', -float(f(lo)), at=(lo,)))
        checks.append(point_check(f'{name}_r={hi:g}', -float(f(hi)), at=(hi,)))
        checks.append(point_check(f'{name}_convex', _second_differences_positive(f, lo, hi, n)))

    # Trapezoid: convexity in s through the cubic lower bound, and the full second derivative
    x = np.linspace(0, 1, n)
    checks.append(point_check('convexity_cubic', float(np.min(convexity_cubic(x)))))
    r, s = np.meshgrid(np.linspace(1.5, 2, n // 8 + 1), np.linspace(0, 0.4, n // 8 + 1), indexing='ij')
    inside = s <= 2 - r + 1e-12
    checks.append(point_check('uvw_second_derivative',
                              float(np.min(uvw_second_derivative(r[inside], s[inside])))))

    # Trapezoid edges: polynomial forms agree with U V + W and have the claimed sign
    for edge, (poly, ratio, r0, s_of_r, (x_lo, x_hi)) in boundary_polynomials().items():
        xs = np.linspace(x_lo, x_hi, n)
        rs = xs + r0
        structural = equirs_lhs(rs, s_of_r(rs))
        expanded = ratio * poly(xs)
        scale = np.maximum(np.abs(structural), 1.0)
        agreement = 1e-9 - float(np.max(np.abs(structural - expanded) / scale))
        checks.append(point_check(f'edge_{edge}_matches_UVW', agreement))

        # Equality root (x = x_hi) on the first two edges
        open_edge = xs < x_hi if edge != 's=2/5' else np.ones_like(xs, dtype=bool)
        checks.append(point_check(f'edge_{edge}_negative', -float(np.max(poly(xs[open_edge])))))

    # 12/7 majorizes pi^2 / j01^2
    checks.append(point_check('weight_majorant', EXCESS_WEIGHT_MAJORANT - EXCESS_WEIGHT))

    return checks


######################
# Certificate drivers #
######################

@time_it
def certify_thm_1opt(samples: int = 10000, strict: bool = False, jobs: int = 1) -> CertificateReport:
    """
    Each region sampled with its own inequality (samples per region), plus the reduction checks,
    the region cover, the structural form of U V + W, and the symbolic rederivation of the convexity cubic.
    """

    check_samples(samples)
    checks = []

    for i, region in enumerate(REGIONS):
        points = region.sample(samples, seed=hlp.SEED + i)
        lhs = INEQUALITIES[region.inequality]
        checks.append(sampled_check(f'{region.name}:{region.inequality}',
                                    lambda p, f=lhs: -f(p[:, 0], p[:, 1]), points, _excluded, jobs))

    trapezoid = REGIONS[-1].sample(min(samples, 2000))
    structural = equirs_structural(trapezoid[:, 0], trapezoid[:, 1])
    direct = equirs_lhs(trapezoid[:, 0], trapezoid[:, 1])
    drift = float(np.max(np.abs(structural - direct) / np.maximum(np.abs(direct), 1.0)))
    checks.append(point_check('UVW_matches_rayleigh_form', 1e-9 - drift))

    checks.append(point_check('region_cover', 0.5 - fig2_cover()))
    checks.extend(reduction_checks())

    derivation = exact.derive_convexity_cubic()
    checks.append(point_check('convexity_cubic_derivation', 1.0 if derivation.matches else -1.0))

    if strict:
        checks.extend(exact.strict_checks_1opt())

    return build_report('1opt', checks, samples * len(REGIONS))


def certify_lemma_83(samples: int = 10000, strict: bool = False, jobs: int = 1) -> CertificateReport:
    """S^2 <= (12/sqrt3)(A + 3/2 E_T) in the (r,s) form, and the identity behind its proof."""

    check_samples(samples)
    uv = sobol_points(samples, d=2)
    r = 1 + 1e-12 + uv[:, 0] * (1 - 1e-12)
    s = uv[:, 1] * np.minimum(1 - 1e-9, 2 - r)
    points = np.vstack([np.column_stack([r, s]), [EQUILATERAL_RS]])

    def slack(p):
        r, s = p[:, 0], p[:, 1]
        return 2 * r - (1 + s ** 2) - np.sqrt(np.maximum(3 * (r ** 2 - 1) * (1 - s ** 2), 0))

    def residual_margin(p):
        direct, rearranged = lemma_S2_excess_forms(p[:, 0], p[:, 1])
        return 1e-10 - np.abs(direct - rearranged)

    checks = [
        sampled_check('identity_residual', residual_margin, points, jobs=jobs),
        sampled_check('slack_nonnegative', slack, points, lambda p: near(p, EQUILATERAL_RS), jobs),
        point_check('equality_at_equilateral', 1e-12 - abs(float(slack(np.array([EQUILATERAL_RS]))[0])),
                    at=EQUILATERAL_RS),
    ]

    if strict:
        checks.extend(exact.strict_checks_lemma83())

    return build_report('lemma83', checks, len(points))
