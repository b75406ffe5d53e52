#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
mu1 S^2 <= 16 pi^2 / 3 in the (q,p) variables: below Q_l the best linear trial function suffices,
above Q_1 the transplanted mode u1 does, and the two regions cover the admissible set.
"""

from typing import NamedTuple, Tuple

import numpy as np

from bounds import trial_bounds as tb
from certificates.report import (CertificateReport, build_report, check_samples, near, point_check,
                                 sampled_check)
from certificates.strict import strict_checks_1upS
from geometry.constants import MU1_S2, PI
from utils.helper import DomainError, time_it
from utils.utils import sobol_points

Q_MAX_SAMPLED = 6 - 1e-6


def q_c(q):
    """Lower edge of the admissible region: p >= -q^2/4 + 4q - 12."""
    q = np.asarray(q, dtype=float)
    return -q ** 2 / 4 + 4 * q - 12


def q_linear(q):
    """p below this: the best linear trial function gives mu1 S^2 < 16 pi^2 / 3."""
    q = np.asarray(q, dtype=float)
    return 9 * (4 * PI ** 2 - 27) * q ** 2 / (16 * PI ** 4)


def q_transplant(q):
    """p above this: the transplanted mode gives mu1 S^2 < 16 pi^2 / 3."""
    q = np.asarray(q, dtype=float)
    return ((32 * PI ** 2 + 243) * q ** 2 - 1458 * q) / (384 * PI ** 2)


def region_curves(q: float) -> Tuple[float, float, float]:
    """(Q_c, Q_l, Q_1) at q in (3, 6]."""

    if not 3 < q <= 6:
        raise DomainError(f"q must lie in (3, 6], got {q}.")

    return float(q_c(q)), float(q_linear(q)), float(q_transplant(q))


class CrossingPoints(NamedTuple):
    q_c1: float
    q_l1: float
    transplant_side_ok: bool
    linear_side_ok: bool


def crossing_points(n: int = 1000) -> CrossingPoints:
    """
    Q_c = Q_1 at q_c1 = 768 pi^2 / (128 pi^2 + 243) and Q_l = Q_1 at q_l1 = 1458 pi^2 / (32 pi^4 - 621 pi^2 + 5832);
    also checks Q_c > Q_1 on (q_c1, 6) and Q_l > Q_1 on (3, q_l1) at n interior points each.
    """

    q_c1 = 768 * PI ** 2 / (128 * PI ** 2 + 243)
    q_l1 = 1458 * PI ** 2 / (32 * PI ** 4 - 621 * PI ** 2 + 5832)

    right = np.linspace(q_c1, 6, n + 2)[1:-1]
    left = np.linspace(3, q_l1, n + 2)[1:-1]

    return CrossingPoints(q_c1=float(q_c1), q_l1=float(q_l1),
                          transplant_side_ok=bool(np.all(q_c(right) > q_transplant(right))),
                          linear_side_ok=bool(np.all(q_linear(left) > q_transplant(left))))


def admissible_samples(samples: int, q_max: float = Q_MAX_SAMPLED) -> np.ndarray:
    """Quasi-random (q, p) with 3 < q <= q_max and max(Q_c(q), 0) < p <= q - 3."""

    uv = sobol_points(samples, d=2)
    q = 3 + uv[:, 0] * (q_max - 3)
    lo = np.maximum(q_c(q), 0.0)
    p = lo + uv[:, 1] * (q - 3 - lo)

    # p = 0 is degenerate
    p = np.maximum(p, 1e-12)

    return np.column_stack([q, p])


def apex_from_qp(q, p):
    """(a, b) with b = sqrt p and a = sqrt(q - 3 - p)."""

    q, p = np.asarray(q, dtype=float), np.asarray(p, dtype=float)
    return np.sqrt(np.maximum(q - 3 - p, 0.0)), np.sqrt(p)


def _linear_slack(points: np.ndarray) -> np.ndarray:
    q, p = points.T
    a, b = apex_from_qp(q, p)
    return np.array([MU1_S2 - tb.best_linear_mu1_bound(ai, bi).value * 2 * qi for ai, bi, qi in zip(a, b, q)])


def _transplant_slack(points: np.ndarray) -> np.ndarray:
    q, p = points.T
    a, b = apex_from_qp(q, p)
    return np.array([MU1_S2 - tb.transplanted_mu1_bound(ai, bi).value * 2 * qi for ai, bi, qi in zip(a, b, q)])


def bound_margin(points: np.ndarray) -> np.ndarray:
    """The better of the two trial-function slacks."""
    return np.maximum(_linear_slack(points), _transplant_slack(points))


def cover_margin(points: np.ndarray) -> np.ndarray:
    """max(Q_l - p, p - Q_1): positive iff one of the two curve conditions holds."""
    q, p = points.T
    return np.maximum(q_linear(q) - p, p - q_transplant(q))


def implication_margin(points: np.ndarray) -> np.ndarray:
    """
    Each curve condition must imply its own bound: the slack of the bound selected by the curves.
    Points where neither curve condition holds get -inf.
    """

    q, p = points.T
    linear = _linear_slack(points)
    transplanted = _transplant_slack(points)
    below, above = p < q_linear(q), p > q_transplant(q)

    margin = np.full(len(points), -np.inf)
    margin[below] = linear[below]
    margin[above] = np.maximum(margin[above], transplanted[above])
    margin[below & above] = np.minimum(linear[below & above], transplanted[below & above])

    return margin


def _near_equilateral(points: np.ndarray) -> np.ndarray:
    return near(points, (6.0, 3.0))


@time_it
def certify_thm_1upS(samples: int = 10000, strict: bool = False, jobs: int = 1) -> CertificateReport:
    """
    mu1 S^2 <= 16 pi^2 / 3 for every non-equilateral triangle, through the (q,p) dichotomy.
    """

    check_samples(samples)
    points = admissible_samples(samples)
    crossing = crossing_points()

    checks = [
        sampled_check('bound', bound_margin, points, _near_equilateral, jobs),
        sampled_check('cover', cover_margin, points, _near_equilateral, jobs),
        sampled_check('implication', implication_margin, points, _near_equilateral, jobs),
        point_check('crossing_qc1_below_5.04', 5.04 - crossing.q_c1, at=(crossing.q_c1,)),
        point_check('crossing_ql1_above_5.09', crossing.q_l1 - 5.09, at=(crossing.q_l1,)),
        point_check('transplant_side_Qc_above_Q1', 1.0 if crossing.transplant_side_ok else -1.0),
        point_check('linear_side_Ql_above_Q1', 1.0 if crossing.linear_side_ok else -1.0),
    ]

    if strict:
        checks.extend(strict_checks_1upS())

    return build_report('1upS', checks, samples)
