#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
First Neumann modes of the equilateral triangle E = (0,0), (1,0), (1/2, sqrt3/2), and the table of their integrals

With theta = pi/3 (2x - 1) and phi = 2 pi y / sqrt3:
    u1 = 2 (cos theta + cos phi) sin theta
    u2 = 2 (cos theta - cos phi) cos theta - 1
both with eigenvalue 16 pi^2 / 9. Derivatives are analytic; the formulas extend to the whole plane.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd

from geometry.constants import EQUILATERAL_MU, PI, SQRT3
from geometry.quadrature import DEFAULT_ORDER, integrate
from utils.helper import DomainError, log
from utils.utils import sample_in_triangle

VERTICES = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2]])

# d theta / dx and d phi / dy
THETA_X = 2 * PI / 3
PHI_Y = 2 * PI / SQRT3

# Integrals over E
U2_INT = 3 * SQRT3 / 8
K_PLUS = (32 * PI ** 2 + 243) / (32 * SQRT3)
K_MINUS = (32 * PI ** 2 - 243) / (32 * SQRT3)
CROSS_PLUS = 81 * SQRT3 / 32 + PI
CROSS_MINUS = 81 * SQRT3 / 32 - PI

REL_TOL = 1e-8
ABS_TOL = 1e-10


def _angles(x, y):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return THETA_X * (2 * x - 1) / 2, PHI_Y * y


def _check_index(index: int):
    if index not in (0, 1, 2):
        raise DomainError(f"Mode index must be 0, 1 or 2, got {index}.")


def eval_mode(index: int, x, y):
    """u_index(x, y)"""

    _check_index(index)
    th, ph = _angles(x, y)

    if index == 0:
        return np.ones_like(th)
    if index == 1:
        return np.sin(2 * th) + 2 * np.sin(th) * np.cos(ph)
    return np.cos(2 * th) - 2 * np.cos(th) * np.cos(ph)


def eval_grad(index: int, x, y) -> Tuple[np.ndarray, np.ndarray]:
    """(du/dx, du/dy)"""

    _check_index(index)
    th, ph = _angles(x, y)

    if index == 0:
        return np.zeros_like(th), np.zeros_like(th)
    if index == 1:
        u_th = 2 * np.cos(2 * th) + 2 * np.cos(th) * np.cos(ph)
        u_ph = -2 * np.sin(th) * np.sin(ph)
    else:
        u_th = -2 * np.sin(2 * th) + 2 * np.sin(th) * np.cos(ph)
        u_ph = 2 * np.cos(th) * np.sin(ph)

    return THETA_X * u_th, PHI_Y * u_ph


def eval_hessian(index: int, x, y) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(u_xx, u_xy, u_yy)"""

    _check_index(index)
    th, ph = _angles(x, y)

    if index == 0:
        zero = np.zeros_like(th)
        return zero, zero, zero
    if index == 1:
        u_thth = -4 * np.sin(2 * th) - 2 * np.sin(th) * np.cos(ph)
        u_thph = -2 * np.cos(th) * np.sin(ph)
        u_phph = -2 * np.sin(th) * np.cos(ph)
    else:
        u_thth = -4 * np.cos(2 * th) + 2 * np.cos(th) * np.cos(ph)
        u_thph = 2 * np.sin(th) * np.sin(ph)
        u_phph = 2 * np.cos(th) * np.cos(ph)

    return THETA_X ** 2 * u_thth, THETA_X * PHI_Y * u_thph, PHI_Y ** 2 * u_phph


@dataclass(frozen=True)
class EquilateralMode:
    index: int

    def __post_init__(self):
        _check_index(self.index)

    @property
    def eigenvalue(self) -> float:
        return 0.0 if self.index == 0 else EQUILATERAL_MU

    def __call__(self, x, y):
        return eval_mode(self.index, x, y)

    def grad(self, x, y):
        return eval_grad(self.index, x, y)

    def hessian(self, x, y):
        return eval_hessian(self.index, x, y)


##################
# Integral table #
##################

def exact_integrals() -> dict:
    """name -> (integrand(x, y), exact value over E)"""

    def g(i, axis):
        return lambda x, y: eval_grad(i, x, y)[axis]

    u1x, u1y, u2x, u2y = g(1, 0), g(1, 1), g(2, 0), g(2, 1)

    return {
        'u1^2': (lambda x, y: eval_mode(1, x, y) ** 2, U2_INT),
        'u2^2': (lambda x, y: eval_mode(2, x, y) ** 2, U2_INT),
        'u1x^2': (lambda x, y: u1x(x, y) ** 2, K_PLUS),
        'u2y^2': (lambda x, y: u2y(x, y) ** 2, K_PLUS),
        'u1y^2': (lambda x, y: u1y(x, y) ** 2, K_MINUS),
        'u2x^2': (lambda x, y: u2x(x, y) ** 2, K_MINUS),
        'u1x*u1y': (lambda x, y: u1x(x, y) * u1y(x, y), 0.0),
        'u2x*u2y': (lambda x, y: u2x(x, y) * u2y(x, y), 0.0),
        'u1*u2': (lambda x, y: eval_mode(1, x, y) * eval_mode(2, x, y), 0.0),
        'u1x*u2x': (lambda x, y: u1x(x, y) * u2x(x, y), 0.0),
        'u1y*u2y': (lambda x, y: u1y(x, y) * u2y(x, y), 0.0),
        'u1x*u2y': (lambda x, y: u1x(x, y) * u2y(x, y), CROSS_PLUS),
        'u1y*u2x': (lambda x, y: u1y(x, y) * u2x(x, y), CROSS_MINUS),
    }


def verify_integral_table(quadrature_order: int = DEFAULT_ORDER, rel_tol: float = REL_TOL,
                          abs_tol: float = ABS_TOL) -> pd.DataFrame:
    """
    Recompute every tabulated integral over E by quadrature.

    :return: one row per integral: name, exact, computed, error, tolerance, passed
    """

    rows = []
    for name, (f, exact) in exact_integrals().items():
        computed = float(integrate(f, VERTICES, quadrature_order))
        error = abs(computed - exact)
        tolerance = rel_tol * abs(exact) if exact != 0 else abs_tol
        rows.append({'integral': name,
                     'exact': exact,
                     'computed': computed,
                     'error': error,
                     'tolerance': tolerance,
                     'passed': bool(error <= tolerance)})

    table = pd.DataFrame(rows)
    n_failed = int((~table.passed).sum())
    if n_failed:
        log(f"{n_failed} of {len(table)} integrals out of tolerance (order {quadrature_order}).",
            verbosity=1, color='red')
    else:
        log(f"All {len(table)} integrals reproduced (order {quadrature_order}).", verbosity=2, color='green')

    return table


def edge_samples(n_per_edge: int = 19) -> Tuple[np.ndarray, np.ndarray]:
    """Points on the three edges of E (midpoints included) and the outward unit normals there."""

    t = np.linspace(0.05, 0.95, n_per_edge)
    points, normals = [], []
    for i in range(3):
        p, q = VERTICES[i], VERTICES[(i + 1) % 3]
        edge = q - p
        normal = np.array([edge[1], -edge[0]]) / np.hypot(*edge)
        points.append(p + np.outer(t, edge))
        normals.append(np.tile(normal, (n_per_edge, 1)))

    return np.vstack(points), np.vstack(normals)


def pde_residual(index: int, sample_points=None, n: int = 1000) -> Tuple[float, float]:
    """
    max |Delta u + mu u| over interior points, and max |du/dn| on the edges.
    """

    mode = EquilateralMode(index)
    if sample_points is None:
        sample_points = sample_in_triangle(VERTICES, n)
    pts = np.asarray(sample_points, dtype=float)

    uxx, _, uyy = mode.hessian(pts[:, 0], pts[:, 1])
    interior = np.max(np.abs(uxx + uyy + mode.eigenvalue * mode(pts[:, 0], pts[:, 1])))

    edge_points, normals = edge_samples()
    ux, uy = mode.grad(edge_points[:, 0], edge_points[:, 1])
    boundary = np.max(np.abs(ux * normals[:, 0] + uy * normals[:, 1]))

    return float(interior), float(boundary)
