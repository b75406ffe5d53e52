#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Gauss-Legendre rules on triangles, through the collapsed square (u,v) -> (u(1-v), uv)
"""

from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from utils.helper import DomainError

DEFAULT_ORDER = 30


@lru_cache(maxsize=16)
def reference_rule(order: int = DEFAULT_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """
    Tensor rule on the reference triangle (0,0), (1,0), (0,1).

    :param order: number of Gauss-Legendre points per direction
    :return: points (order^2, 2), weights (order^2,) summing to 1/2
    """

    if order < 1:
        raise DomainError(f"Quadrature order must be positive, got {order}.")

    t, w = leggauss(order)
    t, w = (t + 1) / 2, w / 2

    u, v = np.meshgrid(t, t, indexing='ij')
    wu, wv = np.meshgrid(w, w, indexing='ij')

    points = np.column_stack([(u * (1 - v)).ravel(), (u * v).ravel()])
    weights = (wu * wv * u).ravel()

    points.setflags(write=False)
    weights.setflags(write=False)

    return points, weights


def triangle_rule(vertices, order: int = DEFAULT_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Reference rule mapped affinely onto a triangle; weights sum to its area."""

    p0, p1, p2 = np.asarray(vertices, dtype=float)
    xi, w = reference_rule(order)

    jac = np.column_stack([p1 - p0, p2 - p0])
    det = abs(np.linalg.det(jac))

    return p0 + xi @ jac.T, w * det


def integrate(f: Callable, vertices, order: int = DEFAULT_ORDER):
    """
    Integrate f(x, y) over a triangle. f is called once on the arrays of nodes and may return
    an array whose last axis runs over the nodes (several integrands at once).
    """

    points, weights = triangle_rule(vertices, order)
    values = np.asarray(f(points[:, 0], points[:, 1]), dtype=float)

    return values @ weights
