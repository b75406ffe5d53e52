#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Uniform midpoint refinement of a single triangle
"""

from dataclasses import dataclass

import numpy as np

from geometry.triangle import Triangle
from utils.helper import DomainError, log

MAX_LEVEL = 9


@dataclass(frozen=True)
class Mesh:
    """Vertices (n, 2), counter-clockwise elements (4^level, 3) and the refinement level."""

    vertices: np.ndarray
    elements: np.ndarray
    level: int

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    def element_areas(self) -> np.ndarray:
        p0, p1, p2 = (self.vertices[self.elements[:, i]] for i in range(3))
        d1, d2 = p1 - p0, p2 - p0
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def expected_size(level: int):
    """(elements, vertices) after `level` refinements."""
    return 4 ** level, (2 ** level + 1) * (2 ** level + 2) // 2


def subdivide(vertices: np.ndarray, elements: np.ndarray):
    """
    One 4-way split: every edge gets its midpoint (shared edges once), every element four children.
    Midpoints are appended in lexicographic order of their edge.
    """

    m = len(elements)
    edges = elements[:, [[0, 1], [1, 2], [2, 0]]].reshape(-1, 2)
    unique, inverse = np.unique(np.sort(edges, axis=1), axis=0, return_inverse=True)
    inverse = inverse.reshape(m, 3)

    midpoints = vertices[unique].mean(axis=1)
    mid = inverse + len(vertices)

    v0, v1, v2 = elements.T
    m01, m12, m20 = mid.T
    children = np.stack([np.column_stack([v0, m01, m20]),
                         np.column_stack([m01, v1, m12]),
                         np.column_stack([m20, m12, v2]),
                         np.column_stack([m01, m12, m20])], axis=1).reshape(-1, 3)

    return np.vstack([vertices, midpoints]), children


def refine(t: Triangle, level: int) -> Mesh:
    """Uniform refinement of t, `level` times (4^level congruent elements)."""

    if not (isinstance(level, (int, np.integer)) and 0 <= level <= MAX_LEVEL):
        raise DomainError(f"Refinement level must be an integer in [0, {MAX_LEVEL}], got {level}.")

    vertices = t.oriented().vertices
    elements = np.array([[0, 1, 2]])

    for _ in range(level):
        vertices, elements = subdivide(vertices, elements)

    log(f"Mesh at level {level}: {len(elements)} elements, {len(vertices)} vertices.", verbosity=3)

    vertices.setflags(write=False)
    elements.setflags(write=False)

    return Mesh(vertices=vertices, elements=elements, level=int(level))
