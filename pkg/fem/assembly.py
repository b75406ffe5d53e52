#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
P1 stiffness and consistent mass matrices
"""

from typing import Tuple

import numpy as np
from scipy import sparse

from fem.mesh import Mesh

REFERENCE_MASS = np.array([[2.0, 1.0, 1.0],
                           [1.0, 2.0, 1.0],
                           [1.0, 1.0, 2.0]]) / 12


def element_matrices(p0: np.ndarray, p1: np.ndarray, p2: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Local matrices for a batch of counter-clockwise elements.

    Stiffness: K_ij = (e_i . e_j) / (4 A), with e_i the edge opposite vertex i.
    Mass: A/12 [[2,1,1],[1,2,1],[1,1,2]].

    :param p0, p1, p2: (m, 2) vertex coordinates
    :return: stiffness (m, 3, 3), mass (m, 3, 3)
    """

    p0, p1, p2 = (np.atleast_2d(np.asarray(p, dtype=float)) for p in (p0, p1, p2))
    e = np.stack([p2 - p1, p0 - p2, p1 - p0], axis=1)

    area = 0.5 * (e[:, 2, 0] * (-e[:, 1, 1]) - e[:, 2, 1] * (-e[:, 1, 0]))

    stiffness = np.einsum('mik,mjk->mij', e, e) / (4 * area)[:, None, None]
    mass = area[:, None, None] * REFERENCE_MASS[None]

    return stiffness, mass


def assemble(m: Mesh) -> Tuple[sparse.csr_matrix, sparse.csr_matrix]:
    """Global (stiffness, mass), both symmetric; constants span the stiffness kernel."""

    t = m.elements
    v = m.vertices
    local_k, local_m = element_matrices(v[t[:, 0]], v[t[:, 1]], v[t[:, 2]])

    rows = np.repeat(t, 3, axis=1).ravel()
    cols = np.tile(t, (1, 3)).ravel()
    n = m.n_vertices

    stiffness = sparse.coo_matrix((local_k.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    mass = sparse.coo_matrix((local_m.ravel(), (rows, cols)), shape=(n, n)).tocsr()

    return stiffness, mass
