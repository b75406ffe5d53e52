#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Neumann eigenvalues of a triangle with conforming P1 elements on uniform refinements,
Richardson extrapolation (O(h^2)) and a convergence loop over levels
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import LinearOperator, ArpackError, eigsh, splu

import utils.helper as hlp
from fem.assembly import assemble
from fem.mesh import MAX_LEVEL, refine
from geometry.triangle import Triangle, summarize
from utils.helper import DomainError, SolverError, log

DENSE_DOF_LIMIT = 3000
ZERO_MODE_RATIO = 1e-8
DEGENERATE_ASPECT = 20.0
MIN_DEGENERATE_LEVEL = 4
DEFAULT_LEVEL = 5
DEFAULT_REL_TOL = 1e-4
MIN_REL_TOL = 1e-6


@dataclass(frozen=True)
class SpectrumEstimate:
    """
    Nonzero Neumann eigenvalues mu_1 <= ... <= mu_k of one triangle (its own scale).

    eigenvalues are the discrete values at the finest level; extrapolated/errors come from the two
    finest levels (errors are inf when only one level was solved).
    """

    eigenvalues: Tuple[float, ...]
    extrapolated: Tuple[float, ...]
    errors: Tuple[float, ...]
    levels: Tuple[int, ...]
    converged: bool = True
    achieved_tol: float = math.nan
    aspect: float = math.nan

    @property
    def k(self) -> int:
        return len(self.eigenvalues)

    def mu(self, i: int) -> float:
        """Best estimate of mu_i (1-based)."""
        return self.extrapolated[i - 1]

    def as_rows(self) -> list:
        return [{'index': i + 1,
                 'mu': self.eigenvalues[i],
                 'extrapolated': self.extrapolated[i],
                 'error': self.errors[i],
                 'level': self.levels[-1],
                 'converged': self.converged} for i in range(self.k)]


def aspect_ratio(t: Triangle) -> float:
    """Longest side over the height onto it."""

    s = summarize(t)
    return s.diameter ** 2 / (2 * s.area)


def _check_level(t: Triangle, level: int) -> float:
    aspect = aspect_ratio(t)
    if aspect > DEGENERATE_ASPECT and level < MIN_DEGENERATE_LEVEL:
        raise DomainError(f"Near-degenerate triangle (aspect {aspect:.1f} > {DEGENERATE_ASPECT}): "
                          f"level must be at least {MIN_DEGENERATE_LEVEL}, got {level}.")
    return aspect


def drop_zero_mode(values: np.ndarray) -> np.ndarray:
    """Remove the single constant mode: mu_0 < 1e-8 * mu_1, and mu_1 must not qualify itself."""

    values = np.sort(np.asarray(values, dtype=float))
    if len(values) < 2:
        raise SolverError("Need at least two eigenvalues to identify the constant mode.")

    is_zero = np.abs(values[:-1]) < ZERO_MODE_RATIO * np.abs(values[1:])
    if not is_zero[0] or np.any(is_zero[1:]):
        raise SolverError(f"Expected exactly one constant mode, got spectrum start {values[:3]}.")

    return values[1:]


def _solve(stiffness, mass, n_eigs: int, area: float) -> np.ndarray:
    """Smallest n_eigs eigenvalues of K x = mu M x."""

    n = stiffness.shape[0]
    try:
        if n <= DENSE_DOF_LIMIT:
            return linalg.eigh(stiffness.toarray(), mass.toarray(), eigvals_only=True,
                               subset_by_index=[0, n_eigs - 1])

        # Shift-invert just below zero; eigenvalues scale like 1/area
        sigma = -0.01 / area
        lu = splu((stiffness - sigma * mass).tocsc())
        op_inv = LinearOperator(matvec=lu.solve, shape=stiffness.shape, dtype=stiffness.dtype)
        v0 = np.random.default_rng(hlp.SEED).standard_normal(n)
        values = eigsh(stiffness, k=n_eigs, M=mass, sigma=sigma, OPinv=op_inv, v0=v0,
                       tol=1e-12, return_eigenvectors=False)
        return np.sort(values)

    except (linalg.LinAlgError, ArpackError, RuntimeError) as e:
        raise SolverError(f"Eigensolver failed on {n} degrees of freedom: {e}")


def discrete_eigs(t: Triangle, level: int, k: int) -> np.ndarray:
    """The k smallest nonzero discrete eigenvalues at one refinement level."""

    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}.")

    mesh = refine(t, level)
    n = mesh.n_vertices
    if not _enough_modes(level, k):
        raise DomainError(f"k = {k} exceeds the {n - 1} nonzero modes at level {level}.")

    stiffness, mass = assemble(mesh)
    area = summarize(t).area

    # One extra value when available, so that mu_1 is checked against mu_2 as well
    n_eigs = min(k + 2, n if n <= DENSE_DOF_LIMIT else n - 1)
    values = drop_zero_mode(_solve(stiffness, mass, n_eigs, area))

    return values[:k]


def richardson(coarse: np.ndarray, fine: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """O(h^2) extrapolation from levels l-1 and l, with |extrapolated - fine| as error estimate."""

    extrapolated = (4 * fine - coarse) / 3
    return extrapolated, np.abs(extrapolated - fine)


def neumann_eigs(t: Triangle, level: int = DEFAULT_LEVEL, k: int = 2) -> SpectrumEstimate:
    """
    Discrete eigenvalues at `level`, extrapolated with the level below when there is one.
    """

    aspect = _check_level(t, level)
    fine = discrete_eigs(t, level, k)

    coarse = discrete_eigs(t, level - 1, k) if level >= 1 and _enough_modes(level - 1, k) else None

    if coarse is None:
        return SpectrumEstimate(eigenvalues=tuple(fine), extrapolated=tuple(fine),
                                errors=tuple([math.inf] * k), levels=(level,), aspect=aspect)

    extrapolated, errors = richardson(coarse, fine)
    return SpectrumEstimate(eigenvalues=tuple(fine), extrapolated=tuple(extrapolated), errors=tuple(errors),
                            levels=(level - 1, level), aspect=aspect)


def _enough_modes(level: int, k: int) -> bool:
    return (2 ** level + 1) * (2 ** level + 2) // 2 >= k + 1


@hlp.time_it
def converged_eigs(t: Triangle, k: int = 2, rel_tol: float = DEFAULT_REL_TOL, start_level: int = None,
                   max_level: int = MAX_LEVEL) -> SpectrumEstimate:
    """
    Raise the level until two successive extrapolations agree to rel_tol (relative), or the cap is hit.
    A capped run is returned with converged=False and the tolerance it did reach.
    """

    if rel_tol < MIN_REL_TOL:
        raise DomainError(f"rel_tol must be at least {MIN_REL_TOL}, got {rel_tol}.")

    aspect = aspect_ratio(t)
    if start_level is None:
        start_level = MIN_DEGENERATE_LEVEL if aspect > DEGENERATE_ASPECT else 2
    _check_level(t, start_level)
    if start_level + 2 > max_level:
        raise DomainError(f"Need two levels above the start level {start_level}, cap is {max_level}.")

    raw = {start_level: discrete_eigs(t, start_level, k)}
    previous, achieved = None, math.inf

    for level in range(start_level + 1, max_level + 1):
        raw[level] = discrete_eigs(t, level, k)
        extrapolated, errors = richardson(raw[level - 1], raw[level])

        if previous is not None:
            achieved = float(np.max(np.abs(extrapolated - previous) / np.abs(extrapolated)))
            log(f"Level {level}: mu = {np.round(extrapolated, 8)}, change {achieved:.2e}", verbosity=3)
            if achieved <= rel_tol:
                return SpectrumEstimate(eigenvalues=tuple(raw[level]), extrapolated=tuple(extrapolated),
                                        errors=tuple(errors), levels=(level - 1, level), converged=True,
                                        achieved_tol=achieved, aspect=aspect)
        previous = extrapolated

    log(f"No convergence to {rel_tol:.1e} by level {max_level} (reached {achieved:.2e}).",
        verbosity=1, color='yellow')

    return SpectrumEstimate(eigenvalues=tuple(raw[max_level]), extrapolated=tuple(previous),
                            errors=tuple(errors), levels=(max_level - 1, max_level), converged=False,
                            achieved_tol=achieved, aspect=aspect)
