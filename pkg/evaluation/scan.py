#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Sweeps of the (r,s) moduli region: FEM eigenvalues, functionals and closed-form bounds per shape
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

import utils.helper as hlp
from bounds import trial_bounds as tb
from evaluation.functionals import FUNCTIONALS, evaluate
from fem.solver import DEFAULT_REL_TOL, MIN_REL_TOL, SpectrumEstimate, converged_eigs, neumann_eigs
from geometry.triangle import (GeometricSummary, ShapeParams, Triangle, check_excess_sumsq, check_mean_chain,
                               summarize)
from utils.helper import DomainError, SolverError, log

DEFAULT_TOL = 5e-3
DEFAULT_EPS = 0.05
FORMATS = ('csv', 'json')


@dataclass(frozen=True)
class ScanConfig:
    """
    Grid of n_r x n_s shapes with r in [1+eps, 2] and s in [0, min(1-eps, 2-r)].
    level=None runs the FEM convergence loop to fem_tol; a level fixes the refinement instead.
    """

    n_r: int = 40
    n_s: int = 40
    eps: float = DEFAULT_EPS
    level: Optional[int] = None
    fem_tol: float = DEFAULT_REL_TOL
    tol: float = DEFAULT_TOL
    functionals: Optional[Tuple[str, ...]] = None
    out: Optional[str] = None
    fmt: str = 'csv'
    jobs: int = 1

    def __post_init__(self):
        if self.n_r < 2 or self.n_s < 2:
            raise DomainError(f"Grid must be at least 2x2, got {self.n_r}x{self.n_s}.")
        if not 0 < self.eps < 0.5:
            raise DomainError(f"eps must lie in (0, 0.5), got {self.eps}.")
        if self.fem_tol < MIN_REL_TOL:
            raise DomainError(f"FEM tolerance must be at least {MIN_REL_TOL}, got {self.fem_tol}.")
        if self.fmt not in FORMATS:
            raise DomainError(f"Unknown format <{self.fmt}>, expected one of {FORMATS}.")
        if self.functionals is not None:
            unknown = set(self.functionals) - set(FUNCTIONALS)
            if unknown:
                raise DomainError(f"Unknown functionals {sorted(unknown)}.")


def grid_points(config: ScanConfig) -> np.ndarray:
    """Admissible (r,s), row-major in (r,s); the equilateral corner (2,0) is always the last row."""

    points = []
    for r in np.linspace(1 + config.eps, 2, config.n_r):
        s_max = min(1 - config.eps, 2 - r)
        column = np.unique(np.linspace(0, max(s_max, 0.0), config.n_s))
        points.extend((r, s) for s in column)

    points = np.array(points)
    points[-1] = (2.0, 0.0)

    return points


@dataclass(frozen=True)
class BoundReport:
    """Everything computed for one shape; all functionals are scale-invariant."""

    r: float
    s: float
    geometry: GeometricSummary
    spectrum: Optional[SpectrumEstimate]
    functionals: Dict[str, float] = field(default_factory=dict)
    bounds: Tuple[tb.BoundValue, ...] = ()
    geometry_slacks: Dict[str, float] = field(default_factory=dict)

    @property
    def mu1(self) -> float:
        return self.spectrum.mu(1) if self.spectrum is not None else math.nan

    @property
    def mu2(self) -> float:
        return self.spectrum.mu(2) if self.spectrum is not None else math.nan

    def bound_ratios(self) -> Dict[str, float]:
        """FEM values over the best closed-form bound of the same kind (<= 1 up to discretization)."""

        mu1, mu2 = self.mu1, self.mu2
        fem = {tb.MU1: mu1,
               tb.HARMONIC_MEAN: 2 * mu1 * mu2 / (mu1 + mu2),
               tb.ARITHMETIC_MEAN: (mu1 + mu2) / 2,
               tb.PRODUCT: mu1 * mu2}

        ratios = {}
        for kind, value in fem.items():
            bound, _ = tb.min_bound(list(self.bounds), kind)
            ratios[f'{kind}_over_bound'] = value / bound

        return ratios

    def as_row(self) -> dict:
        g = self.geometry
        row = {'r': self.r, 's': self.s,
               'area': g.area, 'perimeter': g.perimeter, 'sumsq': g.sumsq, 'diameter': g.diameter,
               'excess': g.excess,
               'mu1': self.mu1, 'mu2': self.mu2}

        if self.spectrum is not None:
            row.update({'mu1_error': self.spectrum.errors[0], 'mu2_error': self.spectrum.errors[1],
                        'level': self.spectrum.levels[-1], 'converged': self.spectrum.converged})
        else:
            row.update({'mu1_error': math.nan, 'mu2_error': math.nan, 'level': -1, 'converged': False})

        row.update(self.functionals)
        row.update({f'bound_{bv.name}': bv.value for bv in self.bounds})
        row.update(self.bound_ratios())
        row.update(self.geometry_slacks)

        return row


def _spectrum(t: Triangle, config: ScanConfig) -> Optional[SpectrumEstimate]:
    try:
        if config.level is None:
            return converged_eigs(t, k=2, rel_tol=config.fem_tol)
        return neumann_eigs(t, level=config.level, k=2)
    except SolverError as e:
        log(f"FEM failed on {t}: {e}", verbosity=1, color='red')
        return None


def report_for_triangle(t: Triangle, spectrum: Optional[SpectrumEstimate], r: float = math.nan,
                        s: float = math.nan, names: Sequence[str] = None) -> BoundReport:
    """Functionals from t's own geometry and spectrum; bounds rescaled to t's size."""

    g = summarize(t)
    mu1 = spectrum.mu(1) if spectrum is not None else math.nan
    mu2 = spectrum.mu(2) if spectrum is not None else math.nan
    chain = check_mean_chain(t)

    return BoundReport(r=r, s=s, geometry=g, spectrum=spectrum,
                       functionals=evaluate(g, mu1, mu2, names),
                       bounds=tuple(tb.all_bounds(t)),
                       geometry_slacks={'isoperimetric_slack': chain[0], 'sumsq_slack': chain[1],
                                        'excess_lemma_slack': check_excess_sumsq(t)})


def scan_point(r: float, s: float, config: ScanConfig) -> BoundReport:
    t = ShapeParams(r, s).triangle()
    return report_for_triangle(t, _spectrum(t, config), r, s, config.functionals)


def _scan_worker(r: float, s: float, config: ScanConfig, verbosity: int) -> BoundReport:
    # joblib workers start with the module defaults
    hlp.set_params(verbosity=verbosity)
    return scan_point(r, s, config)


@hlp.time_it
def scan(config: ScanConfig) -> pd.DataFrame:
    """One row per grid shape, in grid order. Unconverged FEM rows stay in, flagged."""

    points = grid_points(config)
    log(f"Scanning {len(points)} shapes ({config.n_r}x{config.n_s}, eps {config.eps}) on {config.jobs} worker(s)",
        verbosity=2)

    iterator = tqdm(points, desc='Scan', disable=hlp.VERBOSITY < 2)
    if config.jobs > 1:
        reports = Parallel(n_jobs=config.jobs)(delayed(_scan_worker)(r, s, config, hlp.VERBOSITY)
                                               for r, s in iterator)
    else:
        reports = [scan_point(r, s, config) for r, s in iterator]

    table = pd.DataFrame([rep.as_row() for rep in reports])

    unconverged = int((~table.converged.astype(bool)).sum())
    if unconverged:
        log(f"{unconverged} of {len(table)} shapes did not reach the FEM tolerance.", verbosity=1, color='yellow')

    return table
