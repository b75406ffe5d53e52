#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Certificate reports. Margins are slacks: positive means the certified inequality holds there.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from utils.helper import DomainError, log
from utils.utils import shard, worst_of

EXCLUSION_RADIUS = 1e-6
MIN_SAMPLES = 1000
EQUILATERAL_RS = (2.0, 0.0)


@dataclass(frozen=True)
class CheckResult:
    """One named check: its worst slack, where that was attained, and the verdict."""

    name: str
    margin: float
    passed: bool
    at: Optional[Tuple[float, ...]] = None
    samples: int = 0

    def to_dict(self) -> dict:
        return {'name': self.name, 'margin': _finite(self.margin), 'at': self.at,
                'samples': self.samples, 'pass': self.passed}


@dataclass(frozen=True)
class CertificateReport:
    theorem: str
    samples: int
    worst_margin: float
    at: Optional[Tuple[float, ...]]
    passed: bool
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {'theorem': self.theorem,
                'samples': self.samples,
                'worst_margin': _finite(self.worst_margin),
                'at': list(self.at) if self.at is not None else None,
                'pass': self.passed,
                'checks': [c.to_dict() for c in self.checks]}

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def failed_checks(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _finite(x: float):
    return float(x) if math.isfinite(x) else None


def check_samples(samples: int):
    if samples < MIN_SAMPLES:
        raise DomainError(f"Need at least {MIN_SAMPLES} samples, got {samples}.")


def near(points: np.ndarray, center: Sequence[float], radius: float = EXCLUSION_RADIUS) -> np.ndarray:
    """Rows of `points` within `radius` of `center`."""
    return np.hypot(*(np.asarray(points, dtype=float) - np.asarray(center, dtype=float)).T) < radius


def worst_sample(margins: np.ndarray, points: np.ndarray, excluded: np.ndarray = None) -> Tuple[float, tuple]:
    """Smallest margin outside the excluded set, lexicographic tie-break on location."""

    margins = np.asarray(margins, dtype=float)
    keep = np.ones(len(margins), dtype=bool) if excluded is None else ~excluded
    if not np.any(keep):
        return math.inf, None

    m, p = margins[keep], np.asarray(points)[keep]
    lowest = np.flatnonzero(m == m.min())

    return worst_of((m[i], tuple(p[i])) for i in lowest)


def sampled_check(name: str, margin_fn: Callable, points: np.ndarray, excluded_fn: Callable = None,
                  jobs: int = 1) -> CheckResult:
    """
    Evaluate a vectorized margin over the sample points, in shards when jobs > 1.
    Excluded points (equality cases) are evaluated but never fail the check.
    """

    def run(chunk):
        margins = margin_fn(chunk)
        excluded = excluded_fn(chunk) if excluded_fn is not None else None
        return worst_sample(margins, chunk, excluded)

    chunks = shard(np.asarray(points), jobs)
    if jobs > 1 and len(chunks) > 1:
        results = Parallel(n_jobs=jobs)(delayed(run)(c) for c in chunks)
    else:
        results = [run(c) for c in chunks]

    margin, at = worst_of(results)
    passed = margin > 0 or at is None

    return CheckResult(name=name, margin=margin, passed=bool(passed), at=at, samples=len(points))


def point_check(name: str, margin: float, at: Tuple[float, ...] = None, strict_positive: bool = True) -> CheckResult:
    passed = margin > 0 if strict_positive else margin >= 0
    return CheckResult(name=name, margin=float(margin), passed=bool(passed), at=at, samples=1)


def build_report(theorem: str, checks: Iterable[CheckResult], samples: int) -> CertificateReport:
    """The worst margin over the sampled checks, and pass iff every check passed."""

    checks = tuple(checks)
    sampled = [(c.margin, c.at) for c in checks if c.samples > 1 and c.at is not None]
    margin, at = worst_of(sampled) if sampled else (math.inf, None)
    passed = all(c.passed for c in checks)

    for c in checks:
        if not c.passed:
            log(f"[{theorem}] check <{c.name}> failed: margin {c.margin:.3e} at {c.at}", verbosity=1, color='red')

    log(f"[{theorem}] {'PASS' if passed else 'FAIL'}: worst sampled margin {margin:.3e} at {at}",
        verbosity=1 if not passed else 2, color='green' if passed else 'red')

    return CertificateReport(theorem=theorem, samples=samples, worst_margin=margin, at=at,
                             passed=passed, checks=checks)
