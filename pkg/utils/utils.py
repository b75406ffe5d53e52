#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Various utilities: reproducible sampling, shard merging, argument parsing and table output
"""

import math
import sys
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.stats import qmc

import utils.helper as hlp
from utils.helper import DomainError, log

FLOAT_FORMAT = '%.12g'
DOUBLE_PRECISION = 12


############
# Sampling #
############

def sobol_points(n: int, d: int = 2, seed: int = None) -> np.ndarray:
    """
    Scrambled Sobol points in the unit cube, fixed seed so that runs are reproducible bit-for-bit.

    :param n: number of points
    :param d: dimension
    :param seed: scrambling seed (defaults to the global SEED)
    :return: (n, d) array
    """

    if n < 1:
        raise DomainError(f"Need at least one sample, got {n}.")

    seed = hlp.SEED if seed is None else seed
    sampler = qmc.Sobol(d=d, scramble=True, seed=seed)

    # Draw a full power of two (balance properties), keep the first n
    m = max(int(math.ceil(math.log2(n))), 0)
    points = sampler.random_base2(m=m)

    return points[:n]


def sample_in_triangle(vertices: np.ndarray, n: int, seed: int = None) -> np.ndarray:
    """Quasi-random points strictly inside a triangle (folded unit square)."""

    vertices = np.asarray(vertices, dtype=float)
    uv = sobol_points(n, d=2, seed=seed)
    u, v = uv[:, 0], uv[:, 1]
    fold = u + v > 1
    u[fold], v[fold] = 1 - u[fold], 1 - v[fold]

    p0, p1, p2 = vertices
    return p0 + np.outer(u, p1 - p0) + np.outer(v, p2 - p0)


def shard(items: Sequence, n_shards: int) -> list:
    """Split a sequence in contiguous, order-preserving shards."""

    n_shards = max(1, min(n_shards, len(items)))
    bounds = np.linspace(0, len(items), n_shards + 1).astype(int)

    return [items[bounds[i]:bounds[i + 1]] for i in range(n_shards)]


def worst_of(candidates: Iterable[Tuple[float, tuple]]) -> Tuple[float, Optional[tuple]]:
    """
    Merge (margin, location) pairs: smallest margin wins, ties broken by lexicographic location.
    The result does not depend on how the candidates were sharded.
    """

    best = (math.inf, None)
    for margin, at in candidates:
        if at is None:
            continue
        if margin < best[0] or (margin == best[0] and (best[1] is None or tuple(at) < tuple(best[1]))):
            best = (float(margin), tuple(float(a) for a in at))

    return best


###########
# Parsing #
###########

def parse_vertices(text: str) -> np.ndarray:
    """'x1,y1 x2,y2 x3,y3' -> (3, 2) array"""

    try:
        points = [tuple(float(c) for c in p.split(',')) for p in text.split()]
    except ValueError as e:
        raise DomainError(f"Could not parse vertices <{text}>: {e}")

    if len(points) != 3 or any(len(p) != 2 for p in points):
        raise DomainError(f"Expected three planar points 'x1,y1 x2,y2 x3,y3', got <{text}>.")

    return np.array(points, dtype=float)


def parse_pair(text: str, sep: str = ',') -> Tuple[float, float]:
    """'1.5,0.2' -> (1.5, 0.2)"""

    parts = text.lower().split(sep)
    if len(parts) != 2:
        raise DomainError(f"Expected two values separated by '{sep}', got <{text}>.")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as e:
        raise DomainError(f"Could not parse <{text}>: {e}")


def parse_grid(text: str) -> Tuple[int, int]:
    """'40x40' -> (40, 40)"""

    n_r, n_s = parse_pair(text, sep='x')
    if n_r != int(n_r) or n_s != int(n_s):
        raise DomainError(f"Grid sizes must be integers, got <{text}>.")

    return int(n_r), int(n_s)


##########
# Output #
##########

def write_table(df: pd.DataFrame, path: str = None, fmt: str = 'csv'):
    """
    Write a table as CSV (12 significant digits, '\\n' line endings) or JSON lines.
    Without a path, the table goes to stdout.
    """

    if fmt not in ('csv', 'json'):
        raise DomainError(f"Unknown output format <{fmt}> (choose csv or json).")

    if fmt == 'csv':
        text = df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    else:
        text = df.to_json(orient='records', lines=True, double_precision=DOUBLE_PRECISION)
        text = text if text.endswith('\n') else text + '\n'

    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w', newline='') as f:
            f.write(text)
        log(f"Table with {len(df)} rows written to <{path}>.", verbosity=2)

    return text
