#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Processing of scan tables into verdicts: theorem maxima against their sharp constants,
consistency with the closed-form bounds, and conjecture margins
"""

import math
from typing import Iterable

import pandas as pd

import utils.helper as hlp
from bounds import trial_bounds as tb
from evaluation.functionals import CONJECTURES, THEOREM_IDS, THEOREMS, Claim
from evaluation.scan import DEFAULT_TOL, ScanConfig, scan
from geometry.constants import CHENG, J01, PI
from utils.helper import DomainError, log

CONJECTURE_NOTE = 'conjecture: numerical evidence only'
GEOMETRY_SLACK_TOL = 1e-10
DEGENERATE_RATIO_TOL = 0.10


def _at_equilateral(r: float, s: float) -> bool:
    return math.isclose(r, 2.0, abs_tol=1e-12) and abs(s) < 1e-12


def _table(config: ScanConfig = None, table: pd.DataFrame = None) -> pd.DataFrame:
    if table is None:
        table = scan(config or ScanConfig())
    return table


def process_claim(table: pd.DataFrame, claim: Claim, tol: float) -> pd.Series:
    """Maximum of one functional over the grid, where it is attained, and its margin to the constant."""

    values = table[claim.functional]
    if values.isna().all():
        return pd.Series({'theorem': claim.theorem, 'functional': claim.functional, 'constant': claim.constant,
                          'max': math.nan, 'r': math.nan, 's': math.nan, 'margin': math.nan,
                          'relative_margin': math.nan, 'pass': False, 'note': 'no FEM values'})

    i = values.idxmax()
    peak, r, s = float(values[i]), float(table.r[i]), float(table.s[i])

    located = _at_equilateral(r, s)
    note = 'argmax at (2,0)' if located else f'argmax at ({r:.4g}, {s:.4g})'
    if claim.degenerate_equality:
        located = located or math.isclose(r, table.r.min())

    passed = peak <= claim.constant * (1 + tol) and located

    return pd.Series({'theorem': claim.theorem, 'functional': claim.functional, 'constant': claim.constant,
                      'max': peak, 'r': r, 's': s, 'margin': claim.constant - peak,
                      'relative_margin': (claim.constant - peak) / claim.constant, 'pass': bool(passed),
                      'note': note})


def degenerate_row(table: pd.DataFrame, claim: Claim, tol: float) -> pd.Series:
    """
    Ratio functional / constant at the most degenerate isosceles grid shape (smallest r, s = 0).
    The ratio only tends to 1 as r -> 1: along s = 0 it is 1 - (pi^2 - j01^2) b / constant + O(b^2)
    with b = sqrt(r^2 - 1); the ratio must stay within DEGENERATE_RATIO_TOL of that first-order value.
    """

    edge = table.loc[table.s == 0].sort_values('r')
    if edge.empty or edge[claim.functional].isna().all():
        return pd.Series({'theorem': claim.theorem, 'functional': 'degenerate_ratio', 'constant': math.nan,
                          'max': math.nan, 'r': math.nan, 's': math.nan, 'margin': math.nan,
                          'relative_margin': math.nan, 'pass': False, 'note': 'no isosceles FEM values'})

    row = edge.iloc[0]
    r = float(row.r)
    ratio = float(row[claim.functional]) / claim.constant
    expected = 1 - (PI ** 2 - J01 ** 2) * math.sqrt(r ** 2 - 1) / claim.constant
    margin = DEGENERATE_RATIO_TOL - abs(ratio - expected)

    return pd.Series({'theorem': claim.theorem, 'functional': 'degenerate_ratio', 'constant': expected,
                      'max': ratio, 'r': r, 's': 0.0, 'margin': margin, 'relative_margin': margin,
                      'pass': bool(margin >= 0 and ratio <= 1 + tol),
                      'note': f'{claim.functional} at r={r:.4g}; first-order value {expected:.4f}'})


def consistency_rows(table: pd.DataFrame, tol: float) -> Iterable[pd.Series]:
    """
    rayleigh: FEM mu1 and the FEM means never exceed the closed-form bounds by more than tol.
    cheng: mu1 D^2 < 4 j01^2. geom: the mean chain and the excess lemma hold at every shape.
    """

    for kind in (tb.MU1, tb.HARMONIC_MEAN, tb.ARITHMETIC_MEAN):
        column = f'{kind}_over_bound'
        worst = table[column].idxmax()
        peak = float(table[column][worst])
        yield pd.Series({'theorem': 'rayleigh', 'functional': column, 'constant': 1.0, 'max': peak,
                         'r': float(table.r[worst]), 's': float(table.s[worst]), 'margin': 1.0 - peak,
                         'relative_margin': 1.0 - peak, 'pass': bool(peak <= 1 + tol), 'note': ''})

    if 'mu1_D2' in table:
        worst = table.mu1_D2.idxmax()
        peak = float(table.mu1_D2[worst])
        yield pd.Series({'theorem': 'cheng', 'functional': 'mu1_D2', 'constant': CHENG, 'max': peak,
                         'r': float(table.r[worst]), 's': float(table.s[worst]), 'margin': CHENG - peak,
                         'relative_margin': (CHENG - peak) / CHENG, 'pass': bool(peak < CHENG), 'note': ''})

    for column in ('isoperimetric_slack', 'sumsq_slack', 'excess_lemma_slack'):
        worst = table[column].idxmin()
        low = float(table[column][worst])
        yield pd.Series({'theorem': 'geom', 'functional': column, 'constant': 0.0, 'max': -low,
                         'r': float(table.r[worst]), 's': float(table.s[worst]), 'margin': low,
                         'relative_margin': low, 'pass': bool(low >= -GEOMETRY_SLACK_TOL), 'note': 'min slack'})


def verify_theorems(config: ScanConfig = None, table: pd.DataFrame = None, theorem: str = 'all') -> pd.DataFrame:
    """
    One verdict row per claimed inequality: max over the grid, argmax, margin, pass.
    A theorem passes iff the maximum stays within (1 + tol) of the sharp constant and sits at (2,0)
    (or, for the optimal excess weight, on the degenerate edge).
    """

    if theorem != 'all' and theorem not in THEOREM_IDS:
        raise DomainError(f"Unknown theorem <{theorem}>, expected one of {('all',) + THEOREM_IDS}.")

    tol = config.tol if config is not None else DEFAULT_TOL
    table = _table(config, table)

    rows = [process_claim(table, claim, tol) for claim in THEOREMS if claim.functional in table]
    rows.extend(degenerate_row(table, claim, tol) for claim in THEOREMS
                if claim.degenerate_equality and claim.functional in table)
    rows.extend(consistency_rows(table, tol))
    verdicts = pd.DataFrame(rows)

    if theorem != 'all':
        verdicts = verdicts.loc[verdicts.theorem == theorem].reset_index(drop=True)

    for _, v in verdicts.loc[~verdicts['pass'].astype(bool)].iterrows():
        log(f"[{v.theorem}] {v.functional}: max {v['max']:.6g} vs {v.constant:.6g} ({v.note})",
            verbosity=1, color='red')

    return verdicts


def probe_conjectures(config: ScanConfig = None, table: pd.DataFrame = None) -> pd.DataFrame:
    """Max, argmax and margin of the conjectured functionals; evidence, never a certificate."""

    tol = config.tol if config is not None else DEFAULT_TOL
    table = _table(config, table)

    probes = pd.DataFrame([process_claim(table, claim, tol) for claim in CONJECTURES if claim.functional in table])
    probes['note'] = probes.note + '; ' + CONJECTURE_NOTE

    return probes


def summarize_verdicts(verdicts: pd.DataFrame) -> pd.DataFrame:
    """Per theorem: all claims passed, and the smallest relative margin."""

    return verdicts.groupby('theorem', sort=False).agg(passed=('pass', 'all'),
                                                       worst_relative_margin=('relative_margin', 'min'))


if __name__ == '__main__':
    hlp.hi('Verdicts')

    config = ScanConfig(n_r=12, n_s=12, level=5)
    table = scan(config)
    print(summarize_verdicts(verify_theorems(config, table)))
    print(probe_conjectures(config, table)[['functional', 'max', 'relative_margin']])
