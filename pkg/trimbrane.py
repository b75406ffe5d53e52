#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Command line entry point: Neumann eigenvalues of triangles, closed-form bounds, moduli scans,
theorem verdicts and proof certificates.

Exit status: 0 success, 1 a verification failed, 2 usage error.
"""

import argparse
import os
import sys

import pandas as pd

import utils.helper as hlp
from bounds import trial_bounds as tb
from certificates.curves import certify_thm_1upS
from certificates.rs_regions import certify_lemma_83, certify_thm_1opt
from evaluation.analysis import probe_conjectures, verify_theorems
from evaluation.functionals import THEOREM_IDS
from evaluation.scan import DEFAULT_EPS, DEFAULT_TOL, ScanConfig, scan
from fem.solver import DEFAULT_LEVEL, DEFAULT_REL_TOL, converged_eigs, neumann_eigs
from geometry.triangle import ShapeParams, Triangle
from spectra.equilateral import DEFAULT_ORDER, REL_TOL, verify_integral_table
from utils.helper import DomainError, log
from utils.utils import parse_grid, parse_pair, parse_vertices, write_table

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

CERTIFICATES = {
    '1upS': certify_thm_1upS,
    '1opt': certify_thm_1opt,
    'lemma83': certify_lemma_83,
}


def _out(path: str):
    if path:
        hlp.set_dir(os.path.dirname(os.path.abspath(path)))
    return path


def _triangle(args) -> Triangle:
    if getattr(args, 'rs', None):
        return ShapeParams(*parse_pair(args.rs)).triangle()
    return Triangle.from_array(parse_vertices(args.vertices))


def _scan_config(args) -> ScanConfig:
    n_r, n_s = parse_grid(args.grid)
    return ScanConfig(n_r=n_r, n_s=n_s, eps=args.eps, level=args.level, fem_tol=args.fem_tol,
                      tol=getattr(args, 'tol', DEFAULT_TOL), out=args.out, fmt=args.format, jobs=args.jobs)


############
# Commands #
############

def run_eig(args) -> int:
    t = _triangle(args)
    if args.level is not None:
        spectrum = neumann_eigs(t, level=args.level, k=args.k)
    else:
        spectrum = converged_eigs(t, k=args.k, rel_tol=args.tol)

    write_table(pd.DataFrame(spectrum.as_rows()), _out(args.out), args.format)
    return EXIT_OK


def run_bounds(args) -> int:
    t = _triangle(args)
    rows = [{'name': bv.name, 'kind': bv.functional_kind, 'value': bv.value, 'valid': bv.valid}
            for bv in tb.all_bounds(t)]

    # FEM reference values of the same functionals
    spectrum = neumann_eigs(t, level=args.level, k=2)
    mu1, mu2 = spectrum.mu(1), spectrum.mu(2)
    rows.extend([{'name': 'fem', 'kind': tb.MU1, 'value': mu1, 'valid': True},
                 {'name': 'fem', 'kind': 'mu2', 'value': mu2, 'valid': True},
                 {'name': 'fem', 'kind': tb.HARMONIC_MEAN, 'value': 2 * mu1 * mu2 / (mu1 + mu2), 'valid': True},
                 {'name': 'fem', 'kind': tb.ARITHMETIC_MEAN, 'value': (mu1 + mu2) / 2, 'valid': True},
                 {'name': 'fem', 'kind': tb.PRODUCT, 'value': mu1 * mu2, 'valid': True}])

    write_table(pd.DataFrame(rows), _out(args.out), args.format)
    return EXIT_OK


def run_scan(args) -> int:
    config = _scan_config(args)
    write_table(scan(config), _out(config.out), config.fmt)
    return EXIT_OK


def run_verify(args) -> int:
    config = _scan_config(args)
    table = pd.read_csv(args.table) if args.table else None
    verdicts = verify_theorems(config, table, theorem=args.theorem)

    write_table(verdicts, _out(args.out), args.format)
    return EXIT_OK if verdicts['pass'].astype(bool).all() else EXIT_FAILED


def run_probe(args) -> int:
    config = _scan_config(args)
    table = pd.read_csv(args.table) if args.table else None

    write_table(probe_conjectures(config, table), _out(args.out), args.format)
    return EXIT_OK


def run_certify(args) -> int:
    report = CERTIFICATES[args.theorem](samples=args.samples, strict=args.strict, jobs=args.jobs)

    text = report.to_json() + '\n'
    if args.out:
        with open(_out(args.out), 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    return EXIT_OK if report.passed else EXIT_FAILED


def run_integrals(args) -> int:
    table = verify_integral_table(quadrature_order=args.order, rel_tol=args.tol)

    write_table(table, _out(args.out), args.format)
    return EXIT_OK if table.passed.all() else EXIT_FAILED


##########
# Parser #
##########

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbosity', type=int, default=1, help='Log level on stderr (0 silent, 3 chatty)')
    common.add_argument('--out', default=None, help='Output file (stdout when omitted)')
    common.add_argument('--format', default='csv', choices=('csv', 'json'), help='Table format')
    common.add_argument('--jobs', type=int, default=1, help='Worker processes')

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument('--grid', default='40x40', help='Grid size NRxNS')
    grid.add_argument('--eps', type=float, default=DEFAULT_EPS, help='Distance kept from degenerate shapes')
    grid.add_argument('--level', type=int, default=None, help='Fixed FEM level (default: converge)')
    grid.add_argument('--fem-tol', dest='fem_tol', type=float, default=DEFAULT_REL_TOL,
                      help='FEM relative convergence tolerance')

    parser = argparse.ArgumentParser(prog='trimbrane', description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest='command', required=True)

    eig = sub.add_parser('eig', parents=[common], help='Neumann eigenvalues of one triangle')
    eig.add_argument('--vertices', required=True, help='"x1,y1 x2,y2 x3,y3"')
    level = eig.add_mutually_exclusive_group()
    level.add_argument('--level', type=int, default=None, help='Fixed refinement level')
    level.add_argument('--tol', type=float, default=DEFAULT_REL_TOL, help='Relative convergence tolerance')
    eig.add_argument('--k', type=int, default=2, help='Number of nonzero eigenvalues')
    eig.set_defaults(run=run_eig)

    bounds = sub.add_parser('bounds', parents=[common], help='Closed-form bounds and FEM reference')
    shape = bounds.add_mutually_exclusive_group(required=True)
    shape.add_argument('--vertices', help='"x1,y1 x2,y2 x3,y3"')
    shape.add_argument('--rs', help='Moduli "R,S"')
    bounds.add_argument('--level', type=int, default=DEFAULT_LEVEL, help='FEM level of the reference values')
    bounds.set_defaults(run=run_bounds)

    scan_parser = sub.add_parser('scan', parents=[common, grid], help='Sweep the moduli region')
    scan_parser.add_argument('--tol', dest='fem_tol', type=float, default=DEFAULT_REL_TOL,
                             help='FEM relative convergence tolerance')
    scan_parser.set_defaults(run=run_scan)

    verify = sub.add_parser('verify', parents=[common, grid], help='Theorem verdicts over a scan')
    verify.add_argument('--theorem', default='all', choices=('all',) + THEOREM_IDS)
    verify.add_argument('--tol', type=float, default=DEFAULT_TOL, help='Relative tolerance on sharp constants')
    verify.add_argument('--table', default=None, help='Reuse a scan CSV instead of scanning')
    verify.set_defaults(run=run_verify)

    probe = sub.add_parser('probe-conjectures', parents=[common, grid], help='Conjecture margins over a scan')
    probe.add_argument('--tol', type=float, default=DEFAULT_TOL, help='Relative tolerance on sharp constants')
    probe.add_argument('--table', default=None, help='Reuse a scan CSV instead of scanning')
    probe.set_defaults(run=run_probe)

    certify = sub.add_parser('certify', parents=[common], help='Re-verify a proof case analysis')
    certify.add_argument('--theorem', required=True, choices=tuple(CERTIFICATES))
    certify.add_argument('--samples', type=int, default=10000, help='Samples (per region for 1opt)')
    certify.add_argument('--strict', action='store_true', help='Exact rational checks of the reductions')
    certify.set_defaults(run=run_certify)

    integrals = sub.add_parser('integrals', parents=[common], help='Equilateral integral table')
    integrals.add_argument('--tol', type=float, default=REL_TOL, help='Relative tolerance')
    integrals.add_argument('--order', type=int, default=DEFAULT_ORDER, help='Gauss-Legendre order')
    integrals.set_defaults(run=run_integrals)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    hlp.hi(f"trimbrane {args.command}", verbosity=args.verbosity)

    try:
        return args.run(args)
    except DomainError as e:
        log(f"{e}", verbosity=1, color='red')
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(cli_main())
