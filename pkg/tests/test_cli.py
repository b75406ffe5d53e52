import io
import json

import pandas as pd
import pytest

from trimbrane import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli_main

QUIET = ['--verbosity', '0']


def run(capsys, *argv):
    code = cli_main(list(argv) + QUIET)
    return code, capsys.readouterr().out


def test_eig(capsys):
    code, out = run(capsys, 'eig', '--vertices', '0,0 1,0 0,1', '--level', '4')
    table = pd.read_csv(io.StringIO(out))

    assert code == EXIT_OK
    assert list(table['index']) == [1, 2]
    assert table.mu.iloc[0] < table.mu.iloc[1]


def test_eig_degenerate_triangle(capsys):
    code, out = run(capsys, 'eig', '--vertices', '0,0 1,0 2,0', '--level', '3')

    assert code == EXIT_USAGE
    assert out == ''


def test_eig_level_and_tol_exclusive(capsys):
    code, _ = run(capsys, 'eig', '--vertices', '0,0 1,0 0,1', '--level', '3', '--tol', '1e-3')
    assert code == EXIT_USAGE


@pytest.mark.parametrize('argv', [[], ['bogus'], ['certify', '--theorem', 'nope']])
def test_usage_errors(argv):
    assert cli_main(argv) == EXIT_USAGE


def test_help():
    assert cli_main(['--help']) == EXIT_OK


def test_integrals(capsys):
    code, out = run(capsys, 'integrals')
    table = pd.read_csv(io.StringIO(out))

    assert code == EXIT_OK
    assert len(table) == 13
    assert table.passed.all()


def test_integrals_too_coarse(capsys):
    code, _ = run(capsys, 'integrals', '--order', '2')
    assert code == EXIT_FAILED


def test_certify_lemma(capsys):
    code, out = run(capsys, 'certify', '--theorem', 'lemma83', '--samples', '1000')
    payload = json.loads(out)

    assert code == EXIT_OK
    assert payload['theorem'] == 'lemma83'
    assert payload['pass']


def test_certify_too_few_samples(capsys):
    code, _ = run(capsys, 'certify', '--theorem', '1upS', '--samples', '10')
    assert code == EXIT_USAGE


def test_bounds_from_moduli(capsys):
    code, out = run(capsys, 'bounds', '--rs', '1.5,0.2', '--level', '3')
    table = pd.read_csv(io.StringIO(out))

    assert code == EXIT_OK
    assert 'transplant' in set(table['name'])
    assert (table['name'] == 'fem').sum() == 5


def test_bounds_outside_region(capsys):
    code, _ = run(capsys, 'bounds', '--rs', '2.5,0.2')
    assert code == EXIT_USAGE


def test_scan_then_verify(capsys, tmp_path):
    path = tmp_path / 'scan.csv'
    code, out = run(capsys, 'scan', '--grid', '3x3', '--level', '4', '--out', str(path))

    assert code == EXIT_OK
    assert out == ''
    assert len(pd.read_csv(path)) == 7

    code, out = run(capsys, 'verify', '--table', str(path), '--theorem', 'geom')
    verdicts = pd.read_csv(io.StringIO(out))

    assert code == EXIT_OK
    assert set(verdicts.theorem) == {'geom'}

    code, out = run(capsys, 'probe-conjectures', '--table', str(path), '--format', 'json')

    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 2


@pytest.mark.slow
def test_certify_strict_report(capsys):
    code, out = run(capsys, 'certify', '--theorem', '1opt', '--samples', '1000', '--strict')
    payload = json.loads(out)

    assert code == EXIT_OK
    assert all(check['pass'] for check in payload['checks'])
    assert any(check['name'].startswith('strict:edge_s=2-r') for check in payload['checks'])
