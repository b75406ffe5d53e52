import io

import numpy as np
import pandas as pd
import pytest

import utils.helper as hlp
from utils.helper import DegenerateTriangleError, DomainError, SolverError
from utils.utils import parse_grid, parse_pair, parse_vertices, shard, sobol_points, worst_of, write_table


def test_sobol_points_are_reproducible():
    a, b = sobol_points(100), sobol_points(100)

    assert a.shape == (100, 2)
    np.testing.assert_array_equal(a, b)
    assert np.all((a >= 0) & (a < 1))


def test_sobol_points_seed_changes_points():
    assert not np.array_equal(sobol_points(64, seed=1), sobol_points(64, seed=2))


def test_sobol_points_rejects_empty():
    with pytest.raises(DomainError):
        sobol_points(0)


def test_shard_preserves_order():
    items = np.arange(10)
    chunks = shard(items, 3)

    assert len(chunks) == 3
    np.testing.assert_array_equal(np.concatenate(chunks), items)
    assert len(shard(items, 50)) == 10


def test_worst_of_breaks_ties_lexicographically():
    candidates = [(1.0, (2.0, 0.0)), (2.0, (0.0, 0.0)), (1.0, (1.0, 5.0)), (-1.0, None)]
    assert worst_of(candidates) == (1.0, (1.0, 5.0))


def test_worst_of_ignores_shard_order():
    candidates = [(0.5, (1.0, 1.0)), (0.5, (0.5, 3.0)), (0.7, (0.0, 0.0))]
    assert worst_of(candidates) == worst_of(candidates[::-1])


def test_parse_vertices():
    v = parse_vertices("0,0 1,0 0,1")
    np.testing.assert_array_equal(v, [[0, 0], [1, 0], [0, 1]])

    with pytest.raises(DomainError):
        parse_vertices("0,0 1,0")
    with pytest.raises(DomainError):
        parse_vertices("0,0 1,a 0,1")


def test_parse_pair_and_grid():
    assert parse_pair("1.5,0.2") == (1.5, 0.2)
    assert parse_grid("40x40") == (40, 40)
    assert parse_grid("12X7") == (12, 7)

    with pytest.raises(DomainError):
        parse_grid("40x")
    with pytest.raises(DomainError):
        parse_grid("4.5x3")


def test_write_table_csv_precision(tmp_path):
    df = pd.DataFrame({'x': [1 / 3], 'name': ['a,b']})
    path = tmp_path / 'out.csv'
    text = write_table(df, str(path))

    assert text.splitlines()[0] == 'x,name'
    assert text.splitlines()[1] == '0.333333333333,"a,b"'
    assert path.read_text() == text


def test_write_table_json_lines(capsys):
    df = pd.DataFrame({'x': [1.0, 2.0]})
    write_table(df, fmt='json')

    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert pd.read_json(io.StringIO('\n'.join(lines)), lines=True).x.tolist() == [1.0, 2.0]


def test_write_table_rejects_format():
    with pytest.raises(DomainError):
        write_table(pd.DataFrame({'x': [1]}), fmt='xml')


def test_log_goes_to_stderr(capsys):
    hlp.set_params(verbosity=3)
    hlp.log("hello", verbosity=2, timestamped=False)
    hlp.log("too chatty", verbosity=4)

    captured = capsys.readouterr()
    assert 'hello' in captured.err
    assert 'too chatty' not in captured.err
    assert captured.out == ''


def test_time_it_keeps_name():
    @hlp.time_it
    def something():
        """doc"""
        return 3

    assert something() == 3
    assert something.__name__ == 'something'
    assert something.__doc__ == 'doc'


def test_error_hierarchy():
    assert issubclass(DegenerateTriangleError, DomainError)
    assert issubclass(DomainError, ValueError)
    assert issubclass(SolverError, RuntimeError)
