import math

import numpy as np
import pytest

from fem import solver
from fem.assembly import assemble, element_matrices
from fem.mesh import MAX_LEVEL, expected_size, refine
from fem.solver import (SpectrumEstimate, aspect_ratio, converged_eigs, discrete_eigs, drop_zero_mode, neumann_eigs,
                        richardson)
from geometry.constants import CHENG, EQUILATERAL_MU, PI
from geometry.triangle import ShapeParams, Triangle, summarize
from utils.helper import DomainError, SolverError
from utils.utils import sample_in_triangle, sobol_points

SLIVER = Triangle((0.0, 0.0), (1.0, 0.0), (0.5, 0.01))


########
# Mesh #
########

@pytest.mark.parametrize('level', [0, 1, 3, 5])
def test_mesh_sizes(scalene, level):
    mesh = refine(scalene, level)

    assert (mesh.n_elements, mesh.n_vertices) == expected_size(level)
    assert np.all(mesh.element_areas() > 0)
    assert mesh.element_areas().sum() == pytest.approx(summarize(scalene).area)


def test_refinement_is_congruent(half_square):
    areas = refine(half_square, 4).element_areas()
    np.testing.assert_allclose(areas, areas[0])


def test_clockwise_input_is_reoriented():
    mesh = refine(Triangle((0, 0), (0, 1), (1, 0)), 2)
    assert np.all(mesh.element_areas() > 0)


@pytest.mark.parametrize('level', [-1, MAX_LEVEL + 1, 2.5])
def test_bad_level(half_square, level):
    with pytest.raises(DomainError):
        refine(half_square, level)


############
# Assembly #
############

def test_reference_element():
    stiffness, mass = element_matrices(np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0]))

    np.testing.assert_allclose(stiffness[0], [[1, -0.5, -0.5], [-0.5, 0.5, 0], [-0.5, 0, 0.5]])
    np.testing.assert_allclose(mass[0], np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]]) / 24)


def test_assembled_matrices(scalene):
    stiffness, mass = assemble(refine(scalene, 3))
    ones = np.ones(stiffness.shape[0])

    np.testing.assert_allclose(stiffness @ ones, 0, atol=1e-12)
    assert ones @ (mass @ ones) == pytest.approx(summarize(scalene).area)
    assert abs(stiffness - stiffness.T).max() < 1e-14
    assert abs(mass - mass.T).max() < 1e-14


def test_linear_function_energy(half_square):
    mesh = refine(half_square, 2)
    stiffness, _ = assemble(mesh)
    x = mesh.vertices[:, 0]

    # |grad x|^2 integrates to the area
    assert x @ (stiffness @ x) == pytest.approx(0.5)


##########
# Solver #
##########

def test_drop_zero_mode():
    np.testing.assert_allclose(drop_zero_mode(np.array([3.0, 1e-12, 2.0])), [2.0, 3.0])

    with pytest.raises(SolverError):
        drop_zero_mode(np.array([1.0, 2.0, 3.0]))
    with pytest.raises(SolverError):
        drop_zero_mode(np.array([1e-12, 1e-13, 3.0]))
    with pytest.raises(SolverError):
        drop_zero_mode(np.array([0.5]))


def test_richardson():
    extrapolated, errors = richardson(np.array([1.04]), np.array([1.01]))

    assert extrapolated[0] == pytest.approx(1.0)
    assert errors[0] == pytest.approx(0.01)


def test_invalid_requests(half_square):
    with pytest.raises(DomainError):
        discrete_eigs(half_square, 2, 0)
    with pytest.raises(DomainError):
        discrete_eigs(half_square, 0, 3)
    with pytest.raises(DomainError):
        converged_eigs(half_square, rel_tol=1e-7)
    with pytest.raises(DomainError):
        converged_eigs(half_square, start_level=8)


def test_sliver_needs_fine_level():
    assert aspect_ratio(SLIVER) > solver.DEGENERATE_ASPECT
    with pytest.raises(DomainError):
        neumann_eigs(SLIVER, level=2)


def test_single_level_has_infinite_errors(half_square):
    spectrum = neumann_eigs(half_square, level=0, k=1)

    assert spectrum.levels == (0,)
    assert math.isinf(spectrum.errors[0])
    assert spectrum.mu(1) == spectrum.eigenvalues[0]


def test_half_square_coarse(half_square):
    spectrum = neumann_eigs(half_square, level=5, k=2)

    assert isinstance(spectrum, SpectrumEstimate)
    assert spectrum.levels == (4, 5)
    assert spectrum.mu(1) == pytest.approx(PI ** 2, rel=1e-3)
    assert spectrum.mu(2) == pytest.approx(2 * PI ** 2, rel=1e-3)
    # conforming elements approximate from above
    assert spectrum.eigenvalues[0] > PI ** 2

    rows = spectrum.as_rows()
    assert [row['index'] for row in rows] == [1, 2]


def test_eigenvalues_scale_with_size(scalene):
    small = neumann_eigs(scalene, level=4, k=3)
    large = neumann_eigs(scalene.scaled(2.0), level=4, k=3)

    np.testing.assert_allclose(np.array(small.eigenvalues), 4 * np.array(large.eigenvalues), rtol=1e-10)


def test_sparse_path_matches_dense(monkeypatch, scalene):
    dense = discrete_eigs(scalene, 5, 3)
    monkeypatch.setattr(solver, 'DENSE_DOF_LIMIT', 100)
    sparse = discrete_eigs(scalene, 5, 3)

    np.testing.assert_allclose(sparse, dense, rtol=1e-8)


def test_capped_convergence(half_square):
    spectrum = converged_eigs(half_square, rel_tol=1e-6, start_level=2, max_level=4)

    assert not spectrum.converged
    assert spectrum.achieved_tol > 1e-6
    assert spectrum.levels == (3, 4)


@pytest.mark.slow
def test_half_square_oracle(half_square):
    spectrum = neumann_eigs(half_square, level=6, k=2)

    assert spectrum.mu(1) == pytest.approx(PI ** 2, rel=1e-4)
    assert spectrum.mu(2) == pytest.approx(2 * PI ** 2, rel=1e-4)


@pytest.mark.slow
def test_equilateral_oracle(equilateral):
    spectrum = neumann_eigs(equilateral, level=6, k=2)

    assert spectrum.mu(1) == pytest.approx(EQUILATERAL_MU, rel=1e-4)
    assert spectrum.mu(2) == pytest.approx(EQUILATERAL_MU, rel=1e-4)


@pytest.mark.slow
def test_converged_half_square(half_square):
    spectrum = converged_eigs(half_square, rel_tol=1e-4)

    assert spectrum.converged
    assert spectrum.achieved_tol <= 1e-4
    assert spectrum.mu(1) == pytest.approx(PI ** 2, rel=1e-4)


@pytest.mark.slow
@pytest.mark.parametrize('r, s', [(1.3, 0.0), (1.5, 0.3), (1.8, 0.1), (1.3, 0.65)])
def test_cheng_bound_holds(r, s):
    t = ShapeParams(r, s).triangle()
    spectrum = neumann_eigs(t, level=5, k=1)

    assert spectrum.mu(1) * summarize(t).diameter ** 2 < CHENG


@pytest.mark.parametrize('level', [3, 4])
def test_zero_mode_is_numerically_zero(scalene, level):
    stiffness, mass = assemble(refine(scalene, level))
    values = solver._solve(stiffness, mass, 3, summarize(scalene).area)

    assert abs(values[0]) < 1e-10 * values[1]
    assert values[1] > 0


def test_refinement_decreases_eigenvalues(scalene):
    values = np.array([discrete_eigs(scalene, level, 2) for level in range(1, 6)])
    assert np.all(np.diff(values, axis=0) < 1e-10 * values[1:])


@pytest.mark.parametrize('name, exact', [('half_square', PI ** 2), ('equilateral', EQUILATERAL_MU)])
def test_observed_convergence_order(request, name, exact):
    t = request.getfixturevalue(name)
    coarse, fine = (discrete_eigs(t, level, 1)[0] - exact for level in (4, 5))

    assert fine > 0
    assert 1.7 <= math.log2(coarse / fine) <= 2.3


@pytest.mark.slow
def test_cheng_bound_on_random_triangles():
    moduli = sample_in_triangle(np.array([[1.15, 0.0], [2.0, 0.0], [1.15, 0.85]]), 100)
    scales = 0.5 + sobol_points(100, d=1, seed=3)[:, 0]

    for (r, s), k in zip(moduli, scales):
        t = ShapeParams(r, s).triangle().scaled(k)
        spectrum = neumann_eigs(t, level=5, k=1)
        assert spectrum.mu(1) * summarize(t).diameter ** 2 < CHENG, (r, s)
