import math

import numpy as np
import pytest

from bounds import trial_bounds as tb
from geometry.constants import MU1_A, PI, SQRT3
from geometry.quadrature import integrate
from geometry.triangle import ShapeParams, Triangle
from spectra import transplant
from utils.helper import DomainError
from utils.utils import sample_in_triangle

EQUILATERAL = (0.0, SQRT3)


def test_equilateral_values():
    a, b = EQUILATERAL

    assert tb.best_linear_mu1_bound(a, b).value == pytest.approx(6)
    assert tb.transplanted_mu1_bound(a, b).value == pytest.approx(4 * PI ** 2 / 9)
    assert tb.harmonic_poly_bound(a, b).value == pytest.approx(80 / 9)
    assert tb.harmonic_transplant_bound(a, b).value == pytest.approx(4 * PI ** 2 / (3 * SQRT3))
    assert tb.arithmetic_transplant_bound(a, b).value == pytest.approx(4 * PI ** 2 / 9)


def test_excess_bound_at_equilateral():
    bv = tb.excess_trial_bound(*EQUILATERAL)

    assert bv.name == 'excess_equilateral_modes'
    assert bv.value == pytest.approx(4 * PI ** 2 / (3 * SQRT3))
    assert set(bv.params) == {'sector', 'linear', 'equilateral_modes'}


@pytest.mark.parametrize('a, b', [(0.3, 1.2), (0.0, 0.8), (0.5, 1.6), (0.9, 0.3), (0.02, 1.7)])
def test_best_linear_matches_closed_form(a, b):
    best = tb.best_linear_mu1_bound(a, b)

    assert best.value == pytest.approx(float(tb.best_linear_closed_form(a, b)), rel=1e-10)
    for gamma in np.linspace(-5, 5, 41):
        assert tb.linear_mu1_bound(a, b, gamma).value >= best.value * (1 - 1e-12)


def test_best_linear_closed_form_vectorized():
    values = tb.best_linear_closed_form(np.array([0.0, 0.3]), np.array([SQRT3, 1.2]))

    assert values.shape == (2,)
    assert values[0] == pytest.approx(6)


def test_cheng_bound():
    assert tb.cheng_mu1_bound(2.0).value == pytest.approx(tb.J01 ** 2)
    with pytest.raises(DomainError):
        tb.cheng_mu1_bound(0.0)


def test_flat_apex_rejected():
    with pytest.raises(DomainError):
        tb.harmonic_poly_bound(0.2, 0.0)
    with pytest.raises(DomainError):
        tb.excess_trial_bound(0.2, -1.0)


def test_bounds_scale_with_triangle(scalene):
    small = {bv.name: bv for bv in tb.all_bounds(scalene)}
    large = {bv.name: bv for bv in tb.all_bounds(scalene.scaled(2.0))}

    for name, bv in small.items():
        if bv.functional_kind == tb.PRODUCT:
            factor = 16
        elif bv.functional_kind == tb.EXCESS:
            factor = 1
        else:
            factor = 4
        assert bv.value == pytest.approx(factor * large[name].value, rel=1e-10), name


def test_rescaled_bounds_at_unit_equilateral(equilateral):
    bounds = tb.all_bounds(equilateral)

    value, name = tb.min_bound(bounds, tb.MU1)
    assert name == 'transplant'
    assert value == pytest.approx(16 * PI ** 2 / 9)

    harmonic, _ = tb.min_bound(bounds, tb.HARMONIC_MEAN)
    assert harmonic == pytest.approx(16 * PI ** 2 / 9)


def test_min_bound_without_candidates():
    value, name = tb.min_bound([tb.cheng_mu1_bound(1.0)], tb.PRODUCT)

    assert math.isnan(value)
    assert name == ''


def test_harmonic_cases():
    assert tb.harmonic_cases(*EQUILATERAL) == ['equilateral']
    assert tb.harmonic_cases(0.9, 0.3) == ['polynomial']


@pytest.mark.parametrize('r', np.linspace(1.05, 2.0, 8))
@pytest.mark.parametrize('fraction', [0.0, 0.4, 0.9])
def test_harmonic_area_bound_over_region(r, fraction):
    sp = ShapeParams(r, fraction * min(2 - r, 0.99))
    a, b = sp.a, sp.b

    best = min(tb.harmonic_poly_bound(a, b).value * b, tb.harmonic_transplant_bound(a, b).value)
    assert best <= MU1_A * (1 + 1e-12)
    assert tb.harmonic_cases(a, b)


def test_product_bound_is_harmonic_times_arithmetic():
    bv = tb.geometric_product_bound(0.3, 1.2)
    assert bv.value == pytest.approx(bv.params['H'] * bv.params['M'])


def test_excess_trial_bound_uses_transplant():
    a, b = 0.1, 1.6
    t = Triangle((-1.0, 0.0), (1.0, 0.0), (a, b))
    bv = tb.excess_trial_bound(a, b)

    assert bv.value == min(bv.params.values())
    assert bv.params['equilateral_modes'] > 0
    assert transplant.transplanted_rayleigh(1.0, 1 / 3, a, b) > 0
    assert tb.all_bounds(t)[-1].value == pytest.approx(bv.value)


##########################
# Trial functions vs. FE #
##########################

def canonical_apexes(n, seed=7):
    moduli = sample_in_triangle(np.array([[1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]), n, seed=seed)
    return [(ShapeParams(r, s).a, ShapeParams(r, s).b) for r, s in moduli]


def polynomial_pair(a):
    f1 = lambda x, y: x - a / 3
    f2 = lambda x, y: (x - a / 3) ** 2 - (3 + a ** 2) / 18
    return f1, f2


@pytest.mark.parametrize('a, b', canonical_apexes(20))
def test_polynomial_pair_orthogonality(a, b):
    vertices = [(-1.0, 0.0), (1.0, 0.0), (a, b)]
    f1, f2 = polynomial_pair(a)

    assert abs(integrate(f2, vertices, order=8)) < 1e-9
    assert abs(integrate(lambda x, y: 2 * (x - a / 3), vertices, order=8)) < 1e-9


@pytest.mark.parametrize('a, b', [(0.0, 1.0), (0.0, SQRT3), (0.4, 0.8), (0.9, 0.3)])
def test_polynomial_quotients_by_quadrature(a, b):
    vertices = [(-1.0, 0.0), (1.0, 0.0), (a, b)]
    f1, f2 = polynomial_pair(a)
    params = tb.harmonic_poly_bound(a, b).params

    r1 = integrate(lambda x, y: np.ones_like(x), vertices, order=8) / integrate(lambda x, y: f1(x, y) ** 2, vertices,
                                                                                 order=8)
    r2 = integrate(lambda x, y: (2 * f1(x, y)) ** 2, vertices, order=8) / integrate(lambda x, y: f2(x, y) ** 2,
                                                                                    vertices, order=8)

    assert params['R_f1'] == pytest.approx(r1, rel=1e-10)
    assert params['R_f2'] == pytest.approx(r2, rel=1e-10)


def test_polynomial_quotient_at_symmetric_apex():
    assert tb.harmonic_poly_bound(0.0, 1.0).params['R_f2'] == pytest.approx(120 / 7)


@pytest.mark.parametrize('a, b', canonical_apexes(6, seed=11))
def test_transplanted_modes_orthogonal(a, b):
    v1 = transplant.Transplanted(transplant.TransplantCoeffs(1.0, 0.0), a, b)
    v2 = transplant.Transplanted(transplant.TransplantCoeffs(0.0, 1.0), a, b)

    assert abs(integrate(lambda x, y: v1(x, y) * v2(x, y), v1.tau.vertices)) < 1e-9


@pytest.mark.parametrize('a, b', [(0.3, 1.2), (0.05, 0.4), (0.7, 0.9)])
def test_arithmetic_bound_by_quadrature(a, b):
    r1, _, _ = transplant.rayleigh_by_quadrature(1.0, 0.0, a, b)
    r2, _, _ = transplant.rayleigh_by_quadrature(0.0, 1.0, a, b)

    assert tb.arithmetic_transplant_bound(a, b).value == pytest.approx((r1 + r2) / 2, rel=1e-8)
