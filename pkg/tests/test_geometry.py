import math

import numpy as np
import pytest

from geometry import constants as c
from geometry.quadrature import integrate, reference_rule, triangle_rule
from geometry.triangle import (ShapeParams, Triangle, check_excess_sumsq, check_lemma_S2_excess, check_mean_chain,
                               from_shape_params, in_region, isoperimetric_excess, lemma_S2_excess_forms, mean_chain,
                               means, normalize, summarize, to_shape_params)
from utils.helper import DegenerateTriangleError, DomainError


def random_triangles(n, seed=616):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        v = rng.uniform(-1, 1, (3, 2))
        try:
            out.append(Triangle.from_array(v))
        except DegenerateTriangleError:
            continue
    return out


############
# Triangle #
############

def test_equilateral_summary(equilateral):
    s = summarize(equilateral)

    assert s.area == pytest.approx(math.sqrt(3) / 4, rel=1e-14)
    assert s.perimeter == pytest.approx(3)
    assert s.sumsq == pytest.approx(3)
    assert s.diameter == pytest.approx(1)
    assert abs(s.excess) < 1e-14
    assert s.is_equilateral


def test_heron_matches_shoelace():
    for t in random_triangles(20):
        assert summarize(t).area == pytest.approx(abs(t.signed_area()), rel=1e-10)


def test_collinear_vertices_rejected():
    with pytest.raises(DegenerateTriangleError):
        Triangle((0, 0), (1, 0), (2, 0))
    with pytest.raises(DomainError):
        Triangle((0, 0), (0, 0), (0, 0))


def test_oriented_is_counter_clockwise():
    t = Triangle((0, 0), (0, 1), (1, 0))
    assert t.signed_area() < 0
    assert t.oriented().signed_area() > 0


def test_normalize_half_square(half_square):
    canonical, scale = normalize(half_square)

    assert scale == pytest.approx(math.sqrt(2) / 2)
    assert canonical.v3[0] == pytest.approx(0, abs=1e-14)
    assert canonical.v3[1] == pytest.approx(1)


def test_normalize_preserves_shape(scalene):
    canonical, scale = normalize(scalene)
    original, reduced = summarize(scalene), summarize(canonical)

    assert reduced.diameter == pytest.approx(2)
    assert reduced.area * scale ** 2 == pytest.approx(original.area)
    np.testing.assert_allclose(np.array(reduced.sides) * scale, original.sides)
    assert canonical.v3[0] >= 0


def test_excess_vanishes_only_for_equilateral(scalene):
    assert summarize(scalene).excess > 0


def test_isoperimetric_excess_of_disk():
    assert isoperimetric_excess(2 * math.pi, math.pi) == pytest.approx(0, abs=1e-14)


##########
# Moduli #
##########

def test_equilateral_moduli():
    sp = ShapeParams(2, 0)

    assert sp.is_equilateral
    assert (sp.a, sp.b) == pytest.approx((0, math.sqrt(3)))
    assert sp.excess == pytest.approx(0, abs=1e-14)


def test_right_isosceles_moduli():
    sp = ShapeParams(math.sqrt(2), 0)
    s = summarize(sp.triangle())

    assert (sp.a, sp.b) == pytest.approx((0, 1))
    assert s.area == pytest.approx(sp.area)
    assert s.perimeter == pytest.approx(sp.perimeter)
    assert s.sumsq == pytest.approx(sp.sumsq)


def test_shape_params_round_trip():
    a, b = from_shape_params(1.4, 0.3)
    sp = to_shape_params(a, b)

    assert (sp.r, sp.s) == pytest.approx((1.4, 0.3))


def test_shape_params_round_trip_on_grid():
    r, s = np.meshgrid(np.linspace(1.01, 2.0, 100), np.linspace(0.0, 0.99, 100))
    inside = in_region(r, s)

    for rv, sv in zip(r[inside], s[inside]):
        sp = to_shape_params(*from_shape_params(rv, sv))
        assert (sp.r, sp.s) == pytest.approx((rv, sv), abs=1e-12)
        assert sp.q == pytest.approx(sp.a ** 2 + sp.b ** 2 + 3, abs=1e-12)


@pytest.mark.parametrize('k', [0.5, 2.0, 3.7])
def test_summary_scaling(scalene, k):
    base, scaled = summarize(scalene), summarize(scalene.scaled(k))

    assert scaled.area == pytest.approx(k ** 2 * base.area, rel=1e-12)
    assert scaled.perimeter == pytest.approx(k * base.perimeter, rel=1e-12)
    assert scaled.sumsq == pytest.approx(k ** 2 * base.sumsq, rel=1e-12)
    assert scaled.excess == pytest.approx(k ** 2 * base.excess, rel=1e-10)
    assert scaled.diameter == pytest.approx(k * base.diameter, rel=1e-12)


@pytest.mark.parametrize('r, s', [(0.9, 0.0), (1.0, 0.0), (1.5, 0.6), (1.2, 1.0), (2.1, 0.0)])
def test_outside_region(r, s):
    assert not in_region(r, s)
    with pytest.raises(DomainError):
        ShapeParams(r, s)


def test_in_region_vectorized():
    mask = in_region(np.array([1.5, 2.0, 1.0]), np.array([0.2, 0.0, 0.5]))
    assert mask.tolist() == [True, True, False]


#########
# Means #
#########

def test_means():
    m = means([1, 2, 4])

    assert m.arithmetic == pytest.approx(7 / 3)
    assert m.harmonic == pytest.approx(12 / 7)
    assert m.geometric == pytest.approx(2)
    assert m.quadratic == pytest.approx(math.sqrt(7))


def test_means_reject_zero_and_negative():
    with pytest.raises(DomainError):
        means([1, 0])
    with pytest.raises(DomainError):
        means([1, -2])


def test_mean_chain_is_monotone():
    for t in random_triangles(30):
        chain = mean_chain(t)
        assert chain.heron == pytest.approx(chain.geometric, rel=1e-10)
        assert chain.geometric <= chain.arithmetic * (1 + 1e-12)
        assert chain.arithmetic == pytest.approx(chain.perimeter_sq, rel=1e-10)
        assert chain.perimeter_sq == pytest.approx(chain.side_mean, rel=1e-12)
        assert chain.side_mean <= chain.side_quadratic * (1 + 1e-12)
        assert chain.side_quadratic == pytest.approx(chain.sumsq, rel=1e-12)


def test_mean_chain_equalities_for_equilateral(equilateral):
    chain = mean_chain(equilateral)
    assert np.ptp(np.array(chain)) < 1e-12
    assert check_mean_chain(equilateral) == pytest.approx((0, 0), abs=1e-12)


def test_excess_sumsq_lemma():
    for t in random_triangles(30):
        assert check_excess_sumsq(t) >= -1e-12


def test_excess_sumsq_lemma_equality(equilateral):
    assert check_excess_sumsq(equilateral) == pytest.approx(0, abs=1e-12)


def test_excess_lemma_moduli_form():
    assert check_lemma_S2_excess(1.4, 0.5) > 0
    assert check_lemma_S2_excess(2.0, 0.0) == pytest.approx(0, abs=1e-14)

    direct, rearranged = lemma_S2_excess_forms(np.linspace(1.01, 1.9, 50), np.linspace(0, 0.09, 50))
    np.testing.assert_allclose(direct, rearranged, atol=1e-12)


#############
# Constants #
#############

def test_bessel_roots_match_scipy():
    assert all(d < 1e-12 for d in c.bessel_root_drift().values())
    assert all(d < 1e-4 for d in c.quoted_root_drift().values())


def test_excess_weight_majorant():
    assert c.EXCESS_WEIGHT < c.EXCESS_WEIGHT_MAJORANT
    assert c.CHENG == pytest.approx(4 * c.J01 ** 2, rel=1e-15)
    assert c.CHENG == pytest.approx(23.1327, abs=1e-4)
    assert c.MU1_A == pytest.approx(7.5976, abs=1e-4)


##############
# Quadrature #
##############

def test_reference_rule_weights():
    points, weights = reference_rule(10)

    assert weights.sum() == pytest.approx(0.5)
    assert np.all(points.sum(axis=1) <= 1)


def test_polynomial_exactness():
    ref = [[0, 0], [1, 0], [0, 1]]

    assert integrate(lambda x, y: x, ref, 5) == pytest.approx(1 / 6)
    assert integrate(lambda x, y: x ** 2 * y, ref, 5) == pytest.approx(1 / 60)


def test_triangle_rule_area(scalene):
    _, weights = triangle_rule(scalene.vertices, 8)
    assert weights.sum() == pytest.approx(summarize(scalene).area)


def test_vector_integrands(half_square):
    values = integrate(lambda x, y: np.stack([np.ones_like(x), x]), half_square.vertices, 6)
    np.testing.assert_allclose(values, [0.5, 1 / 6])


def test_bad_order():
    with pytest.raises(DomainError):
        reference_rule(0)
