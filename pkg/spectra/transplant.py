#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Affine transplantation of the equilateral modes onto the canonical triangle (-1,0), (1,0), (a,b),
and the closed-form Rayleigh quotients of the transplanted functions
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from geometry.constants import PI, SQRT3
from geometry.quadrature import DEFAULT_ORDER, triangle_rule
from spectra import equilateral as eq
from utils.helper import DomainError

# (32 pi^2 + 243) q - 1458 > 0 for q > 3
C_PLUS = 32 * PI ** 2 + 243
C_MINUS = 32 * PI ** 2 - 243


def _check_apex(b: float):
    if not b > 0:
        raise DomainError(f"Apex height must be positive, got b = {b}.")


def _q(a: float, b: float) -> float:
    return a ** 2 + b ** 2 + 3


##############
# Affine map #
##############

@dataclass(frozen=True)
class AffineMap:
    """tau: E -> T sending (0,0), (1,0), (1/2, sqrt3/2) to (-1,0), (1,0), (a,b)."""

    a: float
    b: float

    def __post_init__(self):
        _check_apex(self.b)

    def forward(self, xi, eta):
        xi, eta = np.asarray(xi, dtype=float), np.asarray(eta, dtype=float)
        return -1 + 2 * xi + 2 * self.a * eta / SQRT3, 2 * self.b * eta / SQRT3

    def inverse(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return (1 + x - self.a * y / self.b) / 2, SQRT3 * y / (2 * self.b)

    @property
    def jacobian(self) -> np.ndarray:
        return np.array([[2.0, 2 * self.a / SQRT3], [0.0, 2 * self.b / SQRT3]])

    @property
    def det(self) -> float:
        return 4 * self.b / SQRT3

    @property
    def vertices(self) -> np.ndarray:
        return np.array([[-1.0, 0.0], [1.0, 0.0], [self.a, self.b]])

    def pullback_gradient(self, u_xi, u_eta):
        """Gradient of u o tau^-1 from the gradient of u."""
        return u_xi / 2, -self.a / (2 * self.b) * u_xi + SQRT3 / (2 * self.b) * u_eta

    def pullback_laplacian(self, u_xixi, u_xieta, u_etaeta):
        """Laplacian of u o tau^-1 from the Hessian of u."""
        a, b = self.a, self.b
        return ((1 + a ** 2 / b ** 2) / 4 * u_xixi
                - SQRT3 * a / (2 * b ** 2) * u_xieta
                + 3 / (4 * b ** 2) * u_etaeta)


@dataclass(frozen=True)
class TransplantCoeffs:
    """v = (gamma u1 + delta u2) o tau^-1"""

    gamma: float
    delta: float

    def __post_init__(self):
        if self.gamma == 0 and self.delta == 0:
            raise DomainError("Trial coefficients (gamma, delta) must not both vanish.")


class Transplanted:
    """A transplanted combination of u1 and u2, evaluated on the target triangle."""

    def __init__(self, coeffs: TransplantCoeffs, a: float, b: float):
        self.coeffs = coeffs
        self.tau = AffineMap(a, b)

    def _combine(self, f, x, y):
        xi, eta = self.tau.inverse(x, y)
        g, d = self.coeffs.gamma, self.coeffs.delta
        return [g * p + d * q for p, q in zip(f(1, xi, eta), f(2, xi, eta))]

    def __call__(self, x, y):
        xi, eta = self.tau.inverse(x, y)
        return self.coeffs.gamma * eq.eval_mode(1, xi, eta) + self.coeffs.delta * eq.eval_mode(2, xi, eta)

    def grad(self, x, y):
        u_xi, u_eta = self._combine(eq.eval_grad, x, y)
        return self.tau.pullback_gradient(u_xi, u_eta)

    def laplacian(self, x, y):
        return self.tau.pullback_laplacian(*self._combine(eq.eval_hessian, x, y))


######################
# Rayleigh quotients #
######################

def transplanted_rayleigh(gamma: float, delta: float, a: float, b: float) -> float:
    """R[(gamma u1 + delta u2) o tau^-1] in closed form."""

    _check_apex(b)
    TransplantCoeffs(gamma, delta)
    q = _q(a, b)

    numerator = ((C_PLUS * q - 1458) * gamma ** 2
                 - 972 * SQRT3 * a * gamma * delta
                 + (C_MINUS * q + 1458) * delta ** 2)

    return numerator / (144 * b ** 2 * (gamma ** 2 + delta ** 2))


def general_rayleigh(Iux2: float, Iuy2: float, Iuxy: float, Iu2: float, a: float, b: float) -> float:
    """R[u o tau^-1] from the integrals of u_x^2, u_y^2, u_x u_y and u^2 over E."""

    _check_apex(b)
    if not Iu2 > 0:
        raise DomainError(f"Integral of u^2 must be positive, got {Iu2}.")

    return ((a ** 2 + b ** 2) * Iux2 - 2 * SQRT3 * a * Iuxy + 3 * Iuy2) / (4 * b ** 2 * Iu2)


def transplanted_form(a: float, b: float, Iux_wx: float, Iux_wy: float, Iuy_wx: float, Iuy_wy: float) -> float:
    """
    (1/det tau) * integral over T of grad(u o tau^-1) . grad(w o tau^-1), from integrals over E.
    """

    _check_apex(b)
    return ((a ** 2 + b ** 2) * Iux_wx - SQRT3 * a * (Iux_wy + Iuy_wx) + 3 * Iuy_wy) / (4 * b ** 2)


def rayleigh_v1(a: float, b: float) -> float:
    return transplanted_rayleigh(1.0, 0.0, a, b)


def rayleigh_v2(a: float, b: float) -> float:
    return transplanted_rayleigh(0.0, 1.0, a, b)


def ortho_gamma(a: float, b: float) -> float:
    """gamma such that grad v1 and grad (gamma v1 + v2) are L2-orthogonal over T."""

    _check_apex(b)
    return 486 * SQRT3 * a / (C_PLUS * _q(a, b) - 1458)


##############
# Laplacians #
##############

def laplacian_ratio_vertices(a: float, b: float) -> Tuple[float, float]:
    """Delta v / v at (0,0) and at the apex (a,b), for any v = (gamma u1 + delta u2) o tau^-1 with delta != 0."""

    _check_apex(b)
    c = 2 * PI ** 2 / (9 * b ** 2)

    return c * (a ** 2 + b ** 2 - 9), -c * (a ** 2 + b ** 2 + 3)


def laplacian_ratio_numeric(a: float, b: float, gamma: float = 1.0, delta: float = 0.5,
                            h: float = 1e-4) -> Tuple[float, float]:
    """
    Five-point stencil estimate of Delta v / v at (0,0) and (a,b). The trigonometric formulas extend
    v analytically across the edges, so the stencil is centered at the points themselves.
    """

    v = Transplanted(TransplantCoeffs(gamma, delta), a, b)

    ratios = []
    for x, y in ((0.0, 0.0), (a, b)):
        center = v(x, y)
        stencil = v(x + h, y) + v(x - h, y) + v(x, y + h) + v(x, y - h) - 4 * center
        ratios.append(float(stencil / h ** 2 / center))

    return ratios[0], ratios[1]


##########
# Oracle #
##########

def rayleigh_by_quadrature(gamma: float, delta: float, a: float, b: float,
                           order: int = DEFAULT_ORDER) -> Tuple[float, float, float]:
    """
    Direct quadrature over T of |grad v|^2 and v^2 (and of v itself).

    :return: (Rayleigh quotient, integral of v^2, integral of v)
    """

    v = Transplanted(TransplantCoeffs(gamma, delta), a, b)
    points, weights = triangle_rule(v.tau.vertices, order)
    x, y = points[:, 0], points[:, 1]

    vx, vy = v.grad(x, y)
    values = v(x, y)
    energy = (vx ** 2 + vy ** 2) @ weights
    mass = values ** 2 @ weights

    return float(energy / mass), float(mass), float(values @ weights)
