#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Triangles, their canonical position, the (r,s) moduli and the geometric functionals/mean inequalities
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from scipy import stats

from geometry.constants import PI, SQRT3
from utils.helper import DegenerateTriangleError, DomainError

DEGENERACY = 1e-14
EQUILATERAL_TOL = 1e-9
REGION_TOL = 1e-12


############
# Triangle #
############

@dataclass(frozen=True)
class Triangle:
    """Three planar vertices. Construction rejects (nearly) collinear vertices."""

    v1: Tuple[float, float]
    v2: Tuple[float, float]
    v3: Tuple[float, float]

    def __post_init__(self):
        for name in ('v1', 'v2', 'v3'):
            x, y = getattr(self, name)
            object.__setattr__(self, name, (float(x), float(y)))

        L = sum(self.edge_lengths())
        if not (np.all(np.isfinite(self.vertices)) and L > 0):
            raise DegenerateTriangleError(f"Invalid vertices {self.v1}, {self.v2}, {self.v3}.")
        if abs(self.signed_area()) < DEGENERACY * L ** 2:
            raise DegenerateTriangleError(f"Triangle {self.v1}, {self.v2}, {self.v3} is degenerate.")

    @classmethod
    def from_array(cls, vertices: Sequence) -> 'Triangle':
        v = np.asarray(vertices, dtype=float).reshape(3, 2)
        return cls(tuple(v[0]), tuple(v[1]), tuple(v[2]))

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3], dtype=float)

    def signed_area(self) -> float:
        (x1, y1), (x2, y2), (x3, y3) = self.v1, self.v2, self.v3
        return 0.5 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))

    def edge_lengths(self) -> Tuple[float, float, float]:
        """Lengths of the edges opposite v1, v2, v3."""
        v = self.vertices
        return (float(np.hypot(*(v[2] - v[1]))),
                float(np.hypot(*(v[0] - v[2]))),
                float(np.hypot(*(v[1] - v[0]))))

    def scaled(self, k: float) -> 'Triangle':
        return Triangle.from_array(k * self.vertices)

    def oriented(self) -> 'Triangle':
        """Same triangle, counter-clockwise."""
        if self.signed_area() > 0:
            return self
        return Triangle(self.v1, self.v3, self.v2)


class GeometricSummary(NamedTuple):
    area: float
    perimeter: float
    sumsq: float
    diameter: float
    excess: float
    sides: Tuple[float, float, float]

    @property
    def is_equilateral(self) -> bool:
        return is_equilateral(self.sides)


def heron_area(l1: float, l2: float, l3: float) -> float:
    """Numerically stable Heron formula; sides must be sorted l1 >= l2 >= l3."""

    a, b, c = l1, l2, l3
    product = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))

    return 0.25 * math.sqrt(max(product, 0.0))


def is_equilateral(sides: Sequence[float], tol: float = EQUILATERAL_TOL) -> bool:
    return (max(sides) - min(sides)) < tol * max(sides)


def summarize(t: Triangle) -> GeometricSummary:
    """Area (Heron), perimeter, sum of squared sides, diameter and triangular excess."""

    l1, l2, l3 = sorted(t.edge_lengths(), reverse=True)
    A = heron_area(l1, l2, l3)
    L = l1 + l2 + l3

    return GeometricSummary(area=A,
                            perimeter=L,
                            sumsq=l1 ** 2 + l2 ** 2 + l3 ** 2,
                            diameter=l1,
                            excess=triangular_excess(L, A),
                            sides=(l1, l2, l3))


def triangular_excess(L: float, A: float) -> float:
    """E_T = L^2/(12 sqrt 3) - A, zero exactly for equilateral triangles."""
    return L ** 2 / (12 * SQRT3) - A


def isoperimetric_excess(L: float, A: float) -> float:
    """E = L^2/(4 pi) - A, the excess over the disk for a general plane domain (not verified here)."""
    return L ** 2 / (4 * PI) - A


def normalize(t: Triangle) -> Tuple[Triangle, float]:
    """
    Similar triangle with vertices (-1,0), (1,0), (a,b), a >= 0, b > 0 (longest side on [-1,1]),
    together with the similarity ratio. Eigenvalues transform as mu(t) = mu(canonical) / scale^2.
    """

    summary = summarize(t)
    l1, l2, l3 = summary.sides
    scale = l1 / 2

    # l2 joins (-1,0) to the apex, l3 joins (1,0) to it
    a = (l2 ** 2 - l3 ** 2) / (4 * scale ** 2)
    b = summary.area / scale ** 2

    return Triangle((-1.0, 0.0), (1.0, 0.0), (a, b)), scale


##########
# Moduli #
##########

@dataclass(frozen=True)
class ShapeParams:
    """
    Moduli (r,s) of a canonical triangle: r = (l2+l3)/2, s = (l2-l3)/2 with l1 = 2.
    (2,0) is equilateral, r -> 1 degenerates.
    """

    r: float
    s: float

    def __post_init__(self):
        object.__setattr__(self, 'r', float(self.r))
        object.__setattr__(self, 's', float(self.s))
        check_region(self.r, self.s)

    @property
    def a(self) -> float:
        return self.r * self.s

    @property
    def b(self) -> float:
        return math.sqrt(max((self.r ** 2 - 1) * (1 - self.s ** 2), 0.0))

    @property
    def p(self) -> float:
        return self.b ** 2

    @property
    def q(self) -> float:
        return self.r ** 2 + self.s ** 2 + 2

    @property
    def perimeter(self) -> float:
        return 2 * (1 + self.r)

    @property
    def area(self) -> float:
        return self.b

    @property
    def sumsq(self) -> float:
        return 2 * self.q

    @property
    def diameter(self) -> float:
        return 2.0

    @property
    def excess(self) -> float:
        return (1 + self.r) ** 2 / (3 * SQRT3) - self.b

    @property
    def is_equilateral(self) -> bool:
        return abs(self.r - 2) < EQUILATERAL_TOL and abs(self.s) < EQUILATERAL_TOL

    def triangle(self) -> Triangle:
        return Triangle((-1.0, 0.0), (1.0, 0.0), (self.a, self.b))


def in_region(r, s, tol: float = REGION_TOL):
    """1 < r <= 2, 0 <= s < 1, r + s <= 2 (vectorized)."""

    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    return (r > 1) & (r <= 2 + tol) & (s >= -tol) & (s < 1) & (r + s <= 2 + tol)


def check_region(r: float, s: float):
    if not bool(in_region(r, s)):
        raise DomainError(f"(r,s) = ({r}, {s}) outside 1 < r <= 2, 0 <= s < 1, r+s <= 2.")


def to_shape_params(a: float, b: float) -> ShapeParams:
    """Canonical apex (a,b) -> moduli (r,s)."""

    if not (a >= -REGION_TOL and b > 0 and (a + 1) ** 2 + b ** 2 <= 4 * (1 + REGION_TOL)):
        raise DomainError(f"Apex ({a}, {b}) is not canonical (need a >= 0, b > 0, (a+1)^2 + b^2 <= 4).")

    l2, l3 = math.hypot(a + 1, b), math.hypot(a - 1, b)
    r, s = (l2 + l3) / 2, (l2 - l3) / 2

    return ShapeParams(min(r, 2.0), max(s, 0.0))


def from_shape_params(r: float, s: float) -> Tuple[float, float]:
    """Moduli (r,s) -> canonical apex (a,b)."""

    sp = ShapeParams(r, s)
    return sp.a, sp.b


#########
# Means #
#########

class Means(NamedTuple):
    arithmetic: float
    harmonic: float
    geometric: float
    quadratic: float


def means(values: Sequence[float]) -> Means:
    """Arithmetic, harmonic, geometric and quadratic means: M >= G >= H and Q >= M."""

    x = np.asarray(values, dtype=float)
    if x.size == 0 or np.any(x < 0):
        raise DomainError(f"Means need nonnegative values, got {values}.")
    if np.any(x == 0):
        raise DomainError("Harmonic mean undefined when a value is zero.")

    return Means(arithmetic=float(np.mean(x)),
                 harmonic=float(stats.hmean(x)),
                 geometric=float(stats.gmean(x)),
                 quadratic=float(np.sqrt(np.mean(x ** 2))))


def harmonic(x: float, y: float) -> float:
    return 2 * x * y / (x + y)


###############
# Inequalities #
###############

class MeanChain(NamedTuple):
    """12 sqrt3 A = 3 sqrt(3L) G(L-2l)^(3/2) <= 3 sqrt(3L) M(L-2l)^(3/2) = L^2 = 9 M(l)^2 <= 9 Q(l)^2 = 3 S^2"""
    heron: float
    geometric: float
    arithmetic: float
    perimeter_sq: float
    side_mean: float
    side_quadratic: float
    sumsq: float


def mean_chain(t: Triangle) -> MeanChain:
    s = summarize(t)
    L = s.perimeter
    gaps = [max(L - 2 * l, 0.0) for l in s.sides]
    sides = means(s.sides)

    return MeanChain(heron=12 * SQRT3 * s.area,
                     geometric=3 * math.sqrt(3 * L) * float(stats.gmean(gaps)) ** 1.5,
                     arithmetic=3 * math.sqrt(3 * L) * float(np.mean(gaps)) ** 1.5,
                     perimeter_sq=L ** 2,
                     side_mean=9 * sides.arithmetic ** 2,
                     side_quadratic=9 * sides.quadratic ** 2,
                     sumsq=3 * s.sumsq)


def check_mean_chain(t: Triangle) -> Tuple[float, float]:
    """(L^2 - 12 sqrt3 A, 3 S^2 - L^2), both >= 0 and both zero iff equilateral."""

    s = summarize(t)
    return s.perimeter ** 2 - 12 * SQRT3 * s.area, 3 * s.sumsq - s.perimeter ** 2


def check_excess_sumsq(t: Triangle) -> float:
    """(12/sqrt3)(A + 3/2 E_T) - S^2 >= 0, zero for equilateral."""

    s = summarize(t)
    return (12 / SQRT3) * (s.area + 1.5 * s.excess) - s.sumsq


def lemma_S2_excess_forms(r, s) -> Tuple[np.ndarray, np.ndarray]:
    """
    The squared form of the excess lemma two ways:
    (2r - (1+s^2))^2 - 3(r^2-1)(1-s^2) and (1+3s^2)(r - 2(1+s^2)/(1+3s^2))^2 + 3s^2(1-s^2)^2/(1+3s^2).
    """

    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    direct = (2 * r - (1 + s ** 2)) ** 2 - 3 * (r ** 2 - 1) * (1 - s ** 2)
    w = 1 + 3 * s ** 2
    rearranged = w * (r - 2 * (1 + s ** 2) / w) ** 2 + 3 * s ** 2 * (1 - s ** 2) ** 2 / w

    return direct, rearranged


def check_lemma_S2_excess(r: float, s: float) -> float:
    """2r - (1+s^2) - sqrt(3(r^2-1)(1-s^2)) >= 0, zero at (2,0)."""

    check_region(r, s)
    direct, rearranged = lemma_S2_excess_forms(r, s)
    assert abs(direct - rearranged) <= 1e-10 * (1 + abs(direct)), \
        f"Excess lemma forms disagree at ({r}, {s}): {direct} vs {rearranged}"

    return float(2 * r - (1 + s ** 2) - math.sqrt(max(3 * (r ** 2 - 1) * (1 - s ** 2), 0.0)))
