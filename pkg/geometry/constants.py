#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Bessel roots and sharp constants
"""

import math

from scipy import special

PI = math.pi
SQRT3 = math.sqrt(3)

# First positive zeros of J0, J1 and J1'
J01 = 2.404825557695773
J11 = 3.831705970207512
J11P = 1.841183781340659

# Four-decimal values as commonly quoted
J01_QUOTED = 2.4048
J11_QUOTED = 3.8317
J11P_QUOTED = 1.8412

# Equilateral triangle of side 1: mu1 = mu2
EQUILATERAL_MU = 16 * PI ** 2 / 9

# Sharp constants (equality for the equilateral triangle)
MU1_S2 = 16 * PI ** 2 / 3
MU1_L2 = 16 * PI ** 2
MU1_A = 4 * PI ** 2 / (3 * SQRT3)
HARMONIC_A = MU1_A
ARITHMETIC_A2_S2 = PI ** 2 / 9
PRODUCT_A3_S2 = 4 * PI ** 4 / (27 * SQRT3)
HARMONIC_L2 = 16 * PI ** 2
PRODUCT_A2 = 16 * PI ** 4 / 27

# Cheng: mu1 D^2 < 4 j01^2 for convex domains
CHENG = 4 * J01 ** 2

# Disk value of mu1 A, the bound for general domains
SZEGO_WEINBERGER = PI * J11P ** 2

# Weight of the triangular excess in the optimal excess bound, and its rational majorant
EXCESS_WEIGHT = PI ** 2 / J01 ** 2
EXCESS_WEIGHT_MAJORANT = 12 / 7


def bessel_root_drift() -> dict:
    """Difference between the stored roots and scipy's, per root."""

    return {
        'j01': abs(J01 - special.jn_zeros(0, 1)[0]),
        'j11': abs(J11 - special.jn_zeros(1, 1)[0]),
        'j11p': abs(J11P - special.jnp_zeros(1, 1)[0]),
    }


def quoted_root_drift() -> dict:
    """Difference between the stored roots and their four-decimal quotes."""

    return {
        'j01': abs(J01 - J01_QUOTED),
        'j11': abs(J11 - J11_QUOTED),
        'j11p': abs(J11P - J11P_QUOTED),
    }
