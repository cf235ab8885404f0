# Distributed under the MIT License.
# See LICENSE for details.
"""
Wraps some functions from `numpy.polynomial.polynomial`.

Coefficients are ordered from low to high degree throughout.

"""

import numpy as np
import numpy.polynomial.polynomial as npoly

__all__ = ["polycompanion", "polyfromroots", "polytrim"]


def polycompanion(c):
    """
    Wrapper to `numpy.polynomial.polynomial.polycompanion`. See the NumPy
    documentation for details.

    """
    return npoly.polycompanion(c)


def polyfromroots(roots):
    """
    Wrapper to `numpy.polynomial.polynomial.polyfromroots`. Imaginary parts
    left over from conjugate pairs are discarded.

    """
    coeffs = npoly.polyfromroots(roots)
    return np.real(coeffs).astype(float)


def polytrim(c, tol=0):
    """
    Wrapper to `numpy.polynomial.polynomial.polytrim`. See the NumPy
    documentation for details.

    """
    return npoly.polytrim(c, tol)
