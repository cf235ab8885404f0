# Distributed under the MIT License.
# See LICENSE for details.
"""
Wraps some functions from `scipy.linalg`.

Failures of the underlying LAPACK routines, and non-finite input, are
reported as `errors.ConvergenceFailure`.

"""

import numpy as np
import scipy.linalg

from matmoment.errors import ConvergenceFailure

__all__ = [
    "eigh", "eigvalsh", "eigvals", "lstsq", "hankel", "matrix_balance",
    "condition_number"
]


def _finite(a, routine):
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ConvergenceFailure(f"{routine}: input has non-finite entries.")
    return a


def eigh(a):
    """
    Wrapper to `scipy.linalg.eigh`. Returns eigenvalues in ascending order
    and the matching orthonormal eigenvectors as columns.

    """
    a = _finite(a, "eigh")
    try:
        return scipy.linalg.eigh(a, check_finite=False)
    except np.linalg.LinAlgError as err:
        raise ConvergenceFailure(f"eigh did not converge: {err}") from err


def eigvalsh(a):
    """
    Wrapper to `scipy.linalg.eigvalsh`. Returns eigenvalues in ascending
    order.

    """
    a = _finite(a, "eigvalsh")
    try:
        return scipy.linalg.eigvalsh(a, check_finite=False)
    except np.linalg.LinAlgError as err:
        raise ConvergenceFailure(f"eigvalsh did not converge: {err}") from err


def eigvals(a):
    """
    Wrapper to `scipy.linalg.eigvals` for general (non-symmetric) matrices.

    """
    a = _finite(a, "eigvals")
    try:
        return scipy.linalg.eigvals(a, check_finite=False)
    except np.linalg.LinAlgError as err:
        raise ConvergenceFailure(f"eigvals did not converge: {err}") from err


def lstsq(a, b):
    """
    Wrapper to `scipy.linalg.lstsq`. Returns only the solution.

    """
    a = _finite(a, "lstsq")
    b = _finite(b, "lstsq")
    try:
        solution, *_ = scipy.linalg.lstsq(a, b, check_finite=False)
    except np.linalg.LinAlgError as err:
        raise ConvergenceFailure(f"lstsq did not converge: {err}") from err
    return solution


def hankel(c, r=None):  # pylint: disable=invalid-name
    """
    Wrapper to `scipy.linalg.hankel`. See the SciPy documentation for details.

    """
    return scipy.linalg.hankel(c, r)


def matrix_balance(a):
    """
    Wrapper to `scipy.linalg.matrix_balance`. Returns only the balanced
    matrix.

    """
    balanced, _ = scipy.linalg.matrix_balance(_finite(a, "matrix_balance"),
                                              permute=True,
                                              scale=True)
    return balanced


def condition_number(a):
    """
    The 2-norm condition number, via `numpy.linalg.cond`.

    """
    return float(np.linalg.cond(_finite(a, "condition_number")))
