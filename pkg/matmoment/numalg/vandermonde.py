# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines `vandermonde_solve`.

"""

import numpy as np

__all__ = ["vandermonde_matrix", "vandermonde_solve"]


def vandermonde_matrix(nodes, n_rows=None):
    r"""
    The matrix $V$ with $V_{ji} = x_i^j$, $j = 0, \dots, n_{rows} - 1$.

    """
    nodes = np.asarray(nodes, dtype=float)
    n_rows = nodes.size if n_rows is None else n_rows
    return np.vander(nodes, n_rows, increasing=True).T


def vandermonde_solve(nodes, rhs):
    r"""
    Solve $\sum_i x_i^j z_i = b_j$, $j = 0, \hdots, k-1$, for $z$.

    Details
    -------

    Uses the progressive elimination of Björck and Pereyra (Golub and Van
    Loan, Algorithm 4.6.2), with $O(k^2)$ operations per right-hand side.
    All columns of `rhs` are processed at once.

    Parameters
    ----------

    `nodes` : array_like
    The $k$ pairwise distinct nodes $x_i$.

    `rhs` : array_like
    Right-hand sides of shape `(k,)` or `(k, m)`.

    Returns
    -------

    out : ndarray
    The solution, with the shape of `rhs`.

    """
    x = np.asarray(nodes, dtype=float)
    b = np.array(rhs, dtype=float)
    n = x.size - 1
    if b.shape[0] != x.size:
        raise ValueError(
            f"rhs has {b.shape[0]} rows but there are {x.size} nodes.")

    for k in range(n):
        for i in range(n, k, -1):
            b[i] = b[i] - x[k] * b[i - 1]

    for k in range(n - 1, -1, -1):
        for i in range(k + 1, n + 1):
            b[i] = b[i] / (x[i] - x[i - k - 1])
        for i in range(k, n):
            b[i] = b[i] - b[i + 1]

    return b
