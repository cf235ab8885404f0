# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines the moment-sequence data types and the block Hankel matrices built
from them:

- `hankel.MatrixMomentSequence`
- `hankel.BlockHankel`
- `hankel.MomentVerdict`
- `hankel.build_hankel`
- `hankel.build_difference_hankel`
- `hankel.build_complement_hankel`
- `hankel.riesz_eval`
- `hankel.gram_polynomial`

"""

import dataclasses

import numpy as np

from matmoment.errors import (DegreeTooHigh, DimensionMismatch,
                              InsufficientMoments)
from matmoment.symmetric import SymmetricMatrix, as_symmetric, symmetrize

__all__ = [
    "MatrixMomentSequence", "BlockHankel", "Certificate", "MomentVerdict",
    "build_hankel", "build_difference_hankel", "build_complement_hankel",
    "riesz_eval", "gram_polynomial"
]

_SHIFT_NAMES = {0: "H", 1: "EH", 2: "E2H"}


def _stack(matrices):
    a = np.array([np.asarray(m, dtype=float) for m in matrices], dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1, 1)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise DimensionMismatch(
            "Moments must be square matrices sharing one dimension.",
            shape=list(a.shape))
    return a


@dataclasses.dataclass(frozen=True, eq=False)
class MatrixMomentSequence:
    """
    A finite sequence $S_0, \\hdots, S_n$ of $p \\times p$ real matrices.

    In symmetric mode (the default) every moment is symmetrized on
    construction; in raw mode the matrices are kept as given and only square
    shape is enforced. Scalar sequences may be given as a flat list.

    Parameters
    ----------

    `moments` : array_like
    Array of shape `(n + 1, p, p)`, a list of `p x p` arrays, or a flat list
    of scalars (`p = 1`).

    `symmetric` : bool (optional, default: True)
    Whether the sequence is in symmetric mode.

    """

    moments: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        a = _stack(self.moments)
        if a.shape[0] < 1:
            raise InsufficientMoments("A moment sequence needs at least S_0.")
        if self.symmetric:
            a = 0.5 * (a + np.transpose(a, (0, 2, 1)))
        a.flags.writeable = False
        object.__setattr__(self, "moments", a)

    @classmethod
    def from_matrices(cls, matrices, tol=None, symmetric=True):
        """
        Build a sequence from raw matrices, rejecting (in symmetric mode)
        any matrix whose asymmetry defect exceeds the tolerance.

        """
        if symmetric:
            matrices = [as_symmetric(m, tol).entries for m in matrices]
        return cls(_stack(matrices), symmetric=symmetric)

    @property
    def dim(self):
        """
        The common order $p$ of the moments.

        """
        return self.moments.shape[1]

    @property
    def order(self):
        """
        The truncation order $n$, i.e. the index of the last moment.

        """
        return self.moments.shape[0] - 1

    @property
    def scale(self):
        """
        The largest absolute entry over all moments, floored at 1.

        """
        return max(1., float(np.max(np.abs(self.moments))))

    def __len__(self):
        return self.moments.shape[0]

    def __getitem__(self, k):
        return self.moments[k]

    def matrix(self, k):
        """
        The moment $S_k$ as a `SymmetricMatrix`.

        """
        return symmetrize(self.moments[k])

    def entry(self, u, v):
        """
        The scalar sequence $(S_k)_{uv}$, $k = 0, \\hdots, n$.

        """
        return self.moments[:, u, v].copy()

    def truncated(self, n):
        """
        The subsequence $S_0, \\hdots, S_n$.

        """
        if n > self.order:
            raise InsufficientMoments(
                f"Cannot truncate a sequence of order {self.order} at {n}.")
        return MatrixMomentSequence(self.moments[:n + 1], self.symmetric)


@dataclasses.dataclass(frozen=True, eq=False)
class BlockHankel:
    """
    A symmetric block Hankel matrix with `blocks_per_side` square blocks of
    order `block_dim` along each side.

    """

    name: str
    block_dim: int
    blocks_per_side: int
    data: np.ndarray

    def block(self, i, j):
        """
        The block in block-row `i` and block-column `j`.

        """
        p = self.block_dim
        return self.data[i * p:(i + 1) * p, j * p:(j + 1) * p]

    def matrix(self):
        """
        The full matrix as a `SymmetricMatrix`.

        """
        return SymmetricMatrix(self.data)


@dataclasses.dataclass(frozen=True, eq=False)
class Certificate:
    """
    Why a positivity test failed: the offending Hankel matrix, its smallest
    eigenvalue and a matching eigenvector.

    """

    matrix_name: str
    eigenvalue: float
    eigenvector: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class MomentVerdict:
    """
    Outcome of a truncated Hamburger, Stieltjes or Hausdorff test.

    A `True` verdict certifies the truncated problem only: positivity is
    checked at the largest Hankel orders the available moments allow.

    """

    problem_kind: str
    truncation_order: int
    satisfied: bool
    failing_certificate: Certificate | None = None
    tested: tuple = ()
    boundary: tuple = ()

    def __post_init__(self):
        if self.satisfied == (self.failing_certificate is not None):
            raise ValueError(
                "A certificate is required exactly when the verdict fails.")

    def __bool__(self):
        return self.satisfied


def _assemble(blocks, m, name):
    """
    Assemble the block Hankel matrix whose $(i, j)$ block is `blocks[i + j]`.

    """
    p = blocks.shape[1]
    data = np.empty(((m + 1) * p, (m + 1) * p))
    for i in range(m + 1):
        for j in range(m + 1):
            data[i * p:(i + 1) * p, j * p:(j + 1) * p] = blocks[i + j]
    return BlockHankel(name, p, m + 1, data)


def _require(seq, needed, name):
    if needed > seq.order:
        raise InsufficientMoments(
            f"{name} needs moments up to S_{needed}, but the sequence stops "
            f"at S_{seq.order}.",
            needed=needed,
            available=seq.order)


def build_hankel(seq, m, shift=0):
    """
    Build $H_m = (S_{i+j})$, $EH_m = (S_{i+j+1})$ or $E^2H_m = (S_{i+j+2})$,
    $0 \\leq i, j \\leq m$.

    Parameters
    ----------

    `seq` : MatrixMomentSequence
    The moments.

    `m` : int
    Blocks are indexed $0, \\hdots, m$.

    `shift` : int (optional, default: 0)
    One of 0, 1, 2.

    Returns
    -------

    out : BlockHankel

    """
    if shift not in _SHIFT_NAMES:
        raise ValueError(f"shift must be 0, 1 or 2, got {shift}.")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}.")
    name = f"{_SHIFT_NAMES[shift]}_{m}"
    _require(seq, 2 * m + shift, name)
    return _assemble(seq.moments[shift:2 * m + shift + 1], m, name)


def build_difference_hankel(seq, m):
    """
    Build $(E - E^2)H_m$, with blocks $S_{i+j+1} - S_{i+j+2}$.

    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}.")
    name = f"(E-E2)H_{m}"
    _require(seq, 2 * m + 2, name)
    s = seq.moments
    return _assemble(s[1:2 * m + 2] - s[2:2 * m + 3], m, name)


def build_complement_hankel(seq, m):
    """
    Build $(I - E)H_m$, with blocks $S_{i+j} - S_{i+j+1}$.

    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}.")
    name = f"(I-E)H_{m}"
    _require(seq, 2 * m + 1, name)
    s = seq.moments
    return _assemble(s[:2 * m + 1] - s[1:2 * m + 2], m, name)


def _coefficients(poly_coeffs, dim):
    coeffs = [np.asarray(c, dtype=float) for c in poly_coeffs]
    if not coeffs:
        return np.zeros((0, dim, dim))
    a = np.array(coeffs)
    if a.ndim == 1 and dim == 1:
        a = a.reshape(-1, 1, 1)
    if a.ndim != 3 or a.shape[1:] != (dim, dim):
        raise DimensionMismatch(
            f"Polynomial coefficients must be {dim} x {dim} matrices.",
            shape=list(a.shape))
    return a


def riesz_eval(seq, poly_coeffs):
    r"""
    Evaluate the Riesz functional
    $L_S(\sum_k A_k X^k) = \sum_k \mathrm{Tr}(A_k S_k)$.

    Parameters
    ----------

    `seq` : MatrixMomentSequence
    The moments.

    `poly_coeffs` : list
    The coefficients $A_0, A_1, \hdots$ of the matrix polynomial, lowest
    degree first. Trailing zero coefficients do not count towards the degree.

    Returns
    -------

    out : float

    """
    a = _coefficients(poly_coeffs, seq.dim)
    nonzero = [k for k in range(a.shape[0]) if np.any(a[k])]
    if not nonzero:
        return 0.
    degree = nonzero[-1]
    if degree > seq.order:
        raise DegreeTooHigh(
            f"Polynomial of degree {degree} needs moments up to S_{degree}, "
            f"but the sequence stops at S_{seq.order}.",
            degree=degree,
            available=seq.order)
    return float(
        np.einsum("kij,kji->", a[:degree + 1], seq.moments[:degree + 1]))


def gram_polynomial(poly_coeffs):
    r"""
    Coefficients of ${}^{\top}P P$ for $P = \sum_i A_i X^i$.

    The $k$-th coefficient is $\sum_{i+j=k} A_i^T A_j$, a symmetric matrix.

    """
    a = np.array([np.atleast_2d(np.asarray(c, dtype=float))
                  for c in poly_coeffs])
    d = a.shape[0] - 1
    out = np.zeros((2 * d + 1, a.shape[2], a.shape[2]))
    for i in range(d + 1):
        for j in range(d + 1):
            out[i + j] += a[i].T @ a[j]
    return out
