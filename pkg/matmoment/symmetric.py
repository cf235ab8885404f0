# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines class `SymmetricMatrix` and the positive semi-definiteness tests that
every decision procedure relies on:

- `symmetric.symmetrize`
- `symmetric.as_symmetric`
- `symmetric.min_eigenvalue`
- `symmetric.is_psd`

"""

import dataclasses

import numpy as np

from matmoment.errors import AsymmetricInput, NonSquare
from matmoment.numalg import linalg
from matmoment.tolerance import Tolerance

__all__ = [
    "SymmetricMatrix", "PsdVerdict", "symmetrize", "as_symmetric",
    "min_eigenvalue", "is_psd", "inf_norm"
]


def _square(raw):
    a = np.array(raw, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NonSquare(f"Expected a nonempty square matrix, got shape "
                        f"{a.shape}.",
                        shape=list(a.shape))
    return a


def inf_norm(a):
    """
    The maximum absolute row sum of `a`.

    """
    return float(np.linalg.norm(np.asarray(a, dtype=float), np.inf))


@dataclasses.dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    r"""
    A real symmetric $p \times p$ matrix.

    The input is symmetrized on construction as $(A + A^T)/2$; the largest
    entrywise asymmetry $\max |A - A^T|$ of the input is kept in `defect`.
    The stored entries are read-only.

    Parameters
    ----------

    `entries` : array_like
    A square real array.

    """

    entries: np.ndarray
    defect: float = dataclasses.field(init=False, default=0.)

    def __post_init__(self):
        a = _square(self.entries)
        sym = 0.5 * (a + a.T)
        sym.flags.writeable = False
        object.__setattr__(self, "entries", sym)
        object.__setattr__(self, "defect", float(np.max(np.abs(a - a.T))))

    @property
    def dim(self):
        """
        The order $p$ of the matrix.

        """
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):  # pylint: disable=unused-argument
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    def __repr__(self):
        return f"SymmetricMatrix({self.entries.tolist()!r})"


@dataclasses.dataclass(frozen=True, eq=False)
class PsdVerdict:
    """
    Outcome of `is_psd`.

    `psd` is the verdict, `min_eigenvalue` the smallest eigenvalue and
    `threshold` the (nonpositive) floor it was compared with. When the matrix
    is not PSD, `eigenvector` is a unit eigenvector for `min_eigenvalue`.
    `boundary` is set when the matrix is PSD only thanks to the tolerance
    band, i.e. `threshold <= min_eigenvalue < 0`.

    """

    psd: bool
    min_eigenvalue: float
    threshold: float
    eigenvector: np.ndarray | None = None
    boundary: bool = False

    def __bool__(self):
        return self.psd


def symmetrize(raw):
    """
    Return the symmetric part $(A + A^T)/2$ of a square array.

    Raises `NonSquare` when `raw` is not square.

    """
    return SymmetricMatrix(np.asarray(raw, dtype=float))


def as_symmetric(raw, tol=None):
    """
    Symmetrize `raw`, rejecting genuinely asymmetric data.

    Parameters
    ----------

    `raw` : array_like
    A square real array, or a `SymmetricMatrix`.

    `tol` : Tolerance (optional)
    The asymmetry defect must stay below
    `residual_eps * max(1, ||raw||_inf)`.

    Returns
    -------

    out : SymmetricMatrix

    """
    if isinstance(raw, SymmetricMatrix):
        return raw
    tol = tol or Tolerance()
    matrix = symmetrize(raw)
    bound = tol.residual_eps * max(1., inf_norm(raw))
    if matrix.defect > 0. and matrix.defect >= bound:
        raise AsymmetricInput(
            f"Asymmetry defect {matrix.defect:.3e} exceeds {bound:.3e}.",
            defect=matrix.defect)
    return matrix


def _entries(matrix):
    if isinstance(matrix, SymmetricMatrix):
        return matrix.entries
    return symmetrize(matrix).entries


def min_eigenvalue(matrix):
    """
    The smallest eigenvalue of a symmetric matrix.

    Diagonal matrices are read off exactly; otherwise LAPACK's symmetric
    eigen-solver is used. Raises `ConvergenceFailure` on solver failure or
    non-finite entries.

    """
    a = _entries(matrix)
    if not np.any(a - np.diag(np.diag(a))):
        diagonal = np.diag(a)
        if np.all(np.isfinite(diagonal)):
            return float(np.min(diagonal))
    return float(linalg.eigvalsh(a)[0])


def is_psd(matrix, tol=None):
    r"""
    Test positive semi-definiteness relative to the size of the matrix.

    Details
    -------

    The matrix $M$ is declared PSD when
    $\lambda_{min}(M) \geq -\epsilon_{psd} \max(1, \|M\|_\infty)$.

    Parameters
    ----------

    `matrix` : SymmetricMatrix or array_like
    The matrix to test; arrays are symmetrized first.

    `tol` : Tolerance (optional)

    Returns
    -------

    out : PsdVerdict

    """
    tol = tol or Tolerance()
    a = _entries(matrix)
    values, vectors = linalg.eigh(a)
    lam = float(values[0])
    threshold = -tol.psd_eps * max(1., inf_norm(a))
    if lam >= threshold:
        return PsdVerdict(True, lam, threshold, boundary=lam < 0.)
    return PsdVerdict(False, lam, threshold, eigenvector=vectors[:, 0].copy())
