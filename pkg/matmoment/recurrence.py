# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines matrix sequences given by a linear recurrence with scalar
coefficients,

    S_{n+1} = a_0 S_n + a_1 S_{n-1} + ... + a_{r-1} S_{n-r+1},   n >= r - 1,

together with their characteristic and minimal polynomials:

- `recurrence.extend`
- `recurrence.is_characteristic`
- `recurrence.entry_minimal_polynomial`
- `recurrence.minimal_polynomial`
- `recurrence.roots`

"""

import dataclasses
import itertools
import logging
import math

import numpy as np

from matmoment.errors import (InconsistentRoots, InsufficientTerms,
                              InvalidRecurrence, NoRecurrenceFound)
from matmoment.hankel import MatrixMomentSequence
from matmoment.numalg import linalg, polynomial
from matmoment.symmetric import as_symmetric
from matmoment.tolerance import Tolerance

__all__ = [
    "RealPolynomial", "RecurrenceSpec", "Root", "RootMultiset", "extend",
    "is_characteristic", "entry_minimal_polynomial", "minimal_polynomial",
    "roots"
]

_logger = logging.getLogger(__name__)


# Polynomial has abstract methods inherited from ABCPolyBase that are
# implemented through class attributes, so pylint cannot see them.
class RealPolynomial(np.polynomial.Polynomial):  # pylint: disable=abstract-method
    """
    A real polynomial with coefficients ordered from low to high degree.

    Notes
    -----

    - This class inherits from numpy.polynomial.Polynomial_, so evaluation and
      arithmetic come for free and return `RealPolynomial` instances.

    .. _numpy.polynomial.Polynomial: https://numpy.org/doc/stable/reference/
       generated/numpy.polynomial.polynomial.Polynomial.html

    """

    @classmethod
    def from_roots(cls, values):
        """
        The monic polynomial with the given roots (repeated by multiplicity).

        """
        values = list(values)
        if not values:
            return cls([1.])
        return cls(polynomial.polyfromroots(values))

    @property
    def coeffs(self):
        """
        The coefficients, lowest degree first, with trailing zeros removed.

        """
        return tuple(float(c) for c in polynomial.polytrim(self.coef))

    def monic(self):
        """
        The polynomial divided by its leading coefficient.

        """
        c = np.array(self.coeffs)
        if not np.any(c):
            raise ValueError("The zero polynomial has no monic form.")
        return RealPolynomial(c / c[-1])


@dataclasses.dataclass(frozen=True, eq=False)
class RecurrenceSpec:
    """
    A linear recurrence of order $r$ with scalar coefficients and $r$ initial
    matrices.

    Parameters
    ----------

    `order` : int
    The order $r \\geq 1$.

    `coeffs` : sequence of float
    The coefficients $a_0, \\hdots, a_{r-1}$, with $a_{r-1} \\neq 0$.

    `initials` : array_like
    The matrices $S_0, \\hdots, S_{r-1}$, all of order $p$.

    `symmetric` : bool (optional, default: True)
    Whether the generated sequence is in symmetric mode.

    """

    order: int
    coeffs: tuple
    initials: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        coeffs = tuple(float(a) for a in self.coeffs)
        if int(self.order) != self.order or self.order < 1:
            raise InvalidRecurrence(
                f"The order must be a positive integer, got {self.order}.")
        if len(coeffs) != self.order:
            raise InvalidRecurrence(
                f"Expected {self.order} coefficients, got {len(coeffs)}.")
        if not all(math.isfinite(a) for a in coeffs):
            raise InvalidRecurrence("Recurrence coefficients must be finite.")
        if coeffs[-1] == 0.:
            raise InvalidRecurrence(
                "The last recurrence coefficient a_{r-1} must be nonzero.")
        initials = MatrixMomentSequence(self.initials, self.symmetric).moments
        if initials.shape[0] != self.order:
            raise InvalidRecurrence(
                f"Expected {self.order} initial matrices, got "
                f"{initials.shape[0]}.")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "initials", initials)

    @classmethod
    def from_matrices(cls, coeffs, initials, tol=None, symmetric=True):
        """
        Build a recurrence from raw initial matrices, rejecting (in symmetric
        mode) genuinely asymmetric ones.

        """
        if symmetric:
            initials = [as_symmetric(m, tol).entries for m in initials]
        return cls(len(coeffs), tuple(coeffs), initials, symmetric)

    @property
    def dim(self):
        """
        The order $p$ of the matrices.

        """
        return self.initials.shape[1]

    def characteristic_polynomial(self):
        """
        $Q_S(X) = X^r - a_0 X^{r-1} - \\hdots - a_{r-2} X - a_{r-1}$.

        """
        return RealPolynomial(np.append(-np.array(self.coeffs[::-1]), 1.))


@dataclasses.dataclass(frozen=True)
class Root:
    """
    A root cluster: its value, its multiplicity and whether it is real.

    """

    value: complex
    multiplicity: int
    is_real: bool

    @property
    def real(self):
        """
        The real part of the value.

        """
        return float(np.real(self.value))


@dataclasses.dataclass(frozen=True)
class RootMultiset:
    """
    The zeros of a polynomial, clustered, with multiplicities.

    """

    roots: tuple = ()

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    @property
    def degree(self):
        """
        The sum of multiplicities.

        """
        return sum(root.multiplicity for root in self.roots)

    def is_real(self):
        """
        Whether every root is real.

        """
        return all(root.is_real for root in self.roots)

    def has_distinct_roots(self):
        """
        Whether every root is simple.

        """
        return all(root.multiplicity == 1 for root in self.roots)

    def values(self):
        """
        The roots repeated by multiplicity, as a complex array.

        """
        return np.array([root.value for root in self.roots
                         for _ in range(root.multiplicity)],
                        dtype=complex)

    def real_nodes(self):
        """
        The real parts of the roots in increasing order.

        """
        return np.sort(np.array([root.real for root in self.roots]))


def extend(spec, n):
    """
    Run the recurrence to produce $S_0, \\hdots, S_n$.

    Parameters
    ----------

    `spec` : RecurrenceSpec
    The recurrence.

    `n` : int
    Index of the last term; at least $r - 1$.

    Returns
    -------

    out : MatrixMomentSequence

    """
    r = spec.order
    if n < r - 1:
        raise ValueError(f"n must be at least r - 1 = {r - 1}, got {n}.")
    a = np.array(spec.coeffs)
    s = np.zeros((n + 1, spec.dim, spec.dim))
    s[:r] = spec.initials
    for k in range(r - 1, n):
        # s[k], s[k-1], ..., s[k-r+1] paired with a_0, ..., a_{r-1}.
        s[k + 1] = np.tensordot(a, s[k - r + 1:k + 1][::-1], axes=1)
    return MatrixMomentSequence(s, spec.symmetric)


def is_characteristic(seq, poly, tol=None):
    r"""
    Whether `poly` annihilates `seq` under the shift, i.e.
    $\sum_i q_i S_{k+i} = 0$ for every $k$ the data allow.

    Parameters
    ----------

    `seq` : MatrixMomentSequence
    At least $2 \deg Q$ terms.

    `poly` : RealPolynomial
    The candidate $Q$.

    `tol` : Tolerance (optional)
    The largest residual must be at most `residual_eps * ||q||_1 * scale`.

    Returns
    -------

    out : bool

    """
    tol = tol or Tolerance()
    q = np.array(RealPolynomial(poly.coef).coeffs)
    d = q.size - 1
    if len(seq) < max(2 * d, d + 1):
        raise InsufficientTerms(
            f"Testing a degree-{d} polynomial needs {max(2 * d, d + 1)} "
            f"terms, got {len(seq)}.",
            needed=max(2 * d, d + 1),
            available=len(seq))
    s = seq.moments
    windows = np.stack([s[i:len(seq) - d + i] for i in range(d + 1)])
    residual = np.max(np.abs(np.tensordot(q, windows, axes=1)))
    bound = tol.residual_eps * np.sum(np.abs(q)) * seq.scale
    return bool(residual <= bound)


def entry_minimal_polynomial(scalar_seq, tol=None):
    r"""
    The monic polynomial of least degree generating a scalar sequence.

    Details
    -------

    Candidate degrees $d = 1, 2, \hdots$ are scanned while at least one
    redundant equation is available ($2d + 1 \leq$ length). For each $d$ the
    Hankel system $s_{k+d} = \sum_{i<d} c_i s_{k+i}$ is solved in the least
    squares sense, and the first $d$ whose residual is at most
    `residual_eps` times the largest $|s_k|$ is accepted. The zero sequence
    has minimal polynomial 1.

    Parameters
    ----------

    `scalar_seq` : array_like
    The terms $s_0, s_1, \hdots$.

    `tol` : Tolerance (optional)

    Returns
    -------

    out : RealPolynomial

    """
    tol = tol or Tolerance()
    s = np.asarray(scalar_seq, dtype=float).ravel()
    scale = float(np.max(np.abs(s))) if s.size else 0.
    if scale == 0.:
        return RealPolynomial([1.])

    for d in range(1, (s.size - 1) // 2 + 1):
        rows = s.size - d
        system = linalg.hankel(s[:rows], s[rows - 1:rows - 1 + d])
        rhs = s[d:]
        c = linalg.lstsq(system, rhs)
        residual = float(np.max(np.abs(system @ c - rhs)))
        if residual <= tol.residual_eps * scale:
            _logger.debug("Accepted degree %d with relative residual %.3e.",
                          d, residual / scale)
            return RealPolynomial(np.append(-c, 1.))

    raise NoRecurrenceFound(
        f"No recurrence of order at most {(s.size - 1) // 2} fits "
        f"{s.size} terms.",
        terms=int(s.size))


def _scale(z):
    return max(1., abs(z))


# Entry roots closer than this many clustering radii (but not within one)
# cannot be told apart from a single node.
_AMBIGUOUS = 10.


def _merge_into(lcm, multiset, root_eps):
    """
    Union `multiset` into the root list `lcm`, keeping maximal
    multiplicities.

    """
    for root in multiset:
        distances = [abs(root.value - other.value) for other in lcm]
        j = int(np.argmin(distances)) if distances else -1
        radius = root_eps * _scale(root.value)
        if j >= 0 and distances[j] <= radius:
            if root.multiplicity > lcm[j].multiplicity:
                lcm[j] = dataclasses.replace(lcm[j],
                                             multiplicity=root.multiplicity)
        elif j >= 0 and distances[j] <= _AMBIGUOUS * radius:
            raise InconsistentRoots(
                f"Entry roots {lcm[j].value} and {root.value} are too close to "
                f"be distinct and too far apart to be equal.",
                distance=float(distances[j]))
        else:
            lcm.append(root)


def minimal_polynomial(seq, tol=None):
    """
    The minimal polynomial $P_S$ of a recurrent matrix sequence.

    Details
    -------

    $P_S$ is the least common multiple of the minimal polynomials of the
    $p^2$ entry sequences. The lcm is taken on clustered root multisets
    (union with maximal multiplicity) and expanded back to coefficients.
    Entries whose size is negligible next to the whole sequence are treated
    as zero.

    Parameters
    ----------

    `seq` : MatrixMomentSequence
    The sequence, long enough for every entry (see
    `entry_minimal_polynomial`).

    `tol` : Tolerance (optional)

    Returns
    -------

    out : RealPolynomial
    A monic polynomial.

    """
    tol = tol or Tolerance()
    lcm = []
    for u, v in itertools.product(range(seq.dim), repeat=2):
        entry = seq.entry(u, v)
        if np.max(np.abs(entry)) <= tol.residual_eps * seq.scale:
            continue
        entry_poly = entry_minimal_polynomial(entry, tol)
        if entry_poly.degree() > 0:
            _merge_into(lcm, roots(entry_poly, tol), tol.root_eps)

    result = RealPolynomial.from_roots(
        RootMultiset(tuple(lcm)).values()) if lcm else RealPolynomial([1.])
    if len(seq) >= 2 * result.degree() and not is_characteristic(
            seq, result, tol):
        _logger.warning(
            "The entrywise lcm of degree %d does not annihilate the sequence "
            "within tolerance.", result.degree())
    return result


def _cluster_value(members):
    value = complex(np.mean(members))
    return value


def _rebuild(clusters):
    values = [_cluster_value(c) for c in clusters for _ in range(len(c))]
    return polynomial.polyfromroots(values)


def _single_linkage(values, root_eps):
    clusters = [[z] for z in values]
    merged = True
    while merged:
        merged = False
        for i, j in itertools.combinations(range(len(clusters)), 2):
            zi, zj = _cluster_value(clusters[i]), _cluster_value(clusters[j])
            if abs(zi - zj) <= root_eps * max(_scale(zi), _scale(zj)):
                clusters[i] = clusters[i] + clusters.pop(j)
                merged = True
                break
    return clusters


def _linked_groups(centres, radius):
    """
    Index groups of `centres` connected by links of length at most `radius`.

    """
    groups, unseen = [], set(range(len(centres)))
    while unseen:
        stack = [unseen.pop()]
        group = []
        while stack:
            i = stack.pop()
            group.append(i)
            near = {j for j in unseen if abs(centres[i] - centres[j]) <= radius}
            unseen -= near
            stack.extend(near)
        groups.append(sorted(group))
    return groups


def _merge_multiple_roots(clusters, monic, root_eps):
    """
    Merge groups of clusters into one value when the polynomial rebuilt with
    the merge reproduces `monic` to within a perturbation of size
    `root_eps**2` (a root of multiplicity $m$ is split by roughly
    $\\epsilon^{1/m}$ under rounding, while two roots a distance $g$ apart
    move the coefficients by about $(g/2)^2$ when merged).

    """
    degree = monic.size - 1
    bound = max(root_eps**2, 64. * np.finfo(float).eps * degree) * max(
        1., float(np.max(np.abs(monic))))
    merged = True
    while merged and len(clusters) > 1:
        merged = False
        centres = [_cluster_value(c) for c in clusters]
        gaps = sorted({abs(a - b)
                       for a, b in itertools.combinations(centres, 2)})
        for gap in gaps:
            for group in _linked_groups(centres, gap):
                if len(group) < 2:
                    continue
                candidate = [c for k, c in enumerate(clusters)
                             if k not in group]
                candidate.append([z for k in group for z in clusters[k]])
                if np.max(np.abs(_rebuild(candidate) - monic)) <= bound:
                    _logger.debug("Merged root clusters at %s.",
                                  [centres[k] for k in group])
                    clusters, merged = candidate, True
                    break
            if merged:
                break
    return clusters


def roots(poly, tol=None):
    """
    The zeros of a polynomial, clustered into distinct values with
    multiplicities.

    Details
    -------

    Roots are the eigenvalues of the balanced companion matrix of the monic
    polynomial. Roots within `root_eps` (relative to `max(1, |z|)`) form one
    cluster. Clusters of a multiple root split by rounding are merged further
    when the polynomial rebuilt with the merge differs from the input
    coefficients by at most `root_eps**2` (relative to the coefficient
    size), so distinct roots further apart than about `root_eps` are never
    merged. A root is real when its imaginary part is at most `root_eps` in
    the same relative sense.

    Parameters
    ----------

    `poly` : RealPolynomial
    The polynomial; a constant gives an empty multiset.

    `tol` : Tolerance (optional)

    Returns
    -------

    out : RootMultiset
    Sorted by real part, then imaginary part.

    """
    tol = tol or Tolerance()
    c = np.array(RealPolynomial(poly.coef).coeffs)
    if c.size < 2:
        return RootMultiset()
    monic = c / c[-1]
    if monic.size == 2:
        values = np.array([-monic[0]], dtype=complex)
    else:
        companion = linalg.matrix_balance(polynomial.polycompanion(monic))
        values = linalg.eigvals(companion)

    clusters = _single_linkage(list(values), tol.root_eps)
    clusters = _merge_multiple_roots(clusters, monic, tol.root_eps)

    result = []
    for members in clusters:
        z = _cluster_value(members)
        is_real = abs(z.imag) <= tol.root_eps * _scale(z)
        value = complex(z.real, 0.) if is_real else z
        result.append(Root(value, len(members), is_real))
    result.sort(key=lambda root: (root.real, np.imag(root.value)))
    return RootMultiset(tuple(result))

