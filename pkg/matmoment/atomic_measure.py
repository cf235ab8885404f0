# Distributed under the MIT License.
# See LICENSE for details.
"""
Recovery of finite atomic matrix-valued measures $\\sum_i T_i \\delta_{\\lambda_i}$
from recurrent moment sequences, positivity of their weights, and the
closed forms for recurrences of order two and three:

- `atomic_measure.recover_measure`
- `atomic_measure.decide_sequence`
- `atomic_measure.decide_truncated`
- `atomic_measure.closed_form_r2`
- `atomic_measure.closed_form_r3`
- `atomic_measure.reconstruct`
- `atomic_measure.scalar_moment_condition`
- `atomic_measure.canonical_recurrence`

"""

import dataclasses
import enum
import logging

import numpy as np

from matmoment.errors import (ComplexRoots, DegenerateNodes,
                              DimensionMismatch, IllConditioned,
                              InsufficientMoments, RepeatedRoots)
from matmoment.hankel import MatrixMomentSequence, build_hankel
from matmoment.numalg import linalg
from matmoment.numalg.vandermonde import vandermonde_matrix, vandermonde_solve
from matmoment.recurrence import (RealPolynomial, RecurrenceSpec, Root,
                                  RootMultiset, extend, minimal_polynomial,
                                  roots)
from matmoment.symmetric import as_symmetric, is_psd
from matmoment.tolerance import Tolerance

__all__ = [
    "AtomicMatrixMeasure", "Outcome", "MeasureReport", "recover_measure",
    "decide_sequence", "decide_truncated", "closed_form_r2", "closed_form_r3",
    "reconstruct", "reconstruction_residual", "scalar_moment_condition",
    "canonical_recurrence"
]

_logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class AtomicMatrixMeasure:
    """
    A finite atomic matrix-valued measure.

    Parameters
    ----------

    `nodes` : array_like
    The strictly increasing atoms $\\lambda_0 < \\hdots < \\lambda_{k-1}$.

    `weights` : array_like
    The weights $T_i$, of shape `(k, p, p)`.

    `symmetric` : bool (optional, default: True)
    In symmetric mode the weights are symmetrized; raw mode keeps them as
    given.

    """

    nodes: np.ndarray
    weights: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float).ravel()
        weights = np.array(self.weights, dtype=float)
        if weights.ndim == 1:
            weights = weights.reshape(-1, 1, 1)
        if weights.ndim != 3 or weights.shape[1] != weights.shape[2]:
            raise DimensionMismatch("Weights must be square matrices.",
                                    shape=list(weights.shape))
        if weights.shape[0] != nodes.size:
            raise DimensionMismatch(
                f"{nodes.size} nodes but {weights.shape[0]} weights.")
        if np.any(np.diff(nodes) <= 0.):
            raise DegenerateNodes("Nodes must be strictly increasing.",
                                  nodes=nodes.tolist())
        if self.symmetric:
            weights = 0.5 * (weights + np.transpose(weights, (0, 2, 1)))
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self):
        """
        The order $p$ of the weights.

        """
        return self.weights.shape[1]

    def __len__(self):
        return self.nodes.size

    def atoms(self):
        """
        The list of `(node, weight)` pairs.

        """
        return [(float(x), w) for x, w in zip(self.nodes, self.weights)]


class Outcome(enum.Enum):
    """
    What the measure-recovery pipeline produced.

    """

    MEASURE = "measure"
    REPEATED_ROOTS = "repeated_roots"
    COMPLEX_ROOTS = "complex_roots"


@dataclasses.dataclass(frozen=True, eq=False)
class MeasureReport:
    """
    Both sides of the decision for a recurrent sequence: positivity of
    $H(r-1)$ and positivity of the weights of the recovered measure.

    In raw mode the PSD fields are `None`. When the minimal polynomial has
    repeated or complex roots, `measure` is `None` and `failure` holds the
    structured error.

    """

    measure: AtomicMatrixMeasure | None
    all_weights_psd: bool | None
    hankel_psd: bool | None
    reconstruction_residual: float | None
    per_atom_min_eig: tuple = ()
    boundary_atoms: tuple = ()
    minimal_polynomial: RealPolynomial | None = None
    roots: RootMultiset | None = None
    outcome: Outcome = Outcome.MEASURE
    failure: Exception | None = None
    conditions: dict = dataclasses.field(default_factory=dict)
    hankel_min_eigenvalue: float | None = None
    numerical_disagreement: bool = False


def reconstruct(measure, n):
    """
    The moments $S_k = \\sum_i \\lambda_i^k T_i$, $k = 0, \\hdots, n$.

    Returns
    -------

    out : MatrixMomentSequence
    In the measure's mode.

    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}.")
    powers = vandermonde_matrix(measure.nodes, n + 1)
    moments = np.einsum("ji,iuv->juv", powers, measure.weights)
    return MatrixMomentSequence(moments, measure.symmetric)


def reconstruction_residual(measure, seq):
    """
    The largest entrywise gap between `seq` and the moments of `measure`,
    relative to `seq.scale`.

    """
    rebuilt = reconstruct(measure, seq.order).moments
    return float(np.max(np.abs(rebuilt - seq.moments))) / seq.scale


def recover_measure(seq, poly, tol=None):
    """
    Recover the atomic measure generating a recurrent sequence.

    Details
    -------

    The nodes are the roots of `poly`. The weights solve the block
    Vandermonde system $\\sum_i \\lambda_i^j T_i = S_j$, $j < k$, one scalar
    system per matrix entry; the later moments only enter the reconstruction
    residual.

    Parameters
    ----------

    `seq` : MatrixMomentSequence
    At least $k = \\deg P$ terms.

    `poly` : RealPolynomial
    A characteristic polynomial of `seq`, normally its minimal polynomial.

    `tol` : Tolerance (optional)

    Returns
    -------

    out : AtomicMatrixMeasure

    """
    tol = tol or Tolerance()
    multiset = roots(poly, tol)
    nonreal = [root for root in multiset if not root.is_real]
    if nonreal:
        raise ComplexRoots(
            f"{len(nonreal)} non-real root(s); no real atomic measure exists.",
            roots=[[root.real, float(np.imag(root.value))] for root in nonreal])
    for root in multiset:
        if root.multiplicity > 1:
            raise RepeatedRoots(
                f"Root {root.real:.12g} has multiplicity {root.multiplicity}; "
                f"no representing measure exists.", root.real,
                root.multiplicity)

    nodes = multiset.real_nodes()
    k, p = nodes.size, seq.dim
    if k == 0:
        return AtomicMatrixMeasure(nodes, np.zeros((0, p, p)), seq.symmetric)
    if len(seq) < k:
        raise InsufficientMoments(
            f"{k} nodes need moments up to S_{k - 1}, but the sequence stops "
            f"at S_{seq.order}.",
            needed=k - 1,
            available=seq.order)

    condition = linalg.condition_number(vandermonde_matrix(nodes))
    _logger.debug("Vandermonde condition number %.3e for %d nodes.",
                  condition, k)
    if tol.residual_eps > 0. and condition > 1. / tol.residual_eps:
        raise IllConditioned(
            f"Vandermonde condition number {condition:.3e} exceeds "
            f"{1. / tol.residual_eps:.3e}.", condition)

    weights = vandermonde_solve(nodes, seq.moments[:k].reshape(k, p * p))
    measure = AtomicMatrixMeasure(nodes, weights.reshape(k, p, p),
                                  seq.symmetric)
    residual = reconstruction_residual(measure, seq)
    if residual > tol.residual_eps:
        _logger.warning("Reconstruction residual %.3e exceeds %.3e.",
                        residual, tol.residual_eps)
    return measure


def _weight_verdicts(measure, tol):
    verdicts = [is_psd(w, tol) for w in measure.weights]
    boundary = tuple(
        float(x) for x, v in zip(measure.nodes, verdicts) if v.boundary)
    if boundary:
        _logger.warning("Weights at %s are PSD only within tolerance.",
                        list(boundary))
    return verdicts, boundary


def _measure_report(measure, seq, tol, hankel_verdict, **extra):
    """
    Assemble a report for a recovered measure in symmetric or raw mode.

    """
    if measure.symmetric:
        verdicts, boundary = _weight_verdicts(measure, tol)
        all_psd = all(v.psd for v in verdicts)
        min_eigs = tuple(v.min_eigenvalue for v in verdicts)
    else:
        all_psd, min_eigs, boundary = None, (), ()
    hankel_psd = None if hankel_verdict is None else hankel_verdict.psd
    disagreement = hankel_psd is not None and hankel_psd != all_psd
    if disagreement:
        _logger.warning(
            "Hankel positivity (%s, min eigenvalue %.3e) disagrees with "
            "weight positivity (%s).", hankel_psd,
            hankel_verdict.min_eigenvalue, all_psd)
    return MeasureReport(
        measure,
        all_psd,
        hankel_psd,
        reconstruction_residual(measure, seq),
        per_atom_min_eig=min_eigs,
        boundary_atoms=boundary,
        hankel_min_eigenvalue=None
        if hankel_verdict is None else hankel_verdict.min_eigenvalue,
        numerical_disagreement=disagreement,
        **extra)


def decide_sequence(seq, tol=None, order=None):
    """
    Decide whether a recurrent moment sequence has a positive semi-definite
    representing atomic measure, from both sides.

    Details
    -------

    One side is the positivity of $H(r-1)$, where $r$ is `order` or, by
    default, the degree of the minimal polynomial; it is left out when the
    sequence is too short. The other side is the minimal polynomial, its
    roots, the recovered measure and the positivity of each weight. When the
    roots are real and simple the two sides must agree; a disagreement is
    flagged in the report and logged, never raised.

    Parameters
    ----------

    `seq` : MatrixMomentSequence
    The sequence.

    `tol` : Tolerance (optional)

    `order` : int (optional)
    The order $r$ of the recurrence generating `seq`.

    Returns
    -------

    out : MeasureReport

    """
    tol = tol or Tolerance()
    poly = minimal_polynomial(seq, tol)
    multiset = roots(poly, tol)
    r = poly.degree() if order is None else order
    hankel_verdict = None
    if seq.symmetric and r >= 1 and 2 * (r - 1) <= seq.order:
        hankel_verdict = is_psd(build_hankel(seq, r - 1).matrix(), tol)

    try:
        measure = recover_measure(seq, poly, tol)
    except (RepeatedRoots, ComplexRoots) as err:
        outcome = Outcome.REPEATED_ROOTS if isinstance(
            err, RepeatedRoots) else Outcome.COMPLEX_ROOTS
        _logger.info("No representing measure: %s", err)
        # A positive semi-definite H(r-1) forces real simple roots.
        disagreement = hankel_verdict is not None and hankel_verdict.psd
        if disagreement:
            _logger.warning(
                "Hankel positivity (%s, min eigenvalue %.3e) disagrees with "
                "weight positivity (%s).", True, hankel_verdict.min_eigenvalue,
                False)
        return MeasureReport(
            None,
            False if seq.symmetric else None,
            None if hankel_verdict is None else hankel_verdict.psd,
            None,
            minimal_polynomial=poly,
            roots=multiset,
            outcome=outcome,
            failure=err,
            numerical_disagreement=disagreement,
            hankel_min_eigenvalue=None
            if hankel_verdict is None else hankel_verdict.min_eigenvalue)

    return _measure_report(measure,
                           seq,
                           tol,
                           hankel_verdict,
                           minimal_polynomial=poly,
                           roots=multiset)


def decide_truncated(spec, tol=None):
    """
    Run `decide_sequence` on the recurrence extended to $4r$ terms, with
    $H(r-1)$ taken at the order $r$ of the recurrence.

    Parameters
    ----------

    `spec` : RecurrenceSpec
    The recurrence.

    `tol` : Tolerance (optional)

    Returns
    -------

    out : MeasureReport

    """
    return decide_sequence(extend(spec, 4 * spec.order - 1), tol, spec.order)


def _identity_normalized(matrices, tol):
    mats = [as_symmetric(m, tol).entries for m in matrices]
    p = mats[0].shape[0]
    if any(m.shape != (p, p) for m in mats):
        raise DimensionMismatch("Moments must share one dimension.")
    return mats, np.eye(p)


def _check_gaps(nodes, tol):
    gaps = np.diff(nodes)
    if np.any(gaps <= tol.root_eps):
        raise DegenerateNodes(
            f"Nodes {list(nodes)} must increase by more than "
            f"{tol.root_eps:.3e}.",
            nodes=[float(x) for x in nodes])


def _closed_form_report(nodes, weights, data, conditions, tol):
    r = len(nodes)
    measure = AtomicMatrixMeasure(nodes, weights)
    # Extending by the closed-form recurrence is reconstruction from the
    # closed-form measure.
    extended = reconstruct(measure, 2 * r - 1)
    hankel_verdict = is_psd(build_hankel(extended, r - 1).matrix(), tol)
    multiset = RootMultiset(tuple(Root(complex(x), 1, True) for x in nodes))
    return _measure_report(measure,
                           MatrixMomentSequence(data),
                           tol,
                           hankel_verdict,
                           minimal_polynomial=RealPolynomial.from_roots(nodes),
                           roots=multiset,
                           conditions=conditions)


def closed_form_r2(S1, lam0, lam1, tol=None):  # pylint: disable=invalid-name
    r"""
    The measure of the order-two recurrence with roots $\lambda_0 < \lambda_1$
    and $S_0 = I_p$.

    Details
    -------

    $T_0 = (\lambda_1 I - S_1)/(\lambda_1 - \lambda_0)$ and
    $T_1 = (S_1 - \lambda_0 I)/(\lambda_1 - \lambda_0)$, so the weights are
    PSD exactly when $\lambda_0 I \preceq S_1 \preceq \lambda_1 I$. Both
    inequalities are reported in `conditions`.

    Parameters
    ----------

    `S1` : array_like
    The symmetric first moment.

    `lam0`, `lam1` : float
    The nodes.

    `tol` : Tolerance (optional)

    Returns
    -------

    out : MeasureReport

    """
    tol = tol or Tolerance()
    (s1,), eye = _identity_normalized([S1], tol)
    _check_gaps([lam0, lam1], tol)
    gap = lam1 - lam0
    weights = [(lam1 * eye - s1) / gap, (s1 - lam0 * eye) / gap]
    conditions = {
        "S1-lam0*I": is_psd(s1 - lam0 * eye, tol),
        "lam1*I-S1": is_psd(lam1 * eye - s1, tol),
    }
    return _closed_form_report([lam0, lam1], weights, [eye, s1], conditions,
                               tol)


def closed_form_r3(S1, S2, lam0, lam1, lam2, tol=None):  # pylint: disable=invalid-name
    r"""
    The measure of the order-three recurrence with roots
    $\lambda_0 < \lambda_1 < \lambda_2$ and $S_0 = I_p$.

    Details
    -------

    With $C_0 = S_2 - (\lambda_1 + \lambda_2) S_1 + \lambda_1 \lambda_2 I$,
    $C_1 = -S_2 + (\lambda_0 + \lambda_2) S_1 - \lambda_0 \lambda_2 I$ and
    $C_2 = S_2 - (\lambda_0 + \lambda_1) S_1 + \lambda_0 \lambda_1 I$, the
    weights are

    $T_0 = C_0 / ((\lambda_1 - \lambda_0)(\lambda_2 - \lambda_0))$,
    $T_1 = C_1 / ((\lambda_1 - \lambda_0)(\lambda_2 - \lambda_1))$,
    $T_2 = C_2 / ((\lambda_2 - \lambda_0)(\lambda_2 - \lambda_1))$.

    The denominators are positive, so the weights are PSD exactly when the
    three $C_i$ are. The necessary bounds
    $\lambda_0 I \preceq S_1 \preceq \lambda_2 I$ and
    $\min_i \lambda_i^2 I \preceq S_2 \preceq \max_i \lambda_i^2 I$ are
    reported in `conditions` as well.

    Returns
    -------

    out : MeasureReport

    """
    tol = tol or Tolerance()
    (s1, s2), eye = _identity_normalized([S1, S2], tol)
    _check_gaps([lam0, lam1, lam2], tol)
    c0 = s2 - (lam1 + lam2) * s1 + lam1 * lam2 * eye
    c1 = -s2 + (lam0 + lam2) * s1 - lam0 * lam2 * eye
    c2 = s2 - (lam0 + lam1) * s1 + lam0 * lam1 * eye
    weights = [
        c0 / ((lam1 - lam0) * (lam2 - lam0)),
        c1 / ((lam1 - lam0) * (lam2 - lam1)),
        c2 / ((lam2 - lam0) * (lam2 - lam1)),
    ]
    squares = [lam0**2, lam1**2, lam2**2]
    conditions = {
        "S2-(lam1+lam2)*S1+lam1*lam2*I": is_psd(c0, tol),
        "(lam0+lam2)*S1-S2-lam0*lam2*I": is_psd(c1, tol),
        "S2-(lam0+lam1)*S1+lam0*lam1*I": is_psd(c2, tol),
        "S1-lam0*I": is_psd(s1 - lam0 * eye, tol),
        "lam2*I-S1": is_psd(lam2 * eye - s1, tol),
        "S2-min(lam^2)*I": is_psd(s2 - min(squares) * eye, tol),
        "max(lam^2)*I-S2": is_psd(max(squares) * eye - s2, tol),
    }
    return _closed_form_report([lam0, lam1, lam2], weights, [eye, s1, s2],
                               conditions, tol)


def scalar_moment_condition(s1, lam0, lam1, tol=None):
    """
    Whether the scalar order-two recurrent sequence with $s_0 = 1$, first
    term `s1` and characteristic roots $\\lambda_0 < \\lambda_1$ is a moment
    sequence, i.e. whether $(s_1 - \\lambda_0)(s_1 - \\lambda_1) \\leq 0$.

    """
    tol = tol or Tolerance()
    value = (s1 - lam0) * (s1 - lam1)
    return bool(value <= tol.psd_eps * max(1., abs(s1 * s1), abs(lam0 * lam1)))


def canonical_recurrence(S1, lam0, lam1, tol=None):  # pylint: disable=invalid-name
    """
    The order-two recurrence $S_{n+1} = (\\lambda_0 + \\lambda_1) S_n -
    \\lambda_0 \\lambda_1 S_{n-1}$ with $S_0 = I_p$ and $S_1$ = `S1`.

    When $\\lambda_0 I \\preceq S_1 \\preceq \\lambda_1 I$ it generates a matrix
    moment sequence. Raises `InvalidRecurrence` if a node is zero, since the
    last coefficient then vanishes.

    Returns
    -------

    out : RecurrenceSpec

    """
    s1 = as_symmetric(S1, tol).entries
    return RecurrenceSpec(2, (lam0 + lam1, -lam0 * lam1),
                          [np.eye(s1.shape[0]), s1])
