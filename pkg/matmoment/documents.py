# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines the JSON documents read and written by the command-line interface:

- `documents.ProblemDocument`
- `documents.ResultDocument`
- `documents.parse_document`
- `documents.serialize_document`
- `documents.parse_measure_document`
- `documents.measure_to_dict`

Matrices are nested row-major arrays; floats are written in shortest
round-trip form and must be finite.

"""

import dataclasses
import json
import math
import numbers

import numpy as np

from matmoment.atomic_measure import AtomicMatrixMeasure
from matmoment.errors import (DimensionError, InvalidRecurrence, ParseError,
                              SchemaError)
from matmoment.hankel import MatrixMomentSequence
from matmoment.recurrence import RecurrenceSpec, extend
from matmoment.tolerance import ENV_VARIABLES, Tolerance, resolve_tolerance

__all__ = [
    "ProblemDocument", "ResultDocument", "parse_document",
    "serialize_document", "parse_measure_document", "measure_to_dict",
    "verdict_to_dict", "polynomial_to_dict", "to_json"
]

_FIELDS = {
    "mode", "dim", "symmetric_mode", "moments", "recurrence", "tolerances",
    "polynomial"
}
_RECURRENCE_FIELDS = {"order", "coeffs", "initials"}
_MEASURE_FIELDS = {"dim", "symmetric", "atoms"}


@dataclasses.dataclass(frozen=True, eq=False)
class ProblemDocument:
    """
    A validated problem document.

    `tolerances` holds the overrides written in the document, while
    `tolerance` is the fully resolved `Tolerance` (flags, document,
    environment, defaults). `defects` lists the asymmetry defect of every
    symmetrized input matrix.

    """

    mode: str
    dim: int
    tolerance: Tolerance
    symmetric_mode: bool = True
    moments: MatrixMomentSequence | None = None
    recurrence: RecurrenceSpec | None = None
    tolerances: dict = dataclasses.field(default_factory=dict)
    polynomial: np.ndarray | None = None
    defects: tuple = ()

    def sequence(self, n=None):
        """
        The moments: as given in sequence mode, or the recurrence extended
        to $S_n$ in recurrence mode (default `n`: four times the order,
        minus one).

        """
        if self.mode == "sequence":
            return self.moments
        if n is None:
            n = 4 * self.recurrence.order - 1
        return extend(self.recurrence, max(n, self.recurrence.order - 1))


@dataclasses.dataclass
class ResultDocument:
    """
    The output of one subcommand run.

    `exit_code` is 0 when the tested property holds, 1 when it is refuted
    and 2 on error (`error` then holds the machine-readable error).

    """

    command: str
    exit_code: int = 0
    verdicts: dict = dataclasses.field(default_factory=dict)
    measure: dict | None = None
    minimal_polynomial: dict | None = None
    residuals: dict = dataclasses.field(default_factory=dict)
    diagnostics: list = dataclasses.field(default_factory=list)
    data: dict = dataclasses.field(default_factory=dict)
    error: dict | None = None
    source: str | None = None

    def to_dict(self):
        """
        The document as a dictionary, leaving out unset optional fields.

        """
        out = {"command": self.command, "exit_code": self.exit_code}
        for field in ("verdicts", "measure", "minimal_polynomial",
                      "residuals", "diagnostics", "data", "error", "source"):
            value = getattr(self, field)
            if value:
                out[field] = value
        return out

    def to_json(self):
        """
        The document as a single JSON line.

        """
        return to_json(self.to_dict())


def _plain(value):
    """
    Convert NumPy scalars and arrays into JSON-ready Python objects.

    """
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        return float(value)
    return value


def to_json(obj):
    """
    Serialize `obj` as compact JSON; non-finite numbers raise `ValueError`.

    """
    return json.dumps(_plain(obj), allow_nan=False)


def _reject_constant(name):
    raise ParseError(f"Non-finite number {name} is not allowed.")


def _load(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as err:
            raise ParseError(f"Document is not valid UTF-8: {err}") from err
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as err:
        raise ParseError(f"Malformed JSON: {err}",
                         line=err.lineno,
                         column=err.colno) from err
    if not isinstance(obj, dict):
        raise SchemaError("A document must be a JSON object.")
    return obj


def _check_fields(obj, allowed, required, where):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SchemaError(f"Unknown fields in {where}: {extra}.", fields=extra)
    missing = sorted(set(required) - set(obj))
    if missing:
        raise SchemaError(f"Missing fields in {where}: {missing}.",
                          fields=missing)


def _is_number(x):
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def _number(x, where):
    if not _is_number(x):
        raise SchemaError(f"{where} must be a number, got {x!r}.")
    try:
        value = float(x)
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise ParseError(f"{where} overflows to a non-finite number.")
    return value


def _integer(x, where, minimum):
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise SchemaError(f"{where} must be an integer >= {minimum}, got "
                          f"{x!r}.")
    return x


def _matrix(raw, dim, where):
    if not isinstance(raw, list) or len(raw) != dim or any(
            not isinstance(row, list) or len(row) != dim for row in raw):
        raise DimensionError(f"{where} must be a {dim} x {dim} array.",
                             expected=[dim, dim])
    return np.array([[_number(x, where) for x in row] for row in raw])


def _matrices(raw, dim, where):
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{where} must be a nonempty list of matrices.")
    return [_matrix(m, dim, f"{where}[{k}]") for k, m in enumerate(raw)]


def _defects(matrices, symmetric):
    if not symmetric:
        return ()
    return tuple(float(np.max(np.abs(m - m.T))) for m in matrices)


def _tolerances(raw):
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise SchemaError("tolerances must be an object.")
    _check_fields(raw, set(ENV_VARIABLES), (), "tolerances")
    return {k: _number(v, f"tolerances.{k}") for k, v in raw.items()}


def parse_document(text, flags=None, environ=None):
    """
    Parse and validate a problem document.

    Parameters
    ----------

    `text` : bytes or str
    The UTF-8 JSON text.

    `flags` : dict (optional)
    Tolerance overrides from the command line; they take precedence over
    the document's `tolerances`.

    `environ` : mapping (optional, default: `os.environ`)

    Returns
    -------

    out : ProblemDocument

    """
    obj = _load(text)
    _check_fields(obj, _FIELDS, ("mode", "dim"), "document")

    mode = obj["mode"]
    if mode not in ("sequence", "recurrence"):
        raise SchemaError(
            f"mode must be 'sequence' or 'recurrence', got {mode!r}.")
    dim = _integer(obj["dim"], "dim", 1)
    symmetric = obj.get("symmetric_mode", True)
    if not isinstance(symmetric, bool):
        raise SchemaError("symmetric_mode must be a boolean.")

    tolerances = _tolerances(obj.get("tolerances"))
    try:
        tol = resolve_tolerance(flags, tolerances, environ)
    except ValueError as err:
        raise SchemaError(str(err)) from err

    other = "recurrence" if mode == "sequence" else "moments"
    if other in obj:
        raise SchemaError(f"A {mode} document cannot carry '{other}'.",
                          fields=[other])

    moments, recurrence = None, None
    if mode == "sequence":
        _check_fields(obj, _FIELDS, ("moments",), "document")
        matrices = _matrices(obj["moments"], dim, "moments")
        defects = _defects(matrices, symmetric)
        moments = MatrixMomentSequence.from_matrices(matrices, tol, symmetric)
    else:
        _check_fields(obj, _FIELDS, ("recurrence",), "document")
        raw = obj["recurrence"]
        if not isinstance(raw, dict):
            raise SchemaError("recurrence must be an object.")
        _check_fields(raw, _RECURRENCE_FIELDS, _RECURRENCE_FIELDS,
                      "recurrence")
        if not isinstance(raw["coeffs"], list):
            raise SchemaError("recurrence.coeffs must be a list.")
        coeffs = [_number(a, "recurrence.coeffs") for a in raw["coeffs"]]
        matrices = _matrices(raw["initials"], dim, "recurrence.initials")
        order = _integer(raw["order"], "recurrence.order", 1)
        if len(coeffs) != order:
            raise InvalidRecurrence(
                f"Expected {order} coefficients, got {len(coeffs)}.")
        defects = _defects(matrices, symmetric)
        recurrence = RecurrenceSpec.from_matrices(coeffs, matrices, tol,
                                                  symmetric)

    polynomial = None
    if "polynomial" in obj:
        polynomial = np.array(_matrices(obj["polynomial"], dim, "polynomial"))

    return ProblemDocument(mode,
                           dim,
                           tol,
                           symmetric_mode=symmetric,
                           moments=moments,
                           recurrence=recurrence,
                           tolerances=tolerances,
                           polynomial=polynomial,
                           defects=defects)


def serialize_document(doc):
    """
    Write a `ProblemDocument` back to JSON, so that parsing the result
    gives an equal document.

    """
    out = {
        "mode": doc.mode,
        "dim": doc.dim,
        "symmetric_mode": doc.symmetric_mode,
    }
    if doc.mode == "sequence":
        out["moments"] = doc.moments.moments
    else:
        out["recurrence"] = {
            "order": doc.recurrence.order,
            "coeffs": list(doc.recurrence.coeffs),
            "initials": doc.recurrence.initials,
        }
    if doc.tolerances:
        out["tolerances"] = dict(doc.tolerances)
    if doc.polynomial is not None:
        out["polynomial"] = doc.polynomial
    return to_json(out)


def measure_to_dict(measure):
    """
    A measure as `{"dim", "symmetric", "atoms": [{"node", "weight"}]}`.

    """
    return {
        "dim": measure.dim,
        "symmetric": measure.symmetric,
        "atoms": [{
            "node": x,
            "weight": w
        } for x, w in measure.atoms()],
    }


def parse_measure_document(text):
    """
    Parse a measure document, or the `measure` field of a result document
    written by `solve`.

    Returns
    -------

    out : AtomicMatrixMeasure

    """
    obj = _load(text)
    if "command" in obj:
        if not isinstance(obj.get("measure"), dict):
            raise SchemaError("The result document carries no measure.")
        obj = obj["measure"]
    _check_fields(obj, _MEASURE_FIELDS, ("dim", "atoms"), "measure")
    dim = _integer(obj["dim"], "dim", 1)
    symmetric = obj.get("symmetric", True)
    if not isinstance(symmetric, bool):
        raise SchemaError("symmetric must be a boolean.")
    atoms = obj["atoms"]
    if not isinstance(atoms, list):
        raise SchemaError("atoms must be a list.")
    nodes, weights = [], []
    for k, atom in enumerate(atoms):
        if not isinstance(atom, dict):
            raise SchemaError(f"atoms[{k}] must be an object.")
        _check_fields(atom, {"node", "weight"}, ("node", "weight"),
                      f"atoms[{k}]")
        nodes.append(_number(atom["node"], f"atoms[{k}].node"))
        weights.append(_matrix(atom["weight"], dim, f"atoms[{k}].weight"))
    order = np.argsort(nodes, kind="stable")
    weights = np.array(weights).reshape(-1, dim, dim)
    return AtomicMatrixMeasure(np.array(nodes)[order], weights[order],
                               symmetric)


def verdict_to_dict(verdict):
    """
    A `MomentVerdict` as a dictionary.

    """
    out = {
        "problem_kind": verdict.problem_kind,
        "truncation_order": verdict.truncation_order,
        "satisfied": verdict.satisfied,
        "tested": list(verdict.tested),
        "boundary": list(verdict.boundary),
    }
    certificate = verdict.failing_certificate
    if certificate is not None:
        out["failing_certificate"] = {
            "matrix_name": certificate.matrix_name,
            "eigenvalue": certificate.eigenvalue,
            "eigenvector": certificate.eigenvector,
        }
    return out


def polynomial_to_dict(poly, multiset=None):
    """
    A polynomial as `{"coeffs": [...], "roots": [...]}`, coefficients lowest
    degree first.

    """
    out = {"coeffs": list(poly.coeffs)}
    if multiset is not None:
        out["roots"] = [{
            "value": root.real,
            "imag": float(np.imag(root.value)),
            "multiplicity": root.multiplicity,
            "real": root.is_real,
        } for root in multiset]
    return out
