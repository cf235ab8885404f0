# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines the exceptions raised by `matmoment`.

Every exception derives from `MomentError`, which knows how to render itself
as a machine-readable dictionary for the command-line interface.

"""

__all__ = [
    "MomentError",
    "NonSquare",
    "AsymmetricInput",
    "ConvergenceFailure",
    "InsufficientMoments",
    "DegreeTooHigh",
    "DimensionMismatch",
    "InsufficientTerms",
    "NoRecurrenceFound",
    "InconsistentRoots",
    "ComplexRoots",
    "RepeatedRoots",
    "IllConditioned",
    "DegenerateNodes",
    "ParseError",
    "SchemaError",
    "DimensionError",
    "InvalidRecurrence",
]


class MomentError(Exception):
    """
    Base class for all errors raised by this package.

    Parameters
    ----------

    `message` : str
    Human-readable description.

    `**details` : dict
    Extra JSON-serializable fields reported alongside the message.

    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def kind(self):
        """
        The error name used in machine-readable output.

        """
        return type(self).__name__

    def to_dict(self):
        """
        Return the error as a dictionary `{"type", "message", **details}`.

        """
        return {"type": self.kind, "message": self.message, **self.details}


class NonSquare(MomentError):
    """
    A matrix that should be square is not.

    """


class AsymmetricInput(MomentError):
    """
    A matrix that should be symmetric has an asymmetry defect above tolerance.

    """


class ConvergenceFailure(MomentError):
    """
    An eigen-solver did not converge or received non-finite data.

    """


class InsufficientMoments(MomentError):
    """
    The moment sequence is too short for the requested Hankel matrix.

    """


class DegreeTooHigh(MomentError):
    """
    A polynomial has higher degree than the available moments.

    """


class DimensionMismatch(MomentError):
    """
    Matrices that should share a dimension do not.

    """


class InsufficientTerms(MomentError):
    """
    Too few sequence terms to test a recurrence stably.

    """


class NoRecurrenceFound(MomentError):
    """
    No linear recurrence of admissible order fits the data.

    """


class InconsistentRoots(MomentError):
    """
    Entrywise root clusters are too close to merge and too far to be equal.

    """


class ComplexRoots(MomentError):
    """
    The minimal polynomial has non-real roots, so no real atomic measure
    exists.

    """


class RepeatedRoots(MomentError):
    """
    The minimal polynomial has a repeated root, so no representing atomic
    measure exists.

    """

    def __init__(self, message, root, multiplicity):
        super().__init__(message, root=float(root), multiplicity=int(multiplicity))
        self.root = float(root)
        self.multiplicity = int(multiplicity)


class IllConditioned(MomentError):
    """
    A Vandermonde system is too ill-conditioned to be trusted.

    """

    def __init__(self, message, condition):
        super().__init__(message, condition=float(condition))
        self.condition = float(condition)


class DegenerateNodes(MomentError):
    """
    Closed-form nodes are not strictly increasing beyond the root tolerance.

    """


class ParseError(MomentError):
    """
    A document is not valid UTF-8 JSON.

    """


class SchemaError(MomentError):
    """
    A document has missing, extra or invalid fields.

    """


class DimensionError(SchemaError):
    """
    A document matrix does not have the declared shape.

    """


class InvalidRecurrence(SchemaError):
    """
    A recurrence has a vanishing last coefficient or the wrong number of
    initial terms.

    """
