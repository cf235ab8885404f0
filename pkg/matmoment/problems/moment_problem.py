# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines the base class for truncated matrix moment problems.

"""

import abc
import math

from matmoment.errors import AsymmetricInput
from matmoment.hankel import Certificate, MomentVerdict
from matmoment.symmetric import is_psd
from matmoment.tolerance import Tolerance

__all__ = ["MomentProblem"]


class MomentProblem(metaclass=abc.ABCMeta):
    """
    Base class for matrix moment problems on a closed subset of the real
    line, decided at finite truncation order by block Hankel positivity.

    """

    @classmethod
    @abc.abstractmethod
    def name(cls):
        """
        The problem name.

        """

    @classmethod
    @abc.abstractmethod
    def support(cls):
        """
        The support interval `(lo, hi)`; ends may be infinite.

        """

    @abc.abstractmethod
    def positivity_matrices(self, seq):
        """
        Return the `BlockHankel` matrices whose positive semi-definiteness
        decides the truncated problem for `seq`.

        """

    @classmethod
    def contains(cls, x, eps=0.):
        """
        Whether the point `x` lies in the support, up to `eps`.

        """
        lo, hi = cls.support()
        return (math.isinf(lo) or x >= lo - eps) and (math.isinf(hi)
                                                      or x <= hi + eps)

    def check(self, seq, tol=None):
        """
        Decide the truncated problem for the moment sequence `seq`.

        Parameters
        ----------

        `seq` : MatrixMomentSequence
        The moments, in symmetric mode.

        `tol` : Tolerance (optional)

        Returns
        -------

        out : MomentVerdict
        On failure, the certificate names the first matrix found not PSD.

        """
        if not seq.symmetric:
            raise AsymmetricInput(
                f"The {self.name()} test needs a symmetric-mode sequence.")
        tol = tol or Tolerance()
        tested, boundary = [], []
        for hankel in self.positivity_matrices(seq):
            tested.append(hankel.name)
            verdict = is_psd(hankel.matrix(), tol)
            if not verdict.psd:
                certificate = Certificate(hankel.name, verdict.min_eigenvalue,
                                          verdict.eigenvector)
                return MomentVerdict(self.name(), seq.order, False,
                                     certificate, tuple(tested),
                                     tuple(boundary))
            if verdict.boundary:
                boundary.append(hankel.name)
        return MomentVerdict(self.name(),
                             seq.order,
                             True,
                             tested=tuple(tested),
                             boundary=tuple(boundary))
