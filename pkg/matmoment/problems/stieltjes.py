# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines class `problems.Stieltjes`.

"""

import math

from matmoment.errors import InsufficientMoments
from matmoment.hankel import build_hankel

from .moment_problem import MomentProblem

__all__ = ["Stieltjes", "check_stieltjes"]


class Stieltjes(MomentProblem):
    """
    The Stieltjes problem: representing measures supported on $[0, \\infty)$.

    """

    @classmethod
    def name(cls):
        """
        The problem name.

        """
        return "Stieltjes"

    @classmethod
    def support(cls):
        """
        The support interval.

        """
        return (0., math.inf)

    def positivity_matrices(self, seq):
        """
        $H_m$ and $EH_{m'}$ at the largest orders $S_0, \\hdots, S_n$ allow.

        """
        n = seq.order
        if n < 1:
            raise InsufficientMoments(
                "The Stieltjes test needs at least S_0 and S_1.",
                needed=1,
                available=n)
        return [build_hankel(seq, n // 2), build_hankel(seq, (n - 1) // 2, 1)]


def check_stieltjes(seq, tol=None):
    """
    Decide the truncated Stieltjes problem. See `MomentProblem.check`.

    """
    return Stieltjes().check(seq, tol)
