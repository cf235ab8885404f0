# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines class `problems.Hamburger`.

"""

import math

from matmoment.hankel import build_hankel

from .moment_problem import MomentProblem

__all__ = ["Hamburger", "check_hamburger"]


class Hamburger(MomentProblem):
    """
    The Hamburger problem: representing measures supported on the real line.

    A sequence $S_0, \\hdots, S_n$ passes when $H_{\\lfloor n/2 \\rfloor}$ is
    PSD; smaller $H_k$ are leading principal submatrices of it.

    """

    @classmethod
    def name(cls):
        """
        The problem name.

        """
        return "Hamburger"

    @classmethod
    def support(cls):
        """
        The support interval.

        """
        return (-math.inf, math.inf)

    def positivity_matrices(self, seq):
        """
        $H_m$ with $m = \\lfloor n/2 \\rfloor$.

        """
        return [build_hankel(seq, seq.order // 2)]


def check_hamburger(seq, tol=None):
    """
    Decide the truncated Hamburger problem. See `MomentProblem.check`.

    """
    return Hamburger().check(seq, tol)
