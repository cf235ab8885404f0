# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines class `problems.Hausdorff`.

"""

from matmoment.errors import InsufficientMoments
from matmoment.hankel import (build_complement_hankel, build_difference_hankel,
                              build_hankel)

from .moment_problem import MomentProblem

__all__ = ["Hausdorff", "check_hausdorff"]


class Hausdorff(MomentProblem):
    r"""
    The Hausdorff problem: representing measures supported on $[0, 1]$.

    Notes
    -----

    The matrices tested depend on the parity of the truncation order $n$:

    - $n = 2m$: $H_m$ and $(E - E^2)H_{m-1}$;
    - $n = 2m + 1$: $EH_m$ and $(I - E)H_m$.

    """

    @classmethod
    def name(cls):
        """
        The problem name.

        """
        return "Hausdorff"

    @classmethod
    def support(cls):
        """
        The support interval.

        """
        return (0., 1.)

    def positivity_matrices(self, seq):
        n = seq.order
        if n < 1:
            raise InsufficientMoments(
                "The Hausdorff test needs at least S_0 and S_1.",
                needed=1,
                available=n)
        if n % 2 == 0:
            m = n // 2
            return [build_hankel(seq, m), build_difference_hankel(seq, m - 1)]
        m = (n - 1) // 2
        return [build_hankel(seq, m, 1), build_complement_hankel(seq, m)]


def check_hausdorff(seq, tol=None):
    """
    Decide the truncated Hausdorff problem. See `MomentProblem.check`.

    """
    return Hausdorff().check(seq, tol)
