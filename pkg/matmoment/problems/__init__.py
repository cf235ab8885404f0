# Distributed under the MIT License.
# See LICENSE for details.
"""
Contains classes representing truncated matrix moment problems.

"""

from .hamburger import *
from .hausdorff import *
from .moment_problem import *
from .stieltjes import *
