# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines functions and classes for truncated matrix moment problems and for
the atomic representing measures of recurrent matrix sequences.

"""

from .atomic_measure import *
from .errors import *
from .hankel import *
from .problems import *
from .recurrence import *
from .symmetric import *
from .tolerance import *
