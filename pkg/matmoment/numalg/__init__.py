# Distributed under the MIT License.
# See LICENSE for details.
"""
Wrapper for numerical functions provided by NumPy and SciPy.

"""

from .linalg import *
from .polynomial import *
from .vandermonde import *
