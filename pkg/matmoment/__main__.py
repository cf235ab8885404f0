# Distributed under the MIT License.
# See LICENSE for details.
"""
Runs the command-line interface with `python -m matmoment`.

"""

import sys

from matmoment.cli import main

sys.exit(main())
