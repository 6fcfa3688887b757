# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""Allow ``python -m dga_ann``."""

import sys

from dga_ann.cli import main

if __name__ == "__main__":
    sys.exit(main())
