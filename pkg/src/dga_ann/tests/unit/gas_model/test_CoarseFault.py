# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Unit tests for :class:`dga_ann.gas_model.CoarseFault`.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

from dga_ann.gas_model import CoarseFault


class Test_from_label(tests.DgaTest):
    def test_short_normal(self):
        self.assertIs(CoarseFault.from_label("N"), CoarseFault.NORMAL)

    def test_case_and_space(self):
        self.assertIs(CoarseFault.from_label(" arc "), CoarseFault.ARC)
        self.assertIs(CoarseFault.from_label("nodecision"), CoarseFault.NO_DECISION)

    def test_unknown(self):
        with self.assertRaisesRegex(ValueError, "Unknown fault label"):
            CoarseFault.from_label("XX")


class Test_short_label(tests.DgaTest):
    def test_labels(self):
        self.assertEqual(CoarseFault.NORMAL.short_label, "N")
        self.assertEqual(CoarseFault.OH.short_label, "OH")


if __name__ == "__main__":
    tests.main()
