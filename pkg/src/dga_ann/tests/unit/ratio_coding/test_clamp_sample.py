# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Tests for function :func:`dga_ann.ratio_coding.clamp_sample`.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

from unittest import mock

from dga_ann.datasets import builtin_corpus
from dga_ann.exceptions import DetectionLimitWarning, InvalidConfigurationError
from dga_ann.gas_model import Concentration
from dga_ann.ratio_coding import clamp_sample


class Test(tests.DgaTest):
    def test_zero_raised(self):
        result = clamp_sample(tests.make_sample(c2h2=0), 1.0)
        self.assertEqual(result.c2h2, Concentration(1.0, True))

    def test_above_floor_unchanged(self):
        sample = tests.make_sample(c2h2=35)
        result = clamp_sample(sample, 1.0)
        self.assertEqual(result.c2h2, Concentration(35.0, False))
        self.assertIs(result, sample)

    def test_at_floor_unchanged(self):
        result = clamp_sample(tests.make_sample(h2=1.0), 1.0)
        self.assertFalse(result.h2.below_detection)

    def test_idempotent(self):
        once = clamp_sample(tests.make_sample(h2=0, co=0.2), 1.0)
        self.assertEqual(clamp_sample(once, 1.0), once)

    def test_printed_below_detection(self):
        sample = builtin_corpus()[3]
        result = clamp_sample(sample)
        self.assertEqual(result.c2h6, Concentration(1.0, True))

    def test_default_floor_from_options(self):
        with mock.patch("dga_ann.ratio_coding.options") as options:
            options.detection_floor = 5.0
            options.warn_on_clamp = False
            result = clamp_sample(tests.make_sample(h2=2))
        self.assertEqual(result.h2, Concentration(5.0, True))

    def test_bad_floor(self):
        for floor in (0, -1.0):
            with self.assertRaises(InvalidConfigurationError):
                clamp_sample(tests.make_sample(), floor)

    def test_warning(self):
        with mock.patch("dga_ann.ratio_coding.options") as options:
            options.warn_on_clamp = True
            with self.assertWarnsRegex(DetectionLimitWarning, "c2h2"):
                clamp_sample(tests.make_sample(c2h2=0), 1.0)

    def test_no_warning_by_default(self):
        with mock.patch("warnings.warn") as warn:
            clamp_sample(tests.make_sample(c2h2=0), 1.0)
        self.assertEqual(len(warn.mock_calls), 0)


if __name__ == "__main__":
    tests.main()
