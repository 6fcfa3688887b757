# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Tests that :func:`dga_ann.ratio_coding.code_rogers` and
:func:`dga_ann.ratio_coding.code_iec` give the same code just beside a
boundary as well inside the interval on that side.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

from dga_ann.ratio_coding import (
    ALPHABETS,
    IEC,
    ROGERS,
    code_iec,
    code_rogers,
    coding_intervals,
)

CODERS = {ROGERS: code_rogers, IEC: code_iec}
NUDGE = 1e-12


def code_at(scheme, position, ratio):
    ratios = [1.0] * len(ALPHABETS[scheme])
    ratios[position] = ratio
    return CODERS[scheme](ratios)[position]


def boundaries(intervals):
    """
    Yield (boundary, inside below, inside above, code at the boundary) for
    each boundary between two adjacent intervals.

    """
    for below, above in zip(intervals[:-1], intervals[1:], strict=True):
        bound = below.upper
        inside_below = (below.lower + bound) / 2
        if above.upper == float("inf"):
            inside_above = 2 * bound
        else:
            inside_above = (bound + above.upper) / 2
        at_bound = below.code if below.upper_closed else above.code
        yield bound, inside_below, inside_above, at_bound


class Test(tests.DgaTest):
    def _check_scheme(self, scheme):
        count = 0
        for i_pos, intervals in enumerate(coding_intervals(scheme)):
            for bound, inside_below, inside_above, at_bound in boundaries(intervals):
                where = f"{scheme} position {i_pos + 1}, boundary {bound}"
                below = code_at(scheme, i_pos, inside_below)
                above = code_at(scheme, i_pos, inside_above)
                self.assertEqual(code_at(scheme, i_pos, bound - NUDGE), below, where)
                self.assertEqual(code_at(scheme, i_pos, bound + NUDGE), above, where)
                self.assertEqual(code_at(scheme, i_pos, bound), at_bound, where)
                count += 1
        return count

    def test_rogers(self):
        self.assertEqual(self._check_scheme(ROGERS), 8)

    def test_iec(self):
        self.assertEqual(self._check_scheme(IEC), 9)

    def test_rogers_methane_hydrogen(self):
        self.assertEqual(code_at(ROGERS, 0, 0.1 - NUDGE), 5)
        self.assertEqual(code_at(ROGERS, 0, 0.1), 5)
        self.assertEqual(code_at(ROGERS, 0, 0.1 + NUDGE), 0)
        self.assertEqual(code_at(ROGERS, 0, 1.0 - NUDGE), 0)
        self.assertEqual(code_at(ROGERS, 0, 1.0 + NUDGE), 1)
        self.assertEqual(code_at(ROGERS, 0, 3.0 - NUDGE), 1)
        self.assertEqual(code_at(ROGERS, 0, 3.0 + NUDGE), 2)

    def test_iec_upper_boundary_closed(self):
        # 3 belongs to the [1, 3] range.
        self.assertEqual(code_at(IEC, 0, 3.0 - NUDGE), 1)
        self.assertEqual(code_at(IEC, 0, 3.0), 1)
        self.assertEqual(code_at(IEC, 0, 3.0 + NUDGE), 2)
        self.assertEqual(code_at(IEC, 1, 0.1 - NUDGE), 1)
        self.assertEqual(code_at(IEC, 1, 0.1 + NUDGE), 0)


if __name__ == "__main__":
    tests.main()
