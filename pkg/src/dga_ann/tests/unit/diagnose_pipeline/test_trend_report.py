# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Unit tests for :func:`dga_ann.diagnose_pipeline.trend_report`.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

import datetime

from dga_ann.datasets import builtin_histories
from dga_ann.diagnose_pipeline import trend_report
from dga_ann.exceptions import TrendError
from dga_ann.gas_model import GAS_NAMES


class Test(tests.DgaTest):
    def test_elapsed_days(self):
        histories = builtin_histories()
        result = trend_report(histories["el-meghier"]).elapsed_days
        self.assertEqual(result, (0, 749, 1498))
        result = trend_report(histories["darguina"]).elapsed_days
        self.assertEqual(result, (0, 696, 1497))

    def test_changes(self):
        report = trend_report(builtin_histories()["el-meghier"])
        points = report.series["h2"]
        self.assertEqual([point.ppm for point in points], [111.0, 27.0, 41.0])
        self.assertEqual([point.change for point in points], [None, -84.0, 14.0])

    def test_below_detection(self):
        report = trend_report(builtin_histories()["el-meghier"])
        flags = [point.below_detection for point in report.series["c2h2"]]
        self.assertEqual(flags, [False, True, True])

    def test_sorted(self):
        samples = list(reversed(builtin_histories()["darguina"]))
        report = trend_report(samples)
        self.assertEqual(report.sample_id, "darguina")
        self.assertEqual(report.dates[0], datetime.date(2001, 4, 17))
        self.assertEqual(list(report.series), list(GAS_NAMES))

    def test_to_dict(self):
        document = trend_report(builtin_histories()["el-meghier"]).to_dict()
        self.assertEqual(document["dates"][1], "2003-05-06")
        self.assertEqual(document["series"]["h2"][2]["change"], 14.0)

    def test_too_few(self):
        with self.assertRaisesRegex(TrendError, "at least two"):
            trend_report(builtin_histories()["darguina"][:1])

    def test_mixed_ids(self):
        samples = [
            tests.make_sample("a", date=datetime.date(2001, 1, 1)),
            tests.make_sample("b", date=datetime.date(2002, 1, 1)),
        ]
        with self.assertRaisesRegex(TrendError, "share one id"):
            trend_report(samples)

    def test_undated(self):
        samples = [tests.make_sample("a", date=datetime.date(2001, 1, 1))]
        samples.append(tests.make_sample("a"))
        with self.assertRaisesRegex(TrendError, "no date"):
            trend_report(samples)


if __name__ == "__main__":
    tests.main()
