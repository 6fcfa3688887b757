# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Tests for the built-in field data of :mod:`dga_ann.datasets`.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

import datetime
from fractions import Fraction

from dga_ann.datasets import (
    builtin_corpus,
    builtin_histories,
    claimed_accuracies,
    parse_samples,
    reference_results,
    serialize_samples,
)
from dga_ann.gas_model import CoarseFault, Concentration, Method


class Test_builtin_corpus(tests.DgaTest):
    def test_ids_and_labels(self):
        corpus = builtin_corpus()
        self.assertEqual(corpus.ids, tuple(f"s{i}" for i in range(1, 11)))
        self.assertTrue(corpus.labeled)
        labels = [sample.actual_fault.short_label for sample in corpus]
        self.assertEqual(
            labels, ["ARC", "PD", "ARC", "OH", "ARC", "N", "OH", "N", "PD", "OH"]
        )

    def test_sample_10(self):
        sample = builtin_corpus()[9]
        self.assertEqual(
            [sample.ppm(name) for name in ("h2", "ch4", "c2h2", "c2h4", "c2h6")],
            [1443.0, 3899.0, 113.0, 600.0, 1115.0],
        )

    def test_unreported_co(self):
        self.assertEqual(builtin_corpus()[4].co, Concentration(1.0, True))

    def test_notes(self):
        notes = builtin_corpus().notes
        self.assertEqual(len(notes), 10)
        self.assertIn("swapped", notes["s4"])

    def test_serialized(self):
        with open(self.get_result_path(("datasets", "builtin_corpus.csv"))) as fh:
            expected = fh.read()
        self.assertEqual(serialize_samples(builtin_corpus()), expected)

    def test_reparse(self):
        corpus = builtin_corpus()
        self.assertEqual(parse_samples(serialize_samples(corpus)), corpus)


class Test_builtin_histories(tests.DgaTest):
    def test_histories(self):
        histories = builtin_histories()
        self.assertEqual(sorted(histories), ["darguina", "el-meghier"])
        dates = [sample.date for sample in histories["el-meghier"]]
        self.assertEqual(
            dates,
            [
                datetime.date(2001, 4, 17),
                datetime.date(2003, 5, 6),
                datetime.date(2005, 5, 24),
            ],
        )
        self.assertEqual(histories["darguina"][2].ppm("c2h2"), 326.0)

    def test_shared_reading(self):
        # The first el-meghier reading is corpus sample 9.
        first = builtin_histories()["el-meghier"][0]
        sample = builtin_corpus()[8]
        for name in ("h2", "ch4", "c2h2", "c2h4", "c2h6", "co", "co2"):
            self.assertEqual(first.ppm(name), sample.ppm(name))


class Test_reference_results(tests.DgaTest):
    def test_rogers_column(self):
        expected = ["NoDecision", "OH", "ARC", "NoDecision", "NoDecision"]
        expected += ["OH", "OH", "OH", "ARC", "OH"]
        column = reference_results().column(Method.ROGERS_TABLE)
        self.assertEqual([fault.value for fault in column], expected)

    def test_for_sample(self):
        row = reference_results().for_sample("s6")
        self.assertIs(row.actual, CoarseFault.NORMAL)
        self.assertIs(row.iec, CoarseFault.PD)
        self.assertIs(row.ann_rogers, CoarseFault.NORMAL)
        self.assertIsNone(reference_results().for_sample("s11"))


class Test_claimed_accuracies(tests.DgaTest):
    def test_claims(self):
        claims = {(c.method, c.source): c.accuracy for c in claimed_accuracies()}
        self.assertEqual(claims[(Method.IEC_TABLE, "conclusions")], Fraction(1, 5))
        self.assertEqual(claims[(Method.ROGERS_TABLE, "conclusions")], Fraction(2, 5))
        self.assertEqual(claims[(Method.ANN_ROGERS, "results text")], Fraction(4, 5))


if __name__ == "__main__":
    tests.main()
