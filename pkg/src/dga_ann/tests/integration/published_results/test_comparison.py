# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""Integration tests for the rule tables and networks on the field corpus."""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

from dga_ann.datasets import builtin_corpus, default_network, reference_results
from dga_ann.diagnose_pipeline import DIVERGENT_NOTE, evaluate
from dga_ann.gas_model import CoarseFault, Method


class TestRuleTables(tests.DgaTest):
    def setUp(self):
        self.reference = reference_results()
        self.table = evaluate(builtin_corpus(), reference=self.reference)

    def test_rogers_reproduced(self):
        self.assertEqual(
            self.table.column(Method.ROGERS_TABLE),
            self.reference.column(Method.ROGERS_TABLE),
        )

    def test_iec_reproduced(self):
        computed = self.table.column(Method.IEC_TABLE)
        published = self.reference.column(Method.IEC_TABLE)
        pairs = zip(computed, published, strict=True)
        matching = [
            i_row + 1 for i_row, (ours, theirs) in enumerate(pairs) if ours is theirs
        ]
        self.assertEqual(matching, [2, 3, 4, 5, 7, 8, 10])
        for i_row in (0, 5, 8):
            self.assertIs(computed[i_row], CoarseFault.ARC)
            self.assertEqual(
                self.table.rows[i_row].notes, {Method.IEC_TABLE: DIVERGENT_NOTE}
            )


class TestNetworks(tests.DgaTest):
    def setUp(self):
        self.models = {
            method: default_network(method)
            for method in (Method.ANN_IEC, Method.ANN_ROGERS)
        }
        self.table = evaluate(
            builtin_corpus(), models=self.models, reference=reference_results()
        )

    def test_always_decide(self):
        for method in self.models:
            column = self.table.column(method)
            self.assertEqual(len(column), 10)
            self.assertNotIn(CoarseFault.NO_DECISION, column)

    def test_scored(self):
        for method in self.models:
            self.assertIsNotNone(self.table.accuracy[method])
            self.assertIsNotNone(self.table.agreement[method])

    def test_deterministic(self):
        again = evaluate(builtin_corpus(), models=self.models, max_workers=3)
        for method in self.models:
            self.assertEqual(again.column(method), self.table.column(method))


if __name__ == "__main__":
    tests.main()
