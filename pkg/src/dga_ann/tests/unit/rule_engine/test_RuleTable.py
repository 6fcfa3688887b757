# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Unit tests for :class:`dga_ann.rule_engine.RuleTable`.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

from dga_ann._fault_table_map import TableRow
from dga_ann.gas_model import Method
from dga_ann.rule_engine import IecVariant, make_rule_table, rule_table


class Test_overlaps(tests.DgaTest):
    def test_rogers(self):
        overlaps = rule_table(Method.ROGERS_TABLE).overlaps()
        self.assertEqual(list(overlaps), [(0, 0, 2, 2)])
        self.assertEqual([rule.row for rule in overlaps[(0, 0, 2, 2)]], [10, 11])
        self.assertEqual(rule_table(Method.ROGERS_TABLE).ties(), [])

    def test_iec_printed(self):
        table = rule_table(Method.IEC_TABLE, IecVariant.PRINTED)
        self.assertEqual(sorted(table.overlaps()), [(0, 2, 1), (1, 0, 2)])
        self.assertEqual(table.ties(), [(0, 2, 1)])

    def test_iec_corrected(self):
        table = rule_table(Method.IEC_TABLE, IecVariant.CORRECTED)
        self.assertEqual(list(table.overlaps()), [(1, 0, 2)])
        self.assertEqual(table.ties(), [])


class Test_all_vectors(tests.DgaTest):
    def test_counts(self):
        self.assertEqual(len(rule_table(Method.IEC_TABLE).all_vectors()), 27)
        self.assertEqual(len(rule_table(Method.ROGERS_TABLE).all_vectors()), 72)


class Test_rule_table(tests.DgaTest):
    def test_names(self):
        self.assertEqual(rule_table("rogers").name, "rogers")
        self.assertEqual(rule_table("iec", "printed").name, "iec-printed")

    def test_network_method(self):
        with self.assertRaises(ValueError):
            rule_table(Method.ANN_IEC)

    def test_row_count(self):
        self.assertEqual(len(rule_table(Method.ROGERS_TABLE).rows), 12)
        self.assertEqual(len(rule_table(Method.IEC_TABLE).rows), 9)


class Test_make_rule_table(tests.DgaTest):
    def test_duplicate_row(self):
        entries = [TableRow(1, ("0", "0", "0"), 1), TableRow(1, ("0", "1", "0"), 2)]
        with self.assertRaisesRegex(ValueError, "Duplicate row"):
            make_rule_table(entries, Method.IEC_TABLE)

    def test_to_dict(self):
        table = make_rule_table([TableRow(4, ("1.2", "0", "1,2"), 4)], Method.IEC_TABLE)
        self.assertEqual(
            table.to_dict(),
            {
                "method": "iec",
                "variant": None,
                "rows": [
                    {
                        "row": 4,
                        "codes": ["1,2", "0", "1,2"],
                        "fault": 4,
                        "description": "Discharge of low energy",
                        "coarse": "ARC",
                    }
                ],
            },
        )


if __name__ == "__main__":
    tests.main()
