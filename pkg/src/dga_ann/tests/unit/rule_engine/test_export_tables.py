# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Tests for function :func:`dga_ann.rule_engine.export_tables`.

"""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

import json

from dga_ann.rule_engine import export_tables


class Test(tests.DgaTest):
    def test_json(self):
        document = json.loads(export_tables("json"))
        self.assertEqual(list(document), ["rogers", "iec-printed", "iec-corrected"])
        printed = document["iec-printed"]["rows"]
        self.assertEqual(printed[6]["codes"], ["0", "2", "1"])
        corrected = document["iec-corrected"]["rows"]
        self.assertEqual(corrected[6]["codes"], ["0", "2", "0"])

    def test_text(self):
        text = export_tables()
        self.assertIn("rogers fault table", text)
        self.assertIn("iec-corrected fault table", text)
        self.assertIn("({1,2},0,{1,2})", text)

    def test_bad_format(self):
        with self.assertRaises(ValueError):
            export_tables("xml")


if __name__ == "__main__":
    tests.main()
