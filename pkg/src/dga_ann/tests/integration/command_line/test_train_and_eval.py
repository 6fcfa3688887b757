# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""Integration tests running training and evaluation through the command line."""

# import dga_ann.tests first so that some things can be initialised
# before importing anything else.
import dga_ann.tests as tests

import json
import os
import tempfile
from unittest import mock

from dga_ann.cli import EXIT_OK, EXIT_TRAINING, MODEL_DIR_ENV, main
from dga_ann.datasets import load_model


class Test(tests.DgaTest):
    def setUp(self):
        tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(tmpdir.cleanup)
        self.tmpdir = tmpdir.name
        patch = mock.patch.dict(os.environ, {MODEL_DIR_ENV: self.tmpdir})
        patch.start()
        self.addCleanup(patch.stop)

    def run_main(self, *argv):
        with self.captured_output() as (out, err):
            status = main(list(argv))
        return status, out.getvalue(), err.getvalue()

    def test_train_then_eval(self):
        for method in ("iec", "rogers"):
            status, out, _ = self.run_main("train", "--method", method)
            self.assertEqual(status, EXIT_OK)
            self.assertIn("converged after", out)
            self.assertIn("epoch  mse\n    0  ", out)
            path = os.path.join(self.tmpdir, f"{method}.model.json")
            report = load_model(path).metadata["train_report"]
            self.assertEqual(len(report["history"]), report["epochs"] + 1)
            self.assertEqual(report["history"][-1], report["final_mse"])
            self.assertLessEqual(report["final_mse"], 1e-3)
        names = sorted(os.listdir(self.tmpdir))
        self.assertEqual(names, ["iec.model.json", "rogers.model.json"])

        status, out, err = self.run_main("eval", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(err, "")
        document = json.loads(out)
        self.assertEqual(
            document["methods"], ["iec", "rogers", "ann-iec", "ann-rogers"]
        )
        for row in document["rows"]:
            self.assertNotEqual(row["outcomes"]["ann-iec"], "NoDecision")
            self.assertNotEqual(row["outcomes"]["ann-rogers"], "NoDecision")

    def test_repeatable_model_files(self):
        first = os.path.join(self.tmpdir, "first.json")
        second = os.path.join(self.tmpdir, "second.json")
        for path in (first, second):
            status, _, _ = self.run_main("train", "--method", "iec", "--out", path)
            self.assertEqual(status, EXIT_OK)
        with open(first, "rb") as fh1, open(second, "rb") as fh2:
            self.assertEqual(fh1.read(), fh2.read())
        self.assertIsNone(load_model(first).metadata["created"])

    def test_stamp(self):
        path = os.path.join(self.tmpdir, "stamped.json")
        status, _, _ = self.run_main(
            "train", "--method", "iec", "--out", path, "--stamp"
        )
        self.assertEqual(status, EXIT_OK)
        self.assertIsNotNone(load_model(path).metadata["created"])

    def test_not_converged(self):
        path = os.path.join(self.tmpdir, "short.json")
        status, _, err = self.run_main(
            "train", "--method", "rogers", "--out", path, "--max-epochs", "1"
        )
        self.assertEqual(status, EXIT_TRAINING)
        self.assertIn("did not reach MSE", err)
        self.assertFalse(os.path.exists(path))

    def test_eval_without_model_files(self):
        status, out, err = self.run_main("eval", "--format", "json")
        self.assertEqual(status, EXIT_OK)
        self.assertIn("training in process with seed 42", err)
        document = json.loads(out)
        self.assertEqual(
            document["methods"], ["iec", "rogers", "ann-iec", "ann-rogers"]
        )
        self.assertEqual(len(document["rows"]), 10)
        faults = ("Normal", "PD", "ARC", "OH")
        for row in document["rows"]:
            self.assertIn(row["outcomes"]["ann-iec"], faults)
            self.assertIn(row["outcomes"]["ann-rogers"], faults)

    def test_train_first(self):
        status, out, err = self.run_main("eval", "--train-first")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(err, "")
        self.assertIn("ann-rogers", out.splitlines()[1])


if __name__ == "__main__":
    tests.main()
