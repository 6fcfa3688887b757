# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Provides testing capabilities and customisations specific to dga-ann.

"""

import contextlib
import inspect
import io
import os
import os.path
import unittest
from unittest import main  # noqa: F401

import numpy as np

from dga_ann.gas_model import GasSample


#: Basepath for dga-ann test results.
_RESULT_PATH = os.path.join(os.path.dirname(__file__), "results")


def make_sample(sample_id="test", label=None, date=None, **gases):
    """
    Make a GasSample, with any gas not given set to 10 ppm.

    """
    values = dict(h2=10.0, ch4=10.0, c2h2=10.0, c2h4=10.0, c2h6=10.0, co=10.0, co2=10.0)
    values.update(gases)
    return GasSample(id=sample_id, date=date, actual_fault=label, **values)


class DgaTest(unittest.TestCase):
    # A TestCase with the result paths and array checks used in dga-ann.

    @staticmethod
    def get_result_path(relative_path):
        """
        Returns the absolute path to a result file when given the relative path
        as a string, or sequence of strings.

        """
        if not isinstance(relative_path, str):
            relative_path = os.path.join(*relative_path)
        return os.path.abspath(os.path.join(_RESULT_PATH, relative_path))

    def result_path(self, basename=None, ext=""):
        """
        Return the full path to a test result, generated from the \
        calling file, class and, optionally, method.

        Optional kwargs :

            * basename    - File basename. If omitted, this is \
                            generated from the calling method.
            * ext         - Appended file extension.

        """
        if ext and not ext.startswith("."):
            ext = "." + ext

        # The folder name follows the calling file's place under tests.
        path = os.path.abspath(inspect.getfile(self.__class__))
        path = os.path.splitext(path)[0]
        sub_path = path.rsplit("dga_ann", 1)[1].split("tests", 1)[1][1:]

        if basename is None:
            stack = inspect.stack()
            for frame in stack[1:]:
                if "test_" in frame[3]:
                    basename = frame[3].replace("test_", "")
                    break
        filename = basename + ext

        return os.path.join(
            self.get_result_path(""),
            sub_path.replace("test_", ""),
            self.__class__.__name__.replace("Test_", ""),
            filename,
        )

    def assertArrayEqual(self, a, b, err_msg=""):
        np.testing.assert_array_equal(a, b, err_msg=err_msg)

    def assertArrayAllClose(self, a, b, rtol=1.0e-7, atol=0.0, **kwargs):
        np.testing.assert_allclose(a, b, rtol=rtol, atol=atol, **kwargs)

    @contextlib.contextmanager
    def captured_output(self):
        """Capture stdout and stderr as a pair of StringIO objects."""
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            yield out, err
