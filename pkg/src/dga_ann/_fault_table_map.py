# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.

"""
Provides the gas-ratio fault tables, as printed.

Code cells are strings : a single code, or a wildcard set written "1,2"
(also accepted as "1.2").

"""

from collections import namedtuple


TableRow = namedtuple("TableRow", "row codes fault_index")


ROGERS_DIAGNOSIS = (
    TableRow(1, ("0", "0", "0", "0"), 1),
    TableRow(2, ("5", "0", "0", "0"), 2),
    TableRow(3, ("1.2", "0", "0", "0"), 3),
    TableRow(4, ("1.2", "1", "0", "0"), 4),
    TableRow(5, ("5", "1", "0", "0"), 5),
    TableRow(6, ("0", "0", "1", "0"), 6),
    TableRow(7, ("1", "0", "1", "0"), 7),
    TableRow(8, ("1", "0", "2", "0"), 8),
    TableRow(9, ("0", "0", "0", "1"), 9),
    TableRow(10, ("0", "0", "1.2", "1.2"), 10),
    TableRow(11, ("0", "0", "2", "2"), 11),
    TableRow(12, ("5", "0", "0", "1.2"), 12),
)

IEC_DIAGNOSIS_PRINTED = (
    TableRow(1, ("0", "0", "0"), 1),
    TableRow(2, ("0", "1", "0"), 2),
    TableRow(3, ("1", "1", "0"), 3),
    TableRow(4, ("1.2", "0", "1.2"), 4),
    TableRow(5, ("1", "0", "2"), 5),
    TableRow(6, ("0", "0", "1"), 6),
    TableRow(7, ("0", "2", "1"), 7),
    TableRow(8, ("0", "2", "1"), 8),
    TableRow(9, ("0", "2", "2"), 9),
)

# Row 7 as used by the IEC training table.
IEC_DIAGNOSIS_CORRECTED = tuple(
    TableRow(7, ("0", "2", "0"), 7) if entry.row == 7 else entry
    for entry in IEC_DIAGNOSIS_PRINTED
)

IEC_TRAINING = (
    TableRow(1, ("0", "0", "0"), 1),
    TableRow(2, ("0", "1", "0"), 2),
    TableRow(3, ("1", "1", "0"), 3),
    TableRow(4, ("1,2", "0", "1,2"), 4),
    TableRow(5, ("1", "0", "2"), 5),
    TableRow(6, ("0", "0", "1"), 6),
    TableRow(7, ("0", "2", "0"), 7),
    TableRow(8, ("0", "2", "1"), 8),
    TableRow(9, ("0", "2", "2"), 9),
)

# NOTE: row 5 reads (0,1,0,0) here, where the diagnosis table has (5,1,0,0).
ROGERS_TRAINING = (
    TableRow(1, ("0", "0", "0", "0"), 1),
    TableRow(2, ("5", "0", "0", "0"), 2),
    TableRow(3, ("1,2", "0", "0", "0"), 3),
    TableRow(4, ("1,2", "1", "0", "0"), 4),
    TableRow(5, ("0", "1", "0", "0"), 5),
    TableRow(6, ("0", "0", "1", "0"), 6),
    TableRow(7, ("1", "0", "1", "0"), 7),
    TableRow(8, ("1", "0", "2", "0"), 8),
    TableRow(9, ("0", "0", "0", "1"), 9),
    TableRow(10, ("0", "0", "1,2", "1,2"), 10),
    TableRow(11, ("0", "0", "2", "2"), 11),
    TableRow(12, ("5", "0", "0", "1,2"), 12),
)
