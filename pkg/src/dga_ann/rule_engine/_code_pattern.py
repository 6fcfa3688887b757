# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Provide an object to represent one row pattern of a fault table.

Patterns are freely convertible to+from the table cell notation, where a
wildcard set such as {1, 2} prints as "1,2" (or "1.2").
"""

from __future__ import annotations

from dataclasses import dataclass
import itertools
import math
import re

from dga_ann.ratio_coding import ALPHABETS, CodeVector

# A cell is one or more integers separated by commas or full stops.
_RE_CELL = re.compile(r"\s*\d+(?:\s*[.,]\s*\d+)*\s*")
_RE_DIGITS = re.compile(r"\d+")


def _codes_from_cell(cell):
    text = str(cell)
    if _RE_CELL.fullmatch(text) is None:
        msg = (
            f"Invalid code cell {cell!r} : requires one or more codes, "
            'separated by "," or ".".'
        )
        raise ValueError(msg)
    return frozenset(int(digits) for digits in _RE_DIGITS.findall(text))


@dataclass(frozen=True)
class CodePattern:
    """
    Per-position code matchers for one scheme.

    Each position holds the non-empty set of codes it accepts : a single
    code is an exact matcher, several codes form a wildcard.

    """

    positions: tuple[frozenset[int], ...]
    scheme: str

    def __post_init__(self):
        positions = tuple(
            frozenset(int(code) for code in pos) for pos in self.positions
        )
        alphabets = ALPHABETS[self.scheme]
        if len(positions) != len(alphabets):
            msg = (
                f"A {self.scheme} pattern has {len(alphabets)} positions, "
                f"got {len(positions)}."
            )
            raise ValueError(msg)
        for i_pos, (codes, alphabet) in enumerate(
            zip(positions, alphabets, strict=True)
        ):
            if not codes:
                msg = f"Pattern position {i_pos + 1} is empty."
                raise ValueError(msg)
            if not codes <= alphabet:
                msg = (
                    f"Pattern position {i_pos + 1} codes {sorted(codes)} are not "
                    f"in the {self.scheme} alphabet {sorted(alphabet)}."
                )
                raise ValueError(msg)
        object.__setattr__(self, "positions", positions)

    @classmethod
    def from_cells(cls, cells, scheme):
        """
        Make a pattern from table cells.

        >>> str(CodePattern.from_cells(["1,2", "0", "1.2"], "iec"))
        '({1,2},0,{1,2})'

        """
        return cls(tuple(_codes_from_cell(cell) for cell in cells), scheme)

    @property
    def specificity(self):
        """Number of concrete code vectors this pattern covers."""
        return math.prod(len(codes) for codes in self.positions)

    @property
    def is_exact(self):
        return self.specificity == 1

    def matches(self, codes):
        if len(codes) != len(self.positions):
            msg = (
                f"Cannot match {len(codes)} codes against a pattern "
                f"of {len(self.positions)} positions."
            )
            raise ValueError(msg)
        return all(
            code in accepted
            for code, accepted in zip(codes, self.positions, strict=True)
        )

    def expand(self):
        """All concrete code vectors covered, in ascending code order."""
        return [
            CodeVector(codes, self.scheme)
            for codes in itertools.product(*(sorted(pos) for pos in self.positions))
        ]

    def cells(self):
        """The table cell notation, one string per position."""
        return tuple(
            ",".join(str(code) for code in sorted(pos)) for pos in self.positions
        )

    def __str__(self):
        texts = []
        for pos in self.positions:
            text = ",".join(str(code) for code in sorted(pos))
            if len(pos) > 1:
                text = "{" + text + "}"
            texts.append(text)
        return "({})".format(",".join(texts))
