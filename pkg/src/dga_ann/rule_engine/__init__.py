# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Match ratio code vectors against the Rogers and IEC fault tables.

This is done by wrapping '_fault_table_map.py', which holds the tables as
printed.

When a code vector matches several rows, the row whose pattern covers the
fewest code vectors wins : an exact row beats a wildcard row containing it.
Rows that tie on this count resolve to the lowest row number, and the
diagnosis is then flagged ``ambiguous``.  A vector matching no row gives
"no decision".

"""

from collections import namedtuple
from dataclasses import dataclass
import enum
import itertools
import json
import warnings

from dga_ann import _fault_table_map as ftm
from dga_ann.exceptions import AmbiguousRuleWarning
from dga_ann.gas_model import Diagnosis, Method, RogersFault, options
from dga_ann.ratio_coding import ALPHABETS, IEC, ROGERS, CodeVector
from dga_ann.rule_engine._code_pattern import CodePattern

__all__ = [
    "CodePattern",
    "IecVariant",
    "Rule",
    "RuleTable",
    "export_tables",
    "iec_lookup",
    "make_rule_table",
    "match_pattern",
    "rogers_lookup",
    "rule_table",
]


class IecVariant(enum.Enum):
    PRINTED = "printed"
    CORRECTED = "corrected"


Rule = namedtuple("Rule", ("row", "pattern", "fault"))

# The outcome of resolving a code vector against a table.
Resolution = namedtuple("Resolution", ("rule", "ambiguous", "candidates"))


def match_pattern(codes, pattern):
    """
    Test a code vector against a pattern.

    Raises ValueError when the arities differ.

    >>> arcing = CodePattern.from_cells(["0", "0", "1.2", "1.2"], "rogers")
    >>> match_pattern((0, 0, 2, 1), arcing)
    True
    >>> match_pattern((0, 0, 0, 0), arcing)
    False

    """
    return pattern.matches(codes)


@dataclass(frozen=True)
class RuleTable:
    """
    An ordered fault table for one method.

    ``variant`` is set for the IEC diagnosis tables only.

    """

    method: Method
    rows: tuple
    variant: IecVariant | None = None

    @property
    def scheme(self):
        return self.rows[0].pattern.scheme

    def matching_rows(self, codes):
        return [rule for rule in self.rows if rule.pattern.matches(codes)]

    def resolve(self, codes):
        """
        Find the row deciding a code vector.

        Returns:
            A (rule, ambiguous, candidates) namedtuple; rule is None when no
            row matches, candidates lists every matching row.

        """
        candidates = self.matching_rows(codes)
        if not candidates:
            return Resolution(None, False, ())
        best = min(rule.pattern.specificity for rule in candidates)
        winners = [rule for rule in candidates if rule.pattern.specificity == best]
        return Resolution(winners[0], len(winners) > 1, tuple(candidates))

    def lookup(self, codes):
        """Diagnose a code vector, returning a :class:`Diagnosis`."""
        resolution = self.resolve(codes)
        if resolution.rule is None:
            return Diagnosis.no_decision(self.method)
        if resolution.ambiguous and options.warn_on_ambiguous:
            rows = [rule.row for rule in resolution.candidates]
            warnings.warn(
                f"Code vector {tuple(codes)} matches rows {rows} equally; "
                f"using row {resolution.rule.row}.",
                category=AmbiguousRuleWarning,
            )
        fault = resolution.rule.fault
        return Diagnosis(
            method=self.method,
            result=fault,
            coarse=fault.coarse,
            confidence=1.0,
            ambiguous=resolution.ambiguous,
            row=resolution.rule.row,
        )

    def all_vectors(self):
        """Every code vector of this table's scheme."""
        alphabets = ALPHABETS[self.scheme]
        return [
            CodeVector(codes, self.scheme)
            for codes in itertools.product(*(sorted(alpha) for alpha in alphabets))
        ]

    def overlaps(self):
        """Map each code vector matched by more than one row to those rows."""
        result = {}
        for codes in self.all_vectors():
            rules = self.matching_rows(codes)
            if len(rules) > 1:
                result[codes] = rules
        return result

    def ties(self):
        """The code vectors whose best matches tie, so resolve ambiguously."""
        return [codes for codes in self.all_vectors() if self.resolve(codes).ambiguous]

    @property
    def name(self):
        name = self.method.value
        if self.variant is not None:
            name = f"{name}-{self.variant.value}"
        return name

    def to_dict(self):
        return {
            "method": self.method.value,
            "variant": None if self.variant is None else self.variant.value,
            "rows": [
                {
                    "row": rule.row,
                    "codes": list(rule.pattern.cells()),
                    "fault": int(rule.fault),
                    "description": rule.fault.description,
                    "coarse": rule.fault.coarse.value,
                }
                for rule in self.rows
            ],
        }

    def __str__(self):
        lines = [f"{self.name} fault table"]
        for rule in self.rows:
            lines.append(
                f"{rule.row:>3}  {rule.pattern!s:<22} {rule.fault.description}"
                f" ({rule.fault.coarse.value})"
            )
        return "\n".join(lines)


def make_rule_table(entries, method, variant=None):
    """
    Build a rule table from printed table rows.

    Args:

    * entries:
        Sequence of ``TableRow(row, codes, fault_index)``.
    * method:
        The :class:`Method` the table diagnoses for.

    Kwargs:

    * variant:
        An :class:`IecVariant`, for IEC diagnosis tables.

    """
    scheme = ROGERS if method.fault_type is RogersFault else IEC
    rows = []
    seen = set()
    for entry in entries:
        if entry.row in seen:
            msg = f"Duplicate row number {entry.row} in the {method.value} table."
            raise ValueError(msg)
        seen.add(entry.row)
        pattern = CodePattern.from_cells(entry.codes, scheme)
        fault = method.fault_type(entry.fault_index)
        rows.append(Rule(entry.row, pattern, fault))
    return RuleTable(method=method, rows=tuple(rows), variant=variant)


_ROGERS_TABLE = make_rule_table(ftm.ROGERS_DIAGNOSIS, Method.ROGERS_TABLE)
_IEC_TABLES = {
    IecVariant.PRINTED: make_rule_table(
        ftm.IEC_DIAGNOSIS_PRINTED, Method.IEC_TABLE, IecVariant.PRINTED
    ),
    IecVariant.CORRECTED: make_rule_table(
        ftm.IEC_DIAGNOSIS_CORRECTED, Method.IEC_TABLE, IecVariant.CORRECTED
    ),
}


def rule_table(method, variant=IecVariant.CORRECTED):
    """
    Return the diagnosis table for a rule method.

    ``variant`` is ignored for the Rogers table.

    """
    method = Method(method)
    if method is Method.ROGERS_TABLE:
        result = _ROGERS_TABLE
    elif method is Method.IEC_TABLE:
        result = _IEC_TABLES[IecVariant(variant)]
    else:
        msg = f"Method {method.value!r} has no rule table."
        raise ValueError(msg)
    return result


def rogers_lookup(codes):
    """
    Diagnose a Rogers code vector.

    >>> rogers_lookup((0, 0, 0, 0)).result
    <RogersFault.NORMAL: 1>

    """
    if len(codes) != 4:
        msg = f"Rogers lookup needs 4 codes, got {tuple(codes)}."
        raise ValueError(msg)
    return _ROGERS_TABLE.lookup(codes)


def iec_lookup(codes, variant=IecVariant.CORRECTED):
    """
    Diagnose an IEC code vector against the printed or corrected table.

    >>> iec_lookup((0, 2, 0), IecVariant.PRINTED).coarse
    <CoarseFault.NO_DECISION: 'NoDecision'>

    """
    if len(codes) != 3:
        msg = f"IEC lookup needs 3 codes, got {tuple(codes)}."
        raise ValueError(msg)
    return rule_table(Method.IEC_TABLE, variant).lookup(codes)


def export_tables(fmt="text"):
    """
    Dump the Rogers and both IEC tables as text or JSON.

    """
    tables = [
        _ROGERS_TABLE,
        _IEC_TABLES[IecVariant.PRINTED],
        _IEC_TABLES[IecVariant.CORRECTED],
    ]
    if fmt == "json":
        result = json.dumps({table.name: table.to_dict() for table in tables}, indent=2)
    elif fmt == "text":
        result = "\n\n".join(str(table) for table in tables)
    else:
        msg = f"Unsupported table export format {fmt!r}."
        raise ValueError(msg)
    return result

