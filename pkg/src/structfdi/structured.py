"""Structural solvability analysis over pattern-matrix system classes.

A structured triple (A, L, C of pattern matrices) stands for every
concrete system whose matrices fit the patterns.  The analysis mirrors
the numeric one at the class level: each fault channel gets a structural
index (first power where the pattern product C A^j L_i is not all-zero),
the per-channel first responses stack into a signature pattern, and full
column rank of that pattern, decided by zero-forcing colorability,
certifies that isolation is solvable for every member.  The certificate
is one-sided: when it fails the class may still be solvable member by
member, so the verdict is three-valued.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .patterns import (PatternFormatError, PatternMatrix, Symbol,
                       format_pattern, is_zero_pattern, pattern_mul,
                       pattern_transpose)
from .zero_forcing import ColoringState, build_graph, color_closure


class StructuredVerdict(enum.Enum):
    SOLVABLE = "Solvable"
    NOT_SOLVABLE = "NotSolvable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class StructuredTriple:
    """Pattern matrices of a structured system with fault inputs."""

    A_pat: PatternMatrix
    L_pat: PatternMatrix
    C_pat: PatternMatrix

    def __post_init__(self):
        n = self.A_pat.rows
        if self.A_pat.cols != n:
            raise ValueError(f"A pattern must be square, got {self.A_pat.shape}")
        if self.L_pat.rows != n:
            raise ValueError(
                f"L pattern must have {n} rows to match A, got {self.L_pat.shape}")
        if self.C_pat.cols != n:
            raise ValueError(
                f"C pattern must have {n} columns to match A, got {self.C_pat.shape}")

    @property
    def n(self) -> int:
        return self.A_pat.rows

    @property
    def p(self) -> int:
        return self.C_pat.rows

    @property
    def q(self) -> int:
        return self.L_pat.cols

    def fault_column(self, i) -> PatternMatrix:
        """Pattern column L_i (1-based channel index)."""
        self._check_channel(i)
        return self.L_pat.column(i - 1)

    def _check_channel(self, i):
        if not 1 <= i <= self.q:
            raise ValueError(f"fault channel {i} out of range 1..{self.q}")


@dataclass(frozen=True)
class StructuredReport:
    """Outcome of the structural analysis with its evidence.

    ``reasons`` carries machine-readable codes: MissingIndex{i} per
    channel without a structural index, ColorableRankCertificate when
    the signature pattern passed the colorability rank test, and
    SufficiencyGap when it did not (the test is sufficient only, so no
    negative conclusion follows).  ``monte_carlo`` may hold a sampling
    summary attached by the caller; it never changes the verdict.
    """

    indices: tuple
    signature: Optional[PatternMatrix]
    verdict: StructuredVerdict
    reasons: tuple
    star_columns: Optional[tuple]
    colorability_trace: Optional[ColoringState]
    monte_carlo: Optional[object] = None

    def to_jsonable(self):
        trace = (None if self.colorability_trace is None
                 else self.colorability_trace.trace_jsonable())
        mc = self.monte_carlo
        return {
            "eta": list(self.indices),
            "R": None if self.signature is None else self.signature.row_strings(),
            "verdict": self.verdict.value,
            "reasons": list(self.reasons),
            "star_columns": None if self.star_columns is None
                            else list(self.star_columns),
            "coloring_trace": trace,
            "monte_carlo": mc.to_jsonable() if mc is not None else None,
        }


def structural_index(sys: StructuredTriple, i) -> Optional[int]:
    """Structural index of fault channel i, or None when it is absent.

    Smallest k >= 1 with the pattern product C A^(k-1) L_i not all-zero,
    scanned up to k = n.  A first nonzero symbol marks a shortest walk
    from the channel into the outputs, and shortest walks have length
    below n, so a longer scan cannot find anything new.
    """
    index, _ = _index_and_column(sys, i)
    return index


def _index_and_column(sys, i):
    column = sys.fault_column(i)
    lead = sys.C_pat
    for j in range(sys.n):
        response = pattern_mul(lead, column)
        if not is_zero_pattern(response):
            return j + 1, response
        lead = pattern_mul(lead, sys.A_pat)
    return None, None


def signature_pattern(sys: StructuredTriple) -> PatternMatrix:
    """Stack the first nonzero pattern responses column by column.

    Raises ValueError naming the channels whose structural index is
    missing.
    """
    columns = []
    missing = []
    for i in range(1, sys.q + 1):
        index, column = _index_and_column(sys, i)
        if index is None:
            missing.append(i)
        else:
            columns.append(column.to_array())
    if missing:
        raise ValueError(f"structural index missing for channels {missing}; "
                         "the signature pattern is undefined")
    return PatternMatrix(np.hstack(columns))


def star_column_check(signature: PatternMatrix):
    """Per-column flags: does the column contain at least one ``*``?

    A starred column pins the fault index of every class member to the
    structural one; a column of only ``?`` and ``0`` leaves room for
    members whose index is larger.
    """
    arr = signature.to_array()
    return [bool((arr[:, j] == Symbol.STAR).any()) for j in range(signature.cols)]


def analyze_structured(sys: StructuredTriple,
                       monte_carlo=None) -> StructuredReport:
    """Three-valued structural solvability verdict.

    NotSolvable when any structural index is missing (no member is then
    solvable); Solvable when the signature pattern has full column rank
    by the colorability test (every member is then solvable); otherwise
    Inconclusive, because the rank certificate is sufficient but not
    necessary.  An optional sampling summary is attached as evidence
    only.
    """
    pairs = [_index_and_column(sys, i) for i in range(1, sys.q + 1)]
    indices = tuple(index for index, _ in pairs)
    missing = [i for i, (index, _) in enumerate(pairs, start=1) if index is None]
    if missing:
        return StructuredReport(
            indices=indices, signature=None,
            verdict=StructuredVerdict.NOT_SOLVABLE,
            reasons=tuple(f"MissingIndex{i}" for i in missing),
            star_columns=None, colorability_trace=None,
            monte_carlo=monte_carlo)

    signature = PatternMatrix(np.hstack([col.to_array() for _, col in pairs]))
    stars = tuple(star_column_check(signature))
    trace = None
    colorable = False
    if signature.cols <= signature.rows:
        trace = color_closure(build_graph(pattern_transpose(signature)))
        colorable = all(node in trace.black for node in range(1, signature.cols + 1))
    if colorable:
        verdict = StructuredVerdict.SOLVABLE
        reasons = ("ColorableRankCertificate",)
    else:
        verdict = StructuredVerdict.INCONCLUSIVE
        reasons = ("SufficiencyGap",)
    return StructuredReport(indices=indices, signature=signature,
                            verdict=verdict, reasons=reasons,
                            star_columns=stars, colorability_trace=trace,
                            monte_carlo=monte_carlo)


_BLOCK_LABELS = ("A", "L", "C")


def parse_structured_system(text: str) -> StructuredTriple:
    """Parse a structured system file with labeled pattern blocks.

    The format is three blocks headed by ``A:``, ``L:`` and ``C:`` lines,
    each followed by pattern rows; blank lines separate blocks.  Parse
    and dimension errors name the offending block and line.
    """
    blocks = {}
    label = None
    rows: list = []
    start = 0

    def finish(upto_line):
        if label is not None:
            if not rows:
                raise PatternFormatError(f"block {label}: has no rows", upto_line)
            blocks[label] = _rows_to_pattern(label, rows, start)

    lines = text.splitlines()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.endswith(":") and len(stripped.split()) == 1:
            finish(lineno)
            name = stripped[:-1]
            if name not in _BLOCK_LABELS:
                raise PatternFormatError(
                    f"unknown block label {name!r} (expected A, L or C)", lineno)
            if name in blocks:
                raise PatternFormatError(f"duplicate block {name!r}", lineno)
            label = name
            rows = []
            start = lineno
            continue
        if label is None:
            raise PatternFormatError(
                "pattern rows before any block label", lineno)
        rows.append((lineno, line))
    finish(len(lines))

    absent = [name for name in _BLOCK_LABELS if name not in blocks]
    if absent:
        raise PatternFormatError(f"missing blocks: {', '.join(absent)}",
                                 len(lines) or 1)
    try:
        return StructuredTriple(A_pat=blocks["A"], L_pat=blocks["L"],
                                C_pat=blocks["C"])
    except ValueError as exc:
        raise ValueError(f"inconsistent block dimensions: {exc}") from exc


def _rows_to_pattern(label, numbered_rows, start_line):
    from .patterns import _parse_row

    parsed = []
    width = None
    for lineno, line in numbered_rows:
        row = _parse_row(line, lineno)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise PatternFormatError(
                f"block {label}: row has {len(row)} entries, expected {width}",
                lineno)
        parsed.append(row)
    return PatternMatrix(np.array(parsed, dtype=np.int8))


def format_structured_system(sys: StructuredTriple) -> str:
    """Render a structured triple in the labeled-block file format."""
    parts = []
    for label, pattern in (("A", sys.A_pat), ("L", sys.L_pat), ("C", sys.C_pat)):
        parts.append(f"{label}:\n{format_pattern(pattern)}")
    return "\n".join(parts)
