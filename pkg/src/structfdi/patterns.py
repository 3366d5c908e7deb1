"""Pattern matrices over the alphabet {0, *, ?}.

A pattern matrix records, for each entry of a real matrix, whether that
entry is exactly zero (``0``), known nonzero (``*``), or arbitrary
(``?``).  The real matrices consistent with a pattern form its pattern
class.  Addition and multiplication of symbols are defined so that the
pattern of a sum/product always covers the sum/product of any two class
members, which lets matrix products, powers, and rank questions be asked
of the entire class at once.
"""

from __future__ import annotations

import enum

import numpy as np


class Symbol(enum.IntEnum):
    """One entry of a pattern matrix."""

    ZERO = 0
    STAR = 1
    QUESTION = 2


ZERO = Symbol.ZERO
STAR = Symbol.STAR
QUESTION = Symbol.QUESTION

# Symbol arithmetic, stored as explicit lookup tables indexed by
# (Symbol, Symbol).  STAR + STAR is QUESTION because two nonzeros can
# cancel; STAR * STAR stays STAR because a product of nonzeros cannot.
_ADD_TABLE = np.array(
    [[0, 1, 2],
     [1, 2, 2],
     [2, 2, 2]], dtype=np.int8)

_MUL_TABLE = np.array(
    [[0, 0, 0],
     [0, 1, 2],
     [0, 2, 2]], dtype=np.int8)

_SYMBOL_TO_TOKEN = {ZERO: "0", STAR: "*", QUESTION: "?"}
_TOKEN_TO_SYMBOL = {"0": ZERO, "*": STAR, "?": QUESTION}


def symbol_add(a: Symbol, b: Symbol) -> Symbol:
    """Add two pattern symbols."""
    return Symbol(int(_ADD_TABLE[a, b]))


def symbol_mul(a: Symbol, b: Symbol) -> Symbol:
    """Multiply two pattern symbols."""
    return Symbol(int(_MUL_TABLE[a, b]))


class PatternFormatError(ValueError):
    """Raised when pattern text cannot be parsed.

    Carries the 1-based ``line`` and ``column`` of the offending token
    (column 0 when the problem concerns the whole line).
    """

    def __init__(self, message, line, column=0):
        super().__init__(f"line {line}, column {column}: {message}"
                         if column else f"line {line}: {message}")
        self.line = line
        self.column = column


class PatternMatrix:
    """An immutable matrix of :class:`Symbol` entries.

    Entries are stored row-major; indexing is 0-based, ``M[i, j]``
    returns a :class:`Symbol`.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=np.int8)
        if arr.ndim != 2:
            raise ValueError("pattern entries must form a 2-D grid")
        if arr.size and not np.isin(arr, (0, 1, 2)).all():
            raise ValueError("pattern entries must be Symbol values (0, *, ?)")
        arr = arr.copy()
        arr.flags.writeable = False
        self._entries = arr

    @classmethod
    def zeros(cls, rows, cols):
        """The all-zero pattern of the given shape."""
        return cls(np.zeros((rows, cols), dtype=np.int8))

    @classmethod
    def identity(cls, n):
        """The pattern with STAR on the diagonal and ZERO elsewhere."""
        return cls(np.eye(n, dtype=np.int8))

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self):
        return self._entries.shape

    def to_array(self) -> np.ndarray:
        """The underlying int8 grid (read-only view)."""
        return self._entries

    def __getitem__(self, key) -> Symbol:
        value = self._entries[key]
        if np.isscalar(value) or value.ndim == 0:
            return Symbol(int(value))
        return PatternMatrix(np.atleast_2d(value))

    def __eq__(self, other):
        if not isinstance(other, PatternMatrix):
            return NotImplemented
        return (self.shape == other.shape
                and bool(np.array_equal(self._entries, other._entries)))

    def __hash__(self):
        return hash((self.shape, self._entries.tobytes()))

    def __add__(self, other):
        return pattern_add(self, other)

    def __matmul__(self, other):
        return pattern_mul(self, other)

    def __pow__(self, k):
        return pattern_power(self, k)

    @property
    def T(self) -> "PatternMatrix":
        return pattern_transpose(self)

    def column(self, j) -> "PatternMatrix":
        """Column ``j`` (0-based) as an r-by-1 pattern."""
        return PatternMatrix(self._entries[:, j:j + 1])

    def row_strings(self):
        """Rows rendered as token strings, e.g. ``"* 0 ?"``."""
        return [" ".join(_SYMBOL_TO_TOKEN[Symbol(int(v))] for v in row)
                for row in self._entries]

    def __str__(self):
        return format_pattern(self)

    def __repr__(self):
        body = "; ".join(self.row_strings())
        return f"PatternMatrix({self.rows}x{self.cols}: {body})"


def pattern_add(m: PatternMatrix, n: PatternMatrix) -> PatternMatrix:
    """Entrywise symbol addition of two equally sized patterns."""
    if m.shape != n.shape:
        raise ValueError(
            f"pattern addition needs equal shapes, got {m.shape} and {n.shape}")
    return PatternMatrix(_ADD_TABLE[m.to_array(), n.to_array()])


def pattern_mul(m: PatternMatrix, n: PatternMatrix) -> PatternMatrix:
    """Pattern matrix product.

    Entry (i, j) is the symbol sum over k of ``m[i, k] * n[k, j]``; the
    result's class covers every numeric product of class members.
    """
    if m.cols != n.rows:
        raise ValueError(
            f"pattern product needs inner dimensions to agree, "
            f"got {m.shape} @ {n.shape}")
    a, b = m.to_array(), n.to_array()
    out = np.zeros((m.rows, n.cols), dtype=np.int8)
    for i in range(m.rows):
        for j in range(n.cols):
            acc = np.int8(0)
            for k in range(m.cols):
                acc = _ADD_TABLE[acc, _MUL_TABLE[a[i, k], b[k, j]]]
            out[i, j] = acc
    return PatternMatrix(out)


def pattern_power(m: PatternMatrix, k: int) -> PatternMatrix:
    """The k-th pattern power; the zeroth power is the identity pattern."""
    if m.rows != m.cols:
        raise ValueError(f"pattern power needs a square pattern, got {m.shape}")
    if k < 0:
        raise ValueError("pattern power exponent must be nonnegative")
    result = PatternMatrix.identity(m.rows)
    for _ in range(k):
        result = pattern_mul(result, m)
    return result


def pattern_transpose(m: PatternMatrix) -> PatternMatrix:
    """Transpose of a pattern matrix."""
    return PatternMatrix(m.to_array().T)


def is_zero_pattern(m: PatternMatrix) -> bool:
    """True when every entry is ZERO."""
    return not m.to_array().any()


def is_member(matrix, pattern: PatternMatrix, zero_tol: float = 0.0) -> bool:
    """Check whether a real matrix belongs to the pattern's class.

    ZERO entries must satisfy ``|value| <= zero_tol`` and STAR entries
    ``|value| > zero_tol``; QUESTION entries are unconstrained.  The
    default tolerance is exact zero because class membership is a
    syntactic property of user-supplied data, not of computed output.
    """
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    arr = np.asarray(matrix, dtype=float)
    if arr.shape != pattern.shape:
        raise ValueError(
            f"matrix shape {arr.shape} does not match pattern {pattern.shape}")
    mag = np.abs(arr)
    sym = pattern.to_array()
    if (mag[sym == ZERO] > zero_tol).any():
        return False
    if (mag[sym == STAR] <= zero_tol).any():
        return False
    return True


def parse_pattern_blocks(text: str) -> list[PatternMatrix]:
    """Parse whitespace-separated pattern blocks.

    Each block is a run of non-blank lines, one row per line, tokens
    from ``{0, *, ?}`` separated by whitespace; a blank line ends the
    block.  Raises :class:`PatternFormatError` with the offending line
    and column on malformed input.
    """
    blocks = []
    current: list[list[Symbol]] = []
    start_line = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if current:
                blocks.append(_finish_block(current, start_line))
                current = []
            continue
        if not current:
            start_line = lineno
        current.append(_parse_row(line, lineno))
    if current:
        blocks.append(_finish_block(current, start_line))
    return blocks


def parse_pattern(text: str) -> PatternMatrix:
    """Parse text containing exactly one pattern block."""
    blocks = parse_pattern_blocks(text)
    if len(blocks) != 1:
        raise PatternFormatError(
            f"expected exactly one pattern block, found {len(blocks)}", 1)
    return blocks[0]


def _parse_row(line, lineno):
    row = []
    pos = 0
    for token in line.split():
        col = line.index(token, pos) + 1
        pos = col - 1 + len(token)
        symbol = _TOKEN_TO_SYMBOL.get(token)
        if symbol is None:
            raise PatternFormatError(
                f"invalid pattern token {token!r} (expected 0, * or ?)",
                lineno, col)
        row.append(symbol)
    return row


def _finish_block(rows, start_line):
    width = len(rows[0])
    for offset, row in enumerate(rows):
        if len(row) != width:
            raise PatternFormatError(
                f"ragged pattern block: row has {len(row)} entries, "
                f"expected {width}", start_line + offset)
    return PatternMatrix(np.array(rows, dtype=np.int8))


def format_pattern(m: PatternMatrix) -> str:
    """Render a pattern in the text format parsed by :func:`parse_pattern`.

    Tokens are single-space separated and every row ends with a newline,
    so ``parse_pattern(format_pattern(m)) == m`` byte-for-byte.
    """
    return "".join(row + "\n" for row in m.row_strings())
