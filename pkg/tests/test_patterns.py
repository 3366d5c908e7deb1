import itertools

import numpy as np
import pytest

from structfdi import (PatternFormatError, PatternMatrix, Symbol,
                       SamplerConfig, format_pattern, is_member,
                       is_zero_pattern, parse_pattern, parse_pattern_blocks,
                       pattern_add, pattern_mul, pattern_power,
                       pattern_transpose, sample_member, symbol_add,
                       symbol_mul)

Z, S, Q = Symbol.ZERO, Symbol.STAR, Symbol.QUESTION


ADDITION = {
    (Z, Z): Z, (Z, S): S, (Z, Q): Q,
    (S, Z): S, (S, S): Q, (S, Q): Q,
    (Q, Z): Q, (Q, S): Q, (Q, Q): Q,
}

MULTIPLICATION = {
    (Z, Z): Z, (Z, S): Z, (Z, Q): Z,
    (S, Z): Z, (S, S): S, (S, Q): Q,
    (Q, Z): Z, (Q, S): Q, (Q, Q): Q,
}


def test_symbol_tables_exact():
    for (a, b), expected in ADDITION.items():
        assert symbol_add(a, b) is expected
    for (a, b), expected in MULTIPLICATION.items():
        assert symbol_mul(a, b) is expected


def test_symbol_algebra_exhaustive():
    symbols = (Z, S, Q)
    for a, b in itertools.product(symbols, repeat=2):
        assert symbol_add(a, b) == symbol_add(b, a)
        assert symbol_mul(a, b) == symbol_mul(b, a)
    for a, b, c in itertools.product(symbols, repeat=3):
        assert symbol_add(symbol_add(a, b), c) == symbol_add(a, symbol_add(b, c))
        assert symbol_mul(symbol_mul(a, b), c) == symbol_mul(a, symbol_mul(b, c))
    for a in symbols:
        assert symbol_add(Z, a) is a
        assert symbol_mul(Z, a) is Z


@pytest.fixture
def chain_patterns():
    a = parse_pattern("0 0 0\n* 0 0\n0 0 0\n")
    l = parse_pattern("* 0 0\n0 * 0\n0 * *\n")
    c = parse_pattern("? * 0\n0 * 0\n")
    return a, l, c


def test_pattern_mul_chain_columns(chain_patterns):
    _, l, c = chain_patterns
    assert pattern_mul(c, l.column(0)) == PatternMatrix([[Q], [Z]])
    assert pattern_mul(c, l.column(1)) == PatternMatrix([[S], [S]])


def test_pattern_mul_identity():
    m = parse_pattern("* ? 0\n0 * ?\n")
    assert pattern_mul(PatternMatrix.identity(2), m) == m
    assert pattern_mul(m, PatternMatrix.identity(3)) == m


def test_pattern_mul_dimension_mismatch():
    with pytest.raises(ValueError, match="inner dimensions"):
        pattern_mul(PatternMatrix.zeros(2, 3), PatternMatrix.zeros(2, 3))


def test_pattern_power_zero_is_identity():
    m = parse_pattern("? *\n* 0\n")
    assert pattern_power(m, 0) == PatternMatrix.identity(2)
    assert pattern_power(m, 1) == m


def test_pattern_power_chain_squares_to_zero(chain_patterns):
    a, _, _ = chain_patterns
    # the only nonzero entry sits at (2, 1); chaining it with itself dies
    assert is_zero_pattern(pattern_power(a, 2))
    assert is_zero_pattern(pattern_power(a, 3))


def test_pattern_power_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        pattern_power(PatternMatrix.zeros(2, 3), 2)
    with pytest.raises(ValueError, match="nonnegative"):
        pattern_power(PatternMatrix.zeros(2, 2), -1)


def test_pattern_power_addition_law():
    rng = np.random.default_rng(20240511)
    for _ in range(20):
        m = PatternMatrix(rng.integers(0, 3, size=(4, 4)))
        for j, k in ((0, 1), (1, 1), (1, 2), (2, 2)):
            combined = pattern_power(m, j + k)
            split = pattern_mul(pattern_power(m, j), pattern_power(m, k))
            assert combined == split


def test_pattern_add_cases():
    m = parse_pattern("* ?\n0 *\n")
    assert pattern_add(PatternMatrix.zeros(2, 2), m) == m
    all_star = PatternMatrix([[S, S], [S, S]])
    all_question = PatternMatrix([[Q, Q], [Q, Q]])
    assert pattern_add(all_star, all_star) == all_question
    assert pattern_add(parse_pattern("0 *\n"), parse_pattern("* ?\n")) == \
        parse_pattern("* ?\n")
    with pytest.raises(ValueError, match="equal shapes"):
        pattern_add(PatternMatrix.zeros(2, 2), PatternMatrix.zeros(2, 3))


def test_pattern_transpose():
    r = parse_pattern("* 0\n? ?\n* *\n")
    assert pattern_transpose(r) == parse_pattern("* ? *\n0 ? *\n")
    eye = PatternMatrix.identity(3)
    assert pattern_transpose(eye) == eye
    row = parse_pattern("0 * ?\n")
    col = pattern_transpose(row)
    assert col.shape == (3, 1)
    assert pattern_transpose(col) == row


def test_transpose_involution_random():
    rng = np.random.default_rng(7)
    for _ in range(10):
        m = PatternMatrix(rng.integers(0, 3, size=(3, 5)))
        assert pattern_transpose(pattern_transpose(m)) == m


def test_is_member():
    r = parse_pattern("* ?\n* *\n")
    assert is_member([[1, 1], [1, 1]], r)
    assert is_member(np.zeros((2, 2)), PatternMatrix.zeros(2, 2))
    assert not is_member(np.zeros((2, 2)), PatternMatrix([[S, S], [S, S]]))
    assert not is_member([[1, 1], [0, 1]], r)  # starred entry at (2,1) is zero
    assert is_member([[1, 0], [1, 1]], r)      # ? accepts zero
    with pytest.raises(ValueError, match="does not match"):
        is_member(np.zeros((2, 3)), r)
    with pytest.raises(ValueError, match="nonnegative"):
        is_member(np.zeros((2, 2)), r, zero_tol=-1.0)


def test_is_member_tolerance():
    pat = parse_pattern("0 *\n")
    assert not is_member([[1e-6, 1.0]], pat)
    assert is_member([[1e-6, 1.0]], pat, zero_tol=1e-5)
    assert not is_member([[0.0, 1e-6]], pat, zero_tol=1e-5)


def test_is_zero_pattern(chain_patterns):
    a, l, c = chain_patterns
    assert is_zero_pattern(PatternMatrix.zeros(3, 2))
    assert not is_zero_pattern(pattern_mul(c, l.column(1)))
    # channel 3 never reaches the output at any power
    lead = c
    for _ in range(4):
        assert is_zero_pattern(pattern_mul(lead, l.column(2)))
        lead = pattern_mul(lead, a)


def test_product_membership_compatibility():
    # numeric products of class members must land in the product class
    rng = np.random.default_rng(99)
    for trial in range(25):
        m_pat = PatternMatrix(rng.integers(0, 3, size=(3, 4)))
        n_pat = PatternMatrix(rng.integers(0, 3, size=(4, 2)))
        cfg = SamplerConfig(seed=trial)
        m = sample_member(m_pat, cfg, index=0)
        n = sample_member(n_pat, cfg, index=1)
        assert is_member(m @ n, pattern_mul(m_pat, n_pat))


def test_entries_are_immutable():
    m = parse_pattern("* 0\n")
    with pytest.raises(ValueError):
        m.to_array()[0, 0] = 2


def test_parse_format_round_trip():
    text = "* 0 ?\n0 * *\n"
    m = parse_pattern(text)
    assert format_pattern(m) == text
    assert parse_pattern(format_pattern(m)) == m


def test_parse_blocks():
    blocks = parse_pattern_blocks("* 0\n\n? ?\n0 *\n\n")
    assert len(blocks) == 2
    assert blocks[0].shape == (1, 2)
    assert blocks[1].shape == (2, 2)


def test_parse_errors_carry_position():
    with pytest.raises(PatternFormatError) as err:
        parse_pattern("* 0\n0 x\n")
    assert err.value.line == 2
    assert err.value.column == 3
    with pytest.raises(PatternFormatError, match="ragged"):
        parse_pattern("* 0\n0\n")
    with pytest.raises(PatternFormatError, match="exactly one"):
        parse_pattern("*\n\n0\n")


def test_constructor_rejects_bad_entries():
    with pytest.raises(ValueError):
        PatternMatrix([[0, 3]])
    with pytest.raises(ValueError):
        PatternMatrix([1, 2])
