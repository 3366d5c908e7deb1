import numpy as np
import pytest

from structfdi import (PatternFormatError, PatternMatrix, SamplerConfig,
                       StructuredTriple, StructuredVerdict, analyze_structured,
                       fault_index, format_structured_system, is_zero_pattern,
                       parse_pattern, parse_structured_system, pattern_mul,
                       sample_triple, signature_pattern, star_column_check,
                       structural_index)


def test_structural_index_missing_channel(missing_index_triple):
    assert structural_index(missing_index_triple, 1) == 1
    assert structural_index(missing_index_triple, 2) == 1
    assert structural_index(missing_index_triple, 3) is None


def test_structural_index_delayed_channels(colorable_triple):
    assert structural_index(colorable_triple, 1) == 2
    assert structural_index(colorable_triple, 2) == 3


def test_structural_index_range(gap_triple):
    with pytest.raises(ValueError, match="out of range"):
        structural_index(gap_triple, 0)
    with pytest.raises(ValueError, match="out of range"):
        structural_index(gap_triple, 3)


def test_signature_pattern_values(gap_triple, colorable_triple):
    assert signature_pattern(gap_triple) == parse_pattern("* ?\n* *\n")
    assert signature_pattern(colorable_triple) == parse_pattern("* 0\n? ?\n* *\n")


def test_signature_pattern_single_channel():
    sys_pat = StructuredTriple(
        A_pat=PatternMatrix.zeros(2, 2),
        L_pat=parse_pattern("*\n0\n"),
        C_pat=parse_pattern("* 0\n"),
    )
    assert signature_pattern(sys_pat) == pattern_mul(sys_pat.C_pat,
                                                     sys_pat.L_pat)


def test_signature_pattern_missing_raises(missing_index_triple):
    with pytest.raises(ValueError, match=r"channels \[3\]"):
        signature_pattern(missing_index_triple)


def test_star_column_check(gap_triple, colorable_triple, missing_index_triple):
    assert star_column_check(signature_pattern(colorable_triple)) == [True, True]
    assert star_column_check(signature_pattern(gap_triple)) == [True, True]
    first_response = pattern_mul(missing_index_triple.C_pat,
                                 missing_index_triple.L_pat.column(0))
    assert star_column_check(first_response) == [False]
    assert star_column_check(parse_pattern("?\n?\n")) == [False]


def test_analyze_missing_index(missing_index_triple):
    report = analyze_structured(missing_index_triple)
    assert report.verdict is StructuredVerdict.NOT_SOLVABLE
    assert report.indices == (1, 1, None)
    assert report.reasons == ("MissingIndex3",)
    assert report.signature is None
    assert report.colorability_trace is None


def test_analyze_gap(gap_triple):
    report = analyze_structured(gap_triple)
    assert report.verdict is StructuredVerdict.INCONCLUSIVE
    assert report.reasons == ("SufficiencyGap",)
    assert report.signature == parse_pattern("* ?\n* *\n")
    assert report.colorability_trace is not None
    assert report.colorability_trace.black == frozenset()


def test_analyze_colorable(colorable_triple):
    report = analyze_structured(colorable_triple)
    assert report.verdict is StructuredVerdict.SOLVABLE
    assert report.indices == (2, 3)
    assert report.reasons == ("ColorableRankCertificate",)
    forced = [step.forced for step in report.colorability_trace.derivation]
    assert forced == [1, 2]


def test_analyze_more_channels_than_outputs():
    # three channels through two outputs: the rank certificate cannot
    # hold, but missing necessity means the verdict stays inconclusive
    sys_pat = StructuredTriple(
        A_pat=PatternMatrix.zeros(2, 2),
        L_pat=parse_pattern("* * 0\n0 * *\n"),
        C_pat=parse_pattern("* 0\n0 *\n"),
    )
    report = analyze_structured(sys_pat)
    assert report.verdict is StructuredVerdict.INCONCLUSIVE
    assert report.colorability_trace is None


def test_report_jsonable(colorable_triple):
    body = analyze_structured(colorable_triple).to_jsonable()
    assert body["eta"] == [2, 3]
    assert body["R"] == ["* 0", "? ?", "* *"]
    assert body["verdict"] == "Solvable"
    assert body["reasons"] == ["ColorableRankCertificate"]
    assert body["star_columns"] == [True, True]
    assert body["coloring_trace"][0] == {"round": 1, "forcing_node": 1,
                                         "forced_node": 1}
    assert body["monte_carlo"] is None


def test_file_round_trip(colorable_triple):
    text = format_structured_system(colorable_triple)
    parsed = parse_structured_system(text)
    assert parsed == colorable_triple


def test_parse_structured_errors():
    with pytest.raises(PatternFormatError, match="unknown block label"):
        parse_structured_system("A:\n0\n\nB:\n0\n")
    with pytest.raises(PatternFormatError, match="missing blocks"):
        parse_structured_system("A:\n0 0\n0 0\n")
    with pytest.raises(PatternFormatError, match="before any block"):
        parse_structured_system("0 0\nA:\n0 0\n")
    with pytest.raises(PatternFormatError, match="duplicate"):
        parse_structured_system("A:\n0\nA:\n0\n")
    err = None
    try:
        parse_structured_system("A:\n0 x\n")
    except PatternFormatError as exc:
        err = exc
    assert err is not None and err.line == 2 and err.column == 3


def test_parse_structured_dimension_error_names_block():
    text = "A:\n0 0\n0 0\n\nL:\n*\n0\n*\n\nC:\n* 0\n"
    with pytest.raises(ValueError, match="L pattern must have 2 rows"):
        parse_structured_system(text)


def test_eta_search_never_needs_more_than_n():
    # extend the power scan to 2n on random patterns; a first nonzero
    # response must never show up in the second half
    rng = np.random.default_rng(606)
    for _ in range(30):
        n = int(rng.integers(2, 6))
        q = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        sys_pat = StructuredTriple(
            A_pat=PatternMatrix(rng.integers(0, 3, size=(n, n))),
            L_pat=PatternMatrix(rng.integers(0, 3, size=(n, q))),
            C_pat=PatternMatrix(rng.integers(0, 3, size=(p, n))),
        )
        for i in range(1, q + 1):
            column = sys_pat.fault_column(i)
            lead = sys_pat.C_pat
            first = None
            for j in range(2 * n):
                if not is_zero_pattern(pattern_mul(lead, column)):
                    first = j + 1
                    break
                lead = pattern_mul(lead, sys_pat.A_pat)
            assert first is None or first <= n
            assert first == structural_index(sys_pat, i)


def first_response_star(sys_pat, i, eta):
    """Whether the pattern response at the structural index has a star."""
    from structfdi import pattern_power

    lead = pattern_mul(sys_pat.C_pat, pattern_power(sys_pat.A_pat, eta - 1))
    return star_column_check(pattern_mul(lead, sys_pat.fault_column(i)))[0]


def test_member_indices_bounded_by_structural(missing_index_triple,
                                              gap_triple, colorable_triple):
    # class-level index laws, checked on sampled members: members never
    # respond earlier than the structure allows, a starred first
    # response pins them exactly, and structurally silent channels stay
    # silent in every member
    cfg = SamplerConfig(seed=77)
    for sys_pat in (missing_index_triple, gap_triple, colorable_triple):
        etas = [structural_index(sys_pat, i) for i in range(1, sys_pat.q + 1)]
        stars = [None if eta is None else first_response_star(sys_pat, i, eta)
                 for i, eta in enumerate(etas, start=1)]
        for k in range(40):
            member = sample_triple(sys_pat, cfg, index=k)
            for i, eta in enumerate(etas, start=1):
                d = fault_index(member, i)
                if eta is None:
                    assert d is None
                    continue
                if stars[i - 1]:
                    assert d == eta
                elif d is not None:
                    assert d >= eta
