import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from divsum.extractiveness import (
    CommonSpan,
    extraction_penalty,
    extraction_score,
    find_acs,
    longest_common_span,
    plagiarism_score,
)
from divsum.textproc import TokenSeq

from oracles import acs_greedy, longest_common_substring

tokens = st.lists(st.sampled_from("abcde"), max_size=20)


def seq(s):
    return TokenSeq(tuple(s.split()) if isinstance(s, str) else tuple(s))


class TestLongestCommonSpan:
    def test_identical(self):
        assert longest_common_span(seq("a b c"), seq("a b c")) == CommonSpan(0, 0, 3)

    def test_disjoint(self):
        assert longest_common_span(seq("x y"), seq("a b")) is None

    def test_tie_break_prefers_earliest_summary_then_document(self):
        # "a b" and "c d" both length 2; "a b" starts first in the summary,
        # and occurs twice in the document.
        span = longest_common_span(seq("a b z c d"), seq("c d q a b a b"))
        assert span == CommonSpan(0, 3, 2)

    def test_random_pairs_match_dp_oracle(self):
        rng = random.Random(1)
        for _ in range(200):
            a = [rng.choice("abcde") for _ in range(rng.randint(0, 20))]
            b = [rng.choice("abcde") for _ in range(rng.randint(0, 20))]
            length, i, j = longest_common_substring(a, b)
            span = longest_common_span(a, b)
            if length == 0:
                assert span is None
            else:
                assert span == CommonSpan(i, j, length)


class TestPlagiarismScore:
    def test_full_copy(self):
        doc = seq("the quick brown fox jumps over the lazy dog")
        assert plagiarism_score(seq("brown fox jumps"), doc) == 1.0

    def test_no_overlap(self):
        assert plagiarism_score(seq("x y z"), seq("a b c")) == 0.0

    def test_ten_tokens_four_shared(self):
        summary = seq("a b c d n1 n2 n3 n4 n5 n6")
        assert plagiarism_score(summary, seq("q a b c d r")) == pytest.approx(0.4)

    def test_empty_summary(self):
        with pytest.raises(ValueError, match="empty summary"):
            plagiarism_score(seq([]), seq("a b"))


class TestFindACS:
    def test_whole_copy_is_one_span(self):
        assert find_acs(seq("a b c d"), seq("a b c d"), 3) == [CommonSpan(0, 0, 4)]

    def test_two_spans_around_novel_words(self):
        doc = seq("d0 d1 d2 d3 d4 d5 d6 d7 d8 d9 d10 d11")
        span_a = "d1 d2 d3 d4 d5"
        span_b = "d8 d9 d10 d11"
        summary = seq(f"{span_a} x y z {span_b}")
        spans = find_acs(summary, doc, 3)
        assert spans == [CommonSpan(0, 1, 5), CommonSpan(8, 8, 4)]
        assert [tuple(s) for s in acs_greedy(summary.tokens, doc.tokens, 3)] == [(0, 1, 5), (8, 8, 4)]

    def test_bigram_overlaps_only(self):
        assert find_acs(seq("a b x c d y e f"), seq("a b q c d q e f"), 3) == []

    def test_document_positions_may_repeat(self):
        spans = find_acs(seq("a b c x a b c"), seq("a b c"), 3)
        assert spans == [CommonSpan(0, 0, 3), CommonSpan(4, 0, 3)]

    def test_rejects_bad_threshold(self):
        with pytest.raises(ValueError):
            find_acs(seq("a"), seq("a"), 0)

    def test_empty_summary(self):
        assert find_acs(seq([]), seq("a b c"), 1) == []

    @given(tokens, tokens, st.integers(1, 4))
    def test_spans_are_disjoint_and_verified(self, s, d, k):
        spans = find_acs(s, d, k)
        covered = set()
        for span in spans:
            assert span.length >= k
            assert s[span.summary_start:span.summary_end] == d[span.document_start:span.document_start + span.length]
            cells = set(range(span.summary_start, span.summary_end))
            assert not cells & covered
            covered |= cells


class TestPenalty:
    @pytest.mark.parametrize("p, expected", [(0.5, 0.2112955), (0.25, 0.0491143)])
    def test_values(self, p, expected):
        assert extraction_penalty(p) == pytest.approx(expected, abs=1e-6)

    def test_endpoints(self):
        assert extraction_penalty(0.0) == 0.0
        assert extraction_penalty(1.0) == 1.0

    @pytest.mark.parametrize("p", [-0.01, 1.01, math.nan])
    def test_out_of_range(self, p):
        with pytest.raises(ValueError):
            extraction_penalty(p)

    def test_monotone_and_convex(self):
        grid = np.linspace(0, 1, 1001)
        values = np.array([extraction_penalty(p) for p in grid])
        assert np.all(np.diff(values) > 0)
        assert np.all(np.diff(values, 2) > -1e-15)
        assert np.all(values <= grid + 1e-15)

    def test_second_derivative_matches_closed_form(self):
        h = 1e-4
        for p in np.linspace(0.1, 0.9, 9):
            numeric = (extraction_penalty(p + h) - 2 * extraction_penalty(p) + extraction_penalty(p - h)) / h**2
            exact = math.exp(p - 1) * (2 + p) + 2 / math.e
            assert numeric == pytest.approx(exact, rel=1e-5)


class TestExtractionScore:
    def test_full_copy_scores_one(self):
        doc = seq("w0 w1 w2 w3 w4 w5 w6 w7")
        report = extraction_score(seq("w2 w3 w4 w5"), doc)
        assert report.extraction_score == 1.0
        assert report.plagiarism_score == 1.0

    def test_novel_scores_zero(self):
        report = extraction_score(seq("n1 n2 n3"), seq("a b c"))
        assert report.extraction_score == 0.0
        assert report.spans == []

    def test_half_copy(self):
        doc = seq("a b c d e f g")
        report = extraction_score(seq("b c d e f n1 n2 n3 n4 n5"), doc)
        assert report.proportions == [0.5]
        assert report.extraction_score == pytest.approx(0.2112955, abs=1e-6)

    def test_empty_summary(self):
        with pytest.raises(ValueError, match="empty summary"):
            extraction_score(seq([]), seq("a"))

    def test_raw_text_is_tokenized(self):
        report = extraction_score("The Cat sat.", "the cat sat. on the mat")
        assert report.extraction_score == 1.0

    @given(st.lists(st.sampled_from("abcde"), min_size=1, max_size=20), tokens)
    def test_bounds_and_consistency(self, s, d):
        report = extraction_score(s, d)
        assert 0.0 <= report.extraction_score <= sum(report.proportions) + 1e-12 <= 1.0 + 1e-12
        assert 0.0 <= report.plagiarism_score <= 1.0
        assert report.plagiarism_score >= max(report.proportions, default=0.0)
        for span, p in zip(report.spans, report.proportions):
            assert p == span.length / len(s)
        assert extraction_score(s, d) == report
