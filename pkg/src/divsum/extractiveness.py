"""How much of a summary is copied verbatim from its source document.

Two scores are provided:

* ``plagiarism_score``: length of the longest contiguous token span shared
  with the document, divided by the summary length.
* ``extraction_score``: every long, summary-non-overlapping shared span of
  proportion ``p`` contributes ``p * (exp(p - 1) - (1 - p) / e)``. A summary
  that is one copied span scores 1, a fully novel one scores 0, and several
  short copies cost less than one long copy of the same total size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .textproc import TokenSeq, as_tokens

__all__ = [
    "CommonSpan",
    "ExtractivenessReport",
    "DEFAULT_MIN_SPAN",
    "longest_common_span",
    "plagiarism_score",
    "find_acs",
    "extraction_penalty",
    "extraction_score",
]

DEFAULT_MIN_SPAN = 3


@dataclass(frozen=True, order=True)
class CommonSpan:
    summary_start: int
    document_start: int
    length: int

    @property
    def summary_end(self) -> int:
        return self.summary_start + self.length

    def to_dict(self) -> dict:
        return {
            "summary_start": self.summary_start,
            "document_start": self.document_start,
            "length": self.length,
        }


@dataclass
class ExtractivenessReport:
    plagiarism_score: float
    extraction_score: float
    spans: list[CommonSpan] = field(default_factory=list)
    proportions: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "plagiarism_score": self.plagiarism_score,
            "extraction_score": self.extraction_score,
            "spans": [s.to_dict() for s in self.spans],
            "proportions": list(self.proportions),
        }


def _encode(summary: TokenSeq, document: TokenSeq) -> tuple[np.ndarray, np.ndarray]:
    vocab: dict[str, int] = {}
    s = np.array([vocab.setdefault(t, len(vocab)) for t in summary], dtype=np.int64)
    d = np.array([vocab.setdefault(t, len(vocab)) for t in document], dtype=np.int64)
    return s, d


def _longest_run(s: np.ndarray, d: np.ndarray, blocked: Optional[np.ndarray] = None):
    """Longest common substring by diagonal run lengths.

    ``blocked`` marks summary positions that may not take part in a match.
    Returns ``(length, summary_start, document_start)``; length 0 if none.
    """
    n, m = len(s), len(d)
    if n == 0 or m == 0:
        return 0, 0, 0
    best = (0, 0, 0)
    prev = np.zeros(m, dtype=np.int64)
    for i in range(n):
        if blocked is not None and blocked[i]:
            prev = np.zeros(m, dtype=np.int64)
            continue
        eq = d == s[i]
        cur = np.zeros(m, dtype=np.int64)
        cur[0] = eq[0]
        cur[1:] = (prev[:-1] + 1) * eq[1:]
        top = int(cur.max())
        if top > 0:
            # Equal-length runs on one row share their summary start; the
            # first column is the smallest document start. Later rows only
            # win on strictly longer runs.
            if top > best[0]:
                j = int(np.argmax(cur == top))
                best = (top, i - top + 1, j - top + 1)
        prev = cur
    return best


def longest_common_span(summary, document) -> Optional[CommonSpan]:
    """Longest contiguous token span shared by ``summary`` and ``document``.

    Ties go to the smallest summary start, then the smallest document start.
    Returns ``None`` when the two share no token.
    """
    s, d = _encode(as_tokens(summary), as_tokens(document))
    length, i, j = _longest_run(s, d)
    if length == 0:
        return None
    return CommonSpan(i, j, length)


def plagiarism_score(summary, document) -> float:
    summary, document = as_tokens(summary), as_tokens(document)
    if len(summary) == 0:
        raise ValueError("empty summary")
    span = longest_common_span(summary, document)
    return 0.0 if span is None else span.length / len(summary)


def find_acs(summary, document, min_span_length: int = DEFAULT_MIN_SPAN) -> list[CommonSpan]:
    """All long, summary-non-overlapping common spans, found greedily.

    Repeatedly takes the longest span between the still-uncovered summary
    positions and the whole document (document positions may be reused),
    until the longest remaining one is shorter than ``min_span_length``.
    Spans are returned in extraction order.
    """
    if min_span_length < 1:
        raise ValueError("min_span_length must be >= 1")
    summary, document = as_tokens(summary), as_tokens(document)
    s, d = _encode(summary, document)
    blocked = np.zeros(len(s), dtype=bool)
    spans = []
    while True:
        length, i, j = _longest_run(s, d, blocked)
        if length < min_span_length:
            return spans
        spans.append(CommonSpan(i, j, length))
        blocked[i:i + length] = True


def extraction_penalty(p: float) -> float:
    """Cost of one copied span covering proportion ``p`` of the summary."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"proportion must lie in [0, 1], got {p!r}")
    return p * (math.exp(p - 1.0) - (1.0 - p) / math.e)


def extraction_score(summary, document, min_span_length: int = DEFAULT_MIN_SPAN) -> ExtractivenessReport:
    """Score ``summary`` against ``document`` and return the full report."""
    summary, document = as_tokens(summary), as_tokens(document)
    if len(summary) == 0:
        raise ValueError("empty summary")
    spans = find_acs(summary, document, min_span_length)
    n = len(summary)
    proportions = [span.length / n for span in spans]
    score = math.fsum(extraction_penalty(p) for p in proportions)
    return ExtractivenessReport(
        plagiarism_score=plagiarism_score(summary, document),
        extraction_score=min(score, 1.0),
        spans=spans,
        proportions=proportions,
    )
