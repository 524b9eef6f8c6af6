"""ROUGE-1, ROUGE-2 and ROUGE-L against a single reference.

No stemming and no stopword removal; tokens are compared after the
package's lowercasing tokenizer. ROUGE-L uses the longest common
*subsequence* as in the standard metric.
"""

from __future__ import annotations

import collections
from dataclasses import dataclass
from typing import NamedTuple

from .textproc import as_tokens, ngrams

__all__ = ["Score", "RougeScores", "rouge_n", "rouge_l", "lcs_length", "rouge_scores"]


class Score(NamedTuple):
    precision: float
    recall: float
    fmeasure: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _score(overlap: int, candidate_total: int, reference_total: int) -> Score:
    precision = overlap / candidate_total if candidate_total else 0.0
    recall = overlap / reference_total if reference_total else 0.0
    return Score(precision, recall, _f1(precision, recall))


def rouge_n(candidate, reference, n: int) -> Score:
    """Clipped n-gram overlap between ``candidate`` and ``reference``.

    Each candidate n-gram is credited at most as many times as it occurs in
    the reference.

    Raises:
        ValueError: if ``n < 1`` or the reference has fewer than ``n`` tokens.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    candidate, reference = as_tokens(candidate), as_tokens(reference)
    if len(reference) < n:
        raise ValueError(f"reference shorter than n={n}")
    cand = collections.Counter(ngrams(candidate.tokens, n))
    ref = collections.Counter(ngrams(reference.tokens, n))
    overlap = sum((cand & ref).values())
    return _score(overlap, sum(cand.values()), sum(ref.values()))


def lcs_length(a, b) -> int:
    """Length of the longest common subsequence, O(len(a) * len(b))."""
    if len(a) < len(b):
        a, b = b, a
    row = [0] * (len(b) + 1)
    for x in a:
        diag = 0
        for j, y in enumerate(b, 1):
            up = row[j]
            row[j] = diag + 1 if x == y else max(up, row[j - 1])
            diag = up
    return row[-1]


def rouge_l(candidate, reference) -> Score:
    candidate, reference = as_tokens(candidate), as_tokens(reference)
    if not len(candidate) or not len(reference):
        raise ValueError("ROUGE-L needs non-empty candidate and reference")
    lcs = lcs_length(candidate.tokens, reference.tokens)
    return _score(lcs, len(candidate), len(reference))


@dataclass(frozen=True)
class RougeScores:
    rouge1: Score
    rouge2: Score
    rougeL: Score

    @property
    def rouge1_f(self) -> float:
        return self.rouge1.fmeasure

    @property
    def rouge2_f(self) -> float:
        return self.rouge2.fmeasure

    @property
    def rougeL_f(self) -> float:
        return self.rougeL.fmeasure

    def to_dict(self) -> dict:
        return {name: getattr(self, name)._asdict() for name in ("rouge1", "rouge2", "rougeL")}


def rouge_scores(candidate, reference) -> RougeScores:
    return RougeScores(
        rouge1=rouge_n(candidate, reference, 1),
        rouge2=rouge_n(candidate, reference, 2),
        rougeL=rouge_l(candidate, reference),
    )
