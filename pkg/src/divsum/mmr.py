"""Maximal Marginal Relevance selection over embedded candidate sentences.

Relevance and redundancy are both cosine similarities that are first
divided by their maximum and then standardized (population standard
deviation) and shifted by 0.5:

* ``sim1``: candidate vs. document, normalized over all candidates;
* ``sim2``: candidate ``j`` vs. candidate ``i``, normalized over the other
  candidates of ``i``.

Degenerate statistics are pinned: a non-positive maximum turns every
normalized cosine into 0, and a zero spread turns every score into 0.5.
Each round picks the unselected candidate maximizing
``beta * sim1[i] - (1 - beta) * max(sim2[i, j] for j selected)``; ties go
to the lower index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .embed import cosine
from .textproc import TokenSeq

__all__ = [
    "Candidate",
    "MMRConfig",
    "ncos_doc",
    "sim1",
    "sim2",
    "sim2_matrix",
    "mmr_scores",
    "mmr_select",
]

# Spreads at or below this are treated as zero.
STD_EPS = 1e-12
# Objective values this close count as tied; rounding must not decide ties.
TIE_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class Candidate:
    index: int
    text: str
    tokens: TokenSeq
    vector: np.ndarray


@dataclass(frozen=True)
class MMRConfig:
    n: int = 3
    beta: float = 0.35

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")


def _max_normalize(cosines: np.ndarray) -> np.ndarray:
    top = cosines.max()
    if not top > 0:
        return np.zeros_like(cosines)
    return cosines / top


def _standardize(values: np.ndarray) -> np.ndarray:
    std = values.std()
    if std <= STD_EPS:
        return np.full_like(values, 0.5)
    return 0.5 + (values - values.mean()) / std


def _vectors(candidates) -> list:
    if len(candidates) == 0:
        raise ValueError("empty candidate set")
    return [c.vector if isinstance(c, Candidate) else c for c in candidates]


def ncos_doc(doc, candidates) -> np.ndarray:
    """Cosine to the document divided by the best candidate's cosine."""
    vecs = _vectors(candidates)
    return _max_normalize(np.array([cosine(doc, v) for v in vecs]))


def sim1(doc, candidates) -> np.ndarray:
    return _standardize(ncos_doc(doc, candidates))


def sim2_matrix(candidates) -> np.ndarray:
    """``out[i, j]`` is ``sim2(C_j, C_i)``; the diagonal is NaN.

    Row ``i`` is max-normalized and standardized over the candidates other
    than ``i``.
    """
    vecs = _vectors(candidates)
    n = len(vecs)
    if n < 2:
        raise ValueError("sim2 needs at least 2 candidates")
    cos = np.array([[cosine(a, b) for b in vecs] for a in vecs])
    out = np.full((n, n), np.nan)
    for i in range(n):
        others = np.arange(n) != i
        out[i, others] = _standardize(_max_normalize(cos[i, others]))
    return out


def sim2(i: int, j: int, candidates) -> float:
    """Redundancy of candidate ``j`` with respect to candidate ``i``."""
    if i == j:
        raise ValueError("sim2 is undefined for i == j")
    return float(sim2_matrix(candidates)[i, j])


def mmr_scores(relevance: np.ndarray, redundancy: Optional[np.ndarray], selected: Sequence[int], beta: float) -> np.ndarray:
    """Objective of every candidate given the already selected ones.

    The redundancy penalty over an empty selection is 0.
    """
    if not selected:
        return beta * relevance
    penalty = redundancy[:, list(selected)].max(axis=1)
    return beta * relevance - (1.0 - beta) * penalty


def mmr_select(doc, candidates: Sequence[Candidate], config: MMRConfig = MMRConfig()) -> list[Candidate]:
    """Greedily pick ``min(config.n, len(candidates))`` candidates.

    Similarity statistics are computed once over the whole candidate set.
    Ties (objectives within ``TIE_EPS``) go to the candidate that comes
    first.
    """
    if len(candidates) == 0:
        raise ValueError("empty candidate set")
    relevance = sim1(doc, candidates)
    redundancy = sim2_matrix(candidates) if len(candidates) > 1 else None
    remaining = np.ones(len(candidates), dtype=bool)
    picked: list[int] = []
    for _ in range(min(config.n, len(candidates))):
        scores = mmr_scores(relevance, redundancy, picked, config.beta)
        scores = np.where(remaining, scores, -np.inf)
        best = int(np.flatnonzero(scores >= scores.max() - TIE_EPS)[0])
        picked.append(best)
        remaining[best] = False
    return [candidates[i] for i in picked]
