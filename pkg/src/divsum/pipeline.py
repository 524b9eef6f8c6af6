"""Merge several diverse summaries into one by MMR sentence selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .decoder import DecodeConfig, SequenceModel, diverse_beam_search
from .embed import Embedder, HashedEmbedder, embed_document, embed_sentence
from .extractiveness import DEFAULT_MIN_SPAN, ExtractivenessReport, extraction_score
from .mmr import Candidate, MMRConfig, mmr_select
from .textproc import detokenize, split_sentences, tokenize

__all__ = ["MergeResult", "build_candidates", "merge_diverse_summaries", "decode_and_merge", "hypothesis_texts"]


@dataclass
class MergeResult:
    final_summary: str
    selected: list[Candidate]
    diverse_inputs: list[str]
    report: ExtractivenessReport
    num_candidates: int = 0

    def to_dict(self) -> dict:
        return {
            "final_summary": self.final_summary,
            "selected": [{"index": c.index, "sentence": c.text} for c in self.selected],
            "num_candidates": self.num_candidates,
            "diverse_inputs": list(self.diverse_inputs),
            "report": self.report.to_dict(),
        }


def build_candidates(summaries: Sequence[str], embedder: Embedder) -> list[Candidate]:
    """Split summaries into sentences, drop repeats, and embed the rest.

    Two sentences are the same if they tokenize identically; the first
    occurrence is kept. Indices follow first-occurrence order.
    """
    seen = set()
    out: list[Candidate] = []
    for summary in summaries:
        for sent in split_sentences(summary):
            if sent.tokens.tokens in seen:
                continue
            seen.add(sent.tokens.tokens)
            out.append(Candidate(len(out), sent.text, sent.tokens, embed_sentence(embedder, sent.tokens)))
    return out


def merge_diverse_summaries(
    document: str,
    diverse_summaries: Sequence[str],
    embedder: Embedder,
    mmr_config: MMRConfig = MMRConfig(),
    min_span_length: int = DEFAULT_MIN_SPAN,
) -> MergeResult:
    candidates = build_candidates(diverse_summaries, embedder)
    if not candidates:
        raise ValueError("all diverse summaries are empty")
    doc_vec = embed_document(embedder, split_sentences(document))
    selected = mmr_select(doc_vec, candidates, mmr_config)
    final = " ".join(c.text for c in selected)
    report = extraction_score(tokenize(final), tokenize(document), min_span_length)
    return MergeResult(final, selected, list(diverse_summaries), report, len(candidates))


def hypothesis_texts(model: SequenceModel, groups, all_hypotheses: bool = False) -> list[str]:
    """Detokenized summaries from ranked per-group hypothesis lists.

    By default only each group's best hypothesis is used.
    """
    texts = []
    for ranked in groups:
        for hyp in ranked if all_hypotheses else ranked[:1]:
            texts.append(detokenize(hyp.words(model)))
    return texts


def decode_and_merge(
    model: SequenceModel,
    document: str,
    decode_config: DecodeConfig = DecodeConfig(),
    embedder: Embedder | None = None,
    mmr_config: MMRConfig = MMRConfig(),
    all_hypotheses: bool = False,
    min_span_length: int = DEFAULT_MIN_SPAN,
) -> MergeResult:
    """Decode diverse summaries with ``model`` and merge them."""
    if embedder is None:
        embedder = HashedEmbedder()
    groups = diverse_beam_search(model, decode_config)
    texts = hypothesis_texts(model, groups, all_hypotheses)
    return merge_diverse_summaries(document, texts, embedder, mmr_config, min_span_length)
