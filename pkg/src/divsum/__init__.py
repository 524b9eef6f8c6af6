"""Extractiveness metrics, diverse beam search and MMR merging of summaries."""

from .decoder import (
    BeamHypothesis,
    DecodeConfig,
    ModelSpecError,
    SequenceModel,
    TableModel,
    beam_search,
    diverse_beam_search,
    hamming_diversity,
    load_model,
    ngram_diversity,
    sequence_log_score,
)
from .embed import (
    EmbeddingTable,
    HashedEmbedder,
    cosine,
    embed_document,
    embed_sentence,
    hashed_fallback_embedder,
    load_embeddings,
)
from .extractiveness import (
    CommonSpan,
    ExtractivenessReport,
    extraction_penalty,
    extraction_score,
    find_acs,
    longest_common_span,
    plagiarism_score,
)
from .mmr import Candidate, MMRConfig, mmr_select, ncos_doc, sim1, sim2, sim2_matrix
from .pipeline import MergeResult, decode_and_merge, merge_diverse_summaries
from .rouge import RougeScores, Score, rouge_l, rouge_n, rouge_scores
from .textproc import SentenceList, TokenSeq, detokenize, split_sentences, tokenize

__version__ = "0.1.0"
