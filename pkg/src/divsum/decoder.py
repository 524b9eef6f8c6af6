"""Beam search and diverse beam search over any autoregressive scorer.

A model only has to expose a vocabulary, the ids of its START and STOP
tokens and a ``step(prefix)`` method returning one log-score per vocabulary
entry (``-inf`` forbids a token). Prefixes never contain START; finished
hypotheses end with STOP unless they were cut at ``max_tokens``.

Diverse beam search splits the beam into ``groups`` of equal width. Groups
advance in lockstep: at every time step group 0 takes a plain beam step,
then each later group ranks its extensions by log-score plus
``diversity_strength`` times a (non-positive) diversity term computed from
what the earlier groups picked at that same step. The diversity term only
drives selection; stored scores are pure model log-scores.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Protocol, Sequence

import numpy as np

__all__ = [
    "SequenceModel",
    "TableModel",
    "ModelSpecError",
    "load_model",
    "BeamHypothesis",
    "DecodeConfig",
    "beam_search",
    "diverse_beam_search",
    "hamming_diversity",
    "ngram_diversity",
    "sequence_log_score",
]

HAMMING = "hamming"
NGRAM = "ngram"


class SequenceModel(Protocol):
    vocabulary: Sequence[str]
    start_id: int
    stop_id: int

    def step(self, prefix: Sequence[int]) -> np.ndarray:
        """Log-scores over the vocabulary for the token following ``prefix``."""
        ...


class ModelSpecError(ValueError):
    """A toy model description violates the JSON schema."""


def _score_vector(raw, size: int, where: str) -> np.ndarray:
    if not isinstance(raw, list):
        raise ModelSpecError(f"{where}: expected a list of {size} scores")
    if len(raw) != size:
        raise ModelSpecError(f"{where}: expected {size} scores, got {len(raw)}")
    out = np.empty(size)
    for i, v in enumerate(raw):
        if v is None:
            out[i] = -np.inf
        elif isinstance(v, (int, float)) and not isinstance(v, bool):
            out[i] = float(v)
        else:
            raise ModelSpecError(f"{where}[{i}]: expected a number or null, got {v!r}")
    if np.isnan(out).any() or np.isposinf(out).any():
        raise ModelSpecError(f"{where}: scores must be finite or -inf")
    if not np.isfinite(out).any():
        raise ModelSpecError(f"{where}: at least one score must be finite")
    out.setflags(write=False)
    return out


class TableModel:
    """Table-driven model read from JSON.

    Two kinds are supported. ``positional`` holds one score vector per time
    step (the last one repeats). ``ngram`` maps contexts of up to ``order``
    previous tokens, space-joined and left-padded with START, to score
    vectors; lookups back off to shorter suffixes down to the empty
    context ``""``.
    """

    def __init__(self, vocabulary, start, stop, kind, tables=None, order=None, contexts=None):
        self.vocabulary = list(vocabulary)
        self.index = {tok: i for i, tok in enumerate(self.vocabulary)}
        self.start_id = self.index[start]
        self.stop_id = self.index[stop]
        self.kind = kind
        self.tables = tables
        self.order = order
        self.contexts = contexts

    @classmethod
    def from_dict(cls, desc: Mapping[str, Any]) -> "TableModel":
        if not isinstance(desc, Mapping):
            raise ModelSpecError("model: expected a JSON object")
        vocab = desc.get("vocabulary")
        if not isinstance(vocab, list) or not vocab:
            raise ModelSpecError("vocabulary: expected a non-empty list of strings")
        for i, tok in enumerate(vocab):
            if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
                raise ModelSpecError(f"vocabulary[{i}]: expected a non-empty string without whitespace")
        if len(set(vocab)) != len(vocab):
            raise ModelSpecError("vocabulary: duplicate tokens")
        start = desc.get("start", "<s>")
        stop = desc.get("stop", "</s>")
        for name, tok in (("start", start), ("stop", stop)):
            if tok not in vocab:
                raise ModelSpecError(f"{name}: token {tok!r} not in vocabulary")
        if start == stop:
            raise ModelSpecError("start and stop must differ")
        kind = desc.get("kind")
        size = len(vocab)
        if kind == "positional":
            raw = desc.get("tables")
            if not isinstance(raw, list) or not raw:
                raise ModelSpecError("tables: expected a non-empty list of score vectors")
            tables = [_score_vector(v, size, f"tables[{t}]") for t, v in enumerate(raw)]
            return cls(vocab, start, stop, kind, tables=tables)
        if kind == "ngram":
            order = desc.get("order")
            if not isinstance(order, int) or isinstance(order, bool) or order < 0:
                raise ModelSpecError("order: expected a non-negative integer")
            raw = desc.get("contexts")
            if not isinstance(raw, Mapping) or not raw:
                raise ModelSpecError("contexts: expected a non-empty object")
            contexts = {}
            for key, vec in raw.items():
                words = key.split()
                if len(words) > order:
                    raise ModelSpecError(f"contexts[{key!r}]: context longer than order {order}")
                for w in words:
                    if w not in vocab:
                        raise ModelSpecError(f"contexts[{key!r}]: unknown token {w!r}")
                contexts[" ".join(words)] = _score_vector(vec, size, f"contexts[{key!r}]")
            return cls(vocab, start, stop, kind, order=order, contexts=contexts)
        raise ModelSpecError(f"kind: expected 'positional' or 'ngram', got {kind!r}")

    def to_dict(self) -> dict:
        def enc(vec):
            return [None if math.isinf(v) else float(v) for v in vec]

        out = {
            "vocabulary": self.vocabulary,
            "start": self.vocabulary[self.start_id],
            "stop": self.vocabulary[self.stop_id],
            "kind": self.kind,
        }
        if self.kind == "positional":
            out["tables"] = [enc(v) for v in self.tables]
        else:
            out["order"] = self.order
            out["contexts"] = {k: enc(v) for k, v in self.contexts.items()}
        return out

    def step(self, prefix: Sequence[int]) -> np.ndarray:
        if self.kind == "positional":
            return self.tables[min(len(prefix), len(self.tables) - 1)]
        words = []
        if self.order:
            tail = [self.vocabulary[i] for i in prefix[max(0, len(prefix) - self.order):]]
            words = [self.vocabulary[self.start_id]] * (self.order - len(tail)) + tail
        for k in range(len(words), -1, -1):
            vec = self.contexts.get(" ".join(words[len(words) - k:]))
            if vec is not None:
                return vec
        raise KeyError(f"no context matches {' '.join(words)!r} and no default context")


def load_model(path) -> TableModel:
    with open(path, encoding="utf-8") as f:
        try:
            desc = json.load(f)
        except json.JSONDecodeError as err:
            raise ModelSpecError(f"invalid JSON: {err}") from None
    return TableModel.from_dict(desc)


def sequence_log_score(model: SequenceModel, tokens: Sequence[int]) -> float:
    """Sum of the model's step scores along ``tokens``."""
    total = 0.0
    for t, tok in enumerate(tokens):
        total += float(model.step(tokens[:t])[tok])
    return total


@dataclass(frozen=True)
class BeamHypothesis:
    tokens: tuple[int, ...]
    log_score: float
    group: int = 0
    finished: bool = False

    def score(self, length_norm: bool = False) -> float:
        if length_norm and self.tokens:
            return self.log_score / len(self.tokens)
        return self.log_score

    def words(self, model: SequenceModel, keep_stop: bool = False) -> list[str]:
        return [
            model.vocabulary[t]
            for t in self.tokens
            if keep_stop or t not in (model.stop_id, model.start_id)
        ]


@dataclass(frozen=True)
class DecodeConfig:
    """Search settings. Defaults: width 24 in 6 groups, Hamming diversity 0.3."""

    beam_width: int = 24
    groups: int = 6
    diversity_strength: float = 0.3
    diversity_kind: str = HAMMING
    ngram_order: int = 2
    min_tokens: int = 35
    max_tokens: int = 150
    length_norm: bool = False

    def __post_init__(self):
        if self.beam_width < 1 or self.groups < 1:
            raise ValueError("beam_width and groups must be >= 1")
        if self.beam_width % self.groups:
            raise ValueError(
                f"beam_width {self.beam_width} is not divisible by groups {self.groups}"
            )
        if not self.diversity_strength >= 0:
            raise ValueError("diversity_strength must be >= 0")
        if self.diversity_kind not in (HAMMING, NGRAM):
            raise ValueError(f"unknown diversity_kind {self.diversity_kind!r}")
        if self.ngram_order < 1:
            raise ValueError("ngram_order must be >= 1")
        if not 1 <= self.min_tokens <= self.max_tokens:
            raise ValueError("need 1 <= min_tokens <= max_tokens")

    @property
    def group_width(self) -> int:
        return self.beam_width // self.groups

    def replace(self, **changes) -> "DecodeConfig":
        return dataclasses.replace(self, **changes)


def hamming_diversity(prior_tokens: Sequence[int], num_prior_beams: int, vocab_size: int) -> np.ndarray:
    """Per-token penalty for repeating what earlier groups chose at this step.

    ``delta[v] = -count(v in prior_tokens) / num_prior_beams``; all zeros when
    there are no prior beams.
    """
    delta = np.zeros(vocab_size)
    if num_prior_beams <= 0 or len(prior_tokens) == 0:
        return delta
    np.subtract.at(delta, np.asarray(prior_tokens, dtype=np.int64), 1.0)
    return delta / num_prior_beams


def _ngram_presence(sequences: Sequence[Sequence[int]], n: int) -> dict[tuple, int]:
    counts: dict[tuple, int] = {}
    for seq in sequences:
        for gram in {tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)}:
            counts[gram] = counts.get(gram, 0) + 1
    return counts


def ngram_diversity(prior_sequences: Sequence[Sequence[int]], candidate: Sequence[int], n: int) -> float:
    """Penalty for ending ``candidate`` with an n-gram earlier groups produced.

    Counts the prior sequences containing the candidate's final n-gram at any
    position, divided by the number of prior sequences, so the result lies in
    ``[-1, 0]``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(candidate) < n or not prior_sequences:
        return 0.0
    gram = tuple(candidate[len(candidate) - n:])
    hits = _ngram_presence(prior_sequences, n).get(gram, 0)
    return -hits / len(prior_sequences)


def _step_group(model, live, width, config, bonus=None):
    """Expand ``live`` and keep the ``width`` best extensions.

    ``bonus`` maps a parent hypothesis to a per-token additive selection
    term, or is None. Ties go to the lower token id, then the lower parent.
    """
    stop, start = model.stop_id, model.start_id
    parents, tokens, raws, keys = [], [], [], []
    for p, hyp in enumerate(live):
        scores = np.array(model.step(hyp.tokens), dtype=float)
        scores[start] = -np.inf
        if len(hyp.tokens) < config.min_tokens:
            scores[stop] = -np.inf
        ok = np.flatnonzero(np.isfinite(scores))
        if ok.size == 0:
            continue
        raw = hyp.log_score + scores[ok]
        key = raw if bonus is None else raw + bonus(hyp)[ok]
        parents.append(np.full(ok.size, p))
        tokens.append(ok)
        raws.append(raw)
        keys.append(key)
    if not parents:
        return []
    parents = np.concatenate(parents)
    tokens = np.concatenate(tokens)
    raws = np.concatenate(raws)
    keys = np.concatenate(keys)
    order = np.lexsort((parents, tokens, -keys))[:width]
    out = []
    for k in order:
        hyp = live[parents[k]]
        seq = hyp.tokens + (int(tokens[k]),)
        done = tokens[k] == stop or len(seq) >= config.max_tokens
        out.append(BeamHypothesis(seq, float(raws[k]), hyp.group, bool(done)))
    return out


def _rank(finished, width, length_norm):
    ranked = sorted(finished, key=lambda h: (-h.score(length_norm), h.tokens))
    return ranked[:width]


def _diversity_bonus(config, vocab_size, chosen):
    """Selection term for a group given the hypotheses earlier groups chose."""
    lam = config.diversity_strength
    if not chosen or lam == 0:
        return None
    if config.diversity_kind == HAMMING:
        vec = lam * hamming_diversity([h.tokens[-1] for h in chosen], len(chosen), vocab_size)
        return lambda hyp: vec
    n = config.ngram_order
    presence = _ngram_presence([h.tokens for h in chosen], n)
    by_context: dict[tuple, np.ndarray] = {}
    for gram, hits in presence.items():
        vec = by_context.setdefault(gram[:-1], np.zeros(vocab_size))
        vec[gram[-1]] -= lam * hits / len(chosen)
    zero = np.zeros(vocab_size)

    def bonus(hyp):
        if len(hyp.tokens) < n - 1:
            return zero
        return by_context.get(hyp.tokens[len(hyp.tokens) - n + 1:], zero)

    return bonus


def diverse_beam_search(model: SequenceModel, config: DecodeConfig) -> list[list[BeamHypothesis]]:
    """Run diverse beam search and return one ranked hypothesis list per group.

    Each list holds at most ``config.group_width`` finished hypotheses, best
    first (by log-score, or per-token log-score with ``length_norm``).
    """
    G, width = config.groups, config.group_width
    vocab_size = len(model.vocabulary)
    live = [[BeamHypothesis((), 0.0, g)] for g in range(G)]
    finished: list[list[BeamHypothesis]] = [[] for _ in range(G)]
    for _ in range(config.max_tokens):
        chosen: list[BeamHypothesis] = []
        for g in range(G):
            if not live[g]:
                continue
            bonus = _diversity_bonus(config, vocab_size, chosen) if g else None
            selected = _step_group(model, live[g], width, config, bonus)
            if not selected:
                # Model offered no finite extension: retire the beam as is.
                finished[g].extend(dataclasses.replace(h, finished=True) for h in live[g])
                live[g] = []
                continue
            chosen.extend(selected)
            live[g] = [h for h in selected if not h.finished]
            finished[g].extend(h for h in selected if h.finished)
        if not any(live):
            break
    return [_rank(finished[g], width, config.length_norm) for g in range(G)]


def beam_search(model: SequenceModel, config: Optional[DecodeConfig] = None, **overrides) -> list[BeamHypothesis]:
    """Plain beam search of width ``config.beam_width``.

    ``config.groups`` must be 1. Returns up to ``beam_width`` finished
    hypotheses, best first.
    """
    config = config or DecodeConfig(groups=1)
    if overrides:
        config = config.replace(**overrides)
    if config.groups != 1:
        raise ValueError("beam_search needs groups == 1; use diverse_beam_search")
    live = [BeamHypothesis((), 0.0, 0)]
    finished: list[BeamHypothesis] = []
    for _ in range(config.max_tokens):
        selected = _step_group(model, live, config.beam_width, config)
        if not selected:
            finished.extend(dataclasses.replace(h, finished=True) for h in live)
            break
        live = [h for h in selected if not h.finished]
        finished.extend(h for h in selected if h.finished)
        if not live:
            break
    return _rank(finished, config.beam_width, config.length_norm)
