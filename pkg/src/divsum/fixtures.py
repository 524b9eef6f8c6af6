"""Synthetic "copying" documents and models for end-to-end experiments.

Each fixture is a document of pseudo-word sentences plus an order-2 table
model that, left to itself, copies the document's first sentences verbatim
and then stops. At about half of the word positions the model also offers
substitutes: two words borrowed from a later part of the document and one
rare novel word, each a little less likely than the copied word. Plain beam
search therefore returns the verbatim lead, while diversity pressure
between groups pushes later groups onto the substitute branches.
"""

from __future__ import annotations

import math

import numpy as np

from .decoder import TableModel
from .textproc import detokenize

__all__ = ["make_copying_fixture", "copying_corpus", "fixture_model", "START", "STOP"]

START, STOP = "<s>", "</s>"
_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "pl", "gr"]
_VOWELS = ["a", "e", "i", "o", "u", "ai", "ou"]


def _pseudo_words(rng, count, taken):
    out = []
    while len(out) < count:
        syllables = rng.integers(2, 4)
        word = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) for _ in range(syllables))
        if word not in taken:
            taken.add(word)
            out.append(word)
    return out


def make_copying_fixture(
    seed: int,
    num_sentences: int = 7,
    lead_sentences: int = 3,
    sentence_length: tuple[int, int] = (12, 16),
    substitution_rate: float = 0.35,
) -> dict:
    """Build one fixture record ``{"id", "document", "lead", "model"}``.

    ``model`` is the JSON-ready table model description; ``lead`` is the
    text plain beam search is expected to reproduce.
    """
    rng = np.random.default_rng(seed)
    taken: set[str] = set()
    lengths = rng.integers(sentence_length[0], sentence_length[1] + 1, size=num_sentences)
    sentences = [_pseudo_words(rng, int(n), taken) for n in lengths]
    doc_tokens = [tok for sent in sentences for tok in sent + ["."]]
    borrowable = [w for sent in sentences[lead_sentences:] for w in sent]

    # The copy path: every word of every sentence, "." after each sentence.
    path = doc_tokens
    sentence_end = np.cumsum(lengths + 1) - 1  # index of each "." in path
    lead_end = int(sentence_end[lead_sentences - 1])

    substitutes: dict[int, list[tuple[str, float]]] = {}
    novel_pool = _pseudo_words(rng, len(path), taken)
    borrow_order = [str(w) for w in rng.permutation(borrowable)]
    predecessor = {b: a for a, b in zip(doc_tokens, doc_tokens[1:])}
    pos = 0
    for n in lengths[:lead_sentences]:
        for k in range(int(n)):
            t = pos + k
            # First and last word of a sentence are always copied.
            if 0 < k < n - 1 and rng.random() < substitution_rate:
                # A borrowed word right after its own document predecessor
                # would make two contexts coincide.
                prev_borrowed = {w for w, _ in substitutes.get(t - 1, [])}
                usable = [w for w in borrow_order if predecessor[w] not in prev_borrowed]
                if len(usable) < 2:
                    continue
                first, second = usable[-1], usable[-2]
                borrow_order.remove(first)
                borrow_order.remove(second)
                substitutes[t] = [
                    (first, float(rng.uniform(0.325, 0.335))),
                    (second, float(rng.uniform(0.31, 0.325))),
                    (novel_pool.pop(), float(rng.uniform(0.01, 0.02))),
                ]
        pos += int(n) + 1

    vocab = [START, STOP, "."] + sorted(set(doc_tokens) - {"."}) + sorted(
        {w for subs in substitutes.values() for w, _ in subs} - set(doc_tokens)
    )
    index = {w: i for i, w in enumerate(vocab)}
    content = [w for w in vocab if w not in (START, STOP, ".")]

    def distribution(t: int) -> list:
        """Scores for the token at path position ``t``."""
        probs = np.zeros(len(vocab))
        if t >= len(path):
            probs[index[STOP]] = 1.0
        elif t > 0 and path[t - 1] == "." and t - 1 >= lead_end:
            probs[index[STOP]] = 0.7
            probs[index[path[t]]] = 0.25
        else:
            main = 0.34 if t in substitutes else 0.9
            probs[index[path[t]]] = main
            for word, p in substitutes.get(t, []):
                probs[index[word]] = p
        residual = 1.0 - probs.sum()
        if residual > 1e-12:
            jumps = rng.choice(len(content), size=3, replace=False)
            for j in jumps:
                probs[index[content[j]]] += residual / 3
        return [math.log(p) if p > 0 else None for p in probs]

    def options(t: int) -> list[str]:
        return [path[t]] + [w for w, _ in substitutes.get(t, [])]

    contexts: dict[str, list] = {}
    uniform = [None, None] + [math.log(1.0 / (len(vocab) - 2))] * (len(vocab) - 2)
    contexts[""] = uniform
    contexts[START] = distribution(0)
    for t in range(len(path)):
        nxt = distribution(t + 1)
        for cur in options(t):
            for prev in options(t - 1) if t > 0 else [START]:
                key = f"{prev} {cur}"
                if key in contexts:
                    raise RuntimeError(f"seed {seed}: context {key!r} defined twice")
                contexts[key] = nxt
    model = {
        "vocabulary": vocab,
        "start": START,
        "stop": STOP,
        "kind": "ngram",
        "order": 2,
        "contexts": contexts,
    }
    return {
        "id": f"copy-{seed:03d}",
        "document": detokenize(doc_tokens),
        "lead": detokenize(path[: lead_end + 1]),
        "model": model,
    }


def copying_corpus(count: int = 10, first_seed: int = 0) -> list[dict]:
    return [make_copying_fixture(first_seed + i) for i in range(count)]


def fixture_model(record: dict) -> TableModel:
    return TableModel.from_dict(record["model"])
