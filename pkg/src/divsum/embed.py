"""Sentence and document embeddings by averaging word and bigram vectors.

Vectors come either from a pretrained text file (``token v1 ... vd`` per
line, bigrams keyed ``tokenA_tokenB``) or from :class:`HashedEmbedder`,
which derives a fixed random unit vector from each token and needs no
external data.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Optional, Protocol

import numpy as np

from .textproc import SentenceList, TokenSeq, as_tokens

__all__ = [
    "Embedder",
    "EmbeddingTable",
    "EmbeddingFormatError",
    "HashedEmbedder",
    "hashed_fallback_embedder",
    "load_embeddings",
    "embed_sentence",
    "embed_document",
    "cosine",
]

BIGRAM_JOINER = "_"


class Embedder(Protocol):
    dimension: int

    def lookup(self, token: str) -> Optional[np.ndarray]:
        ...

    def lookup_bigram(self, first: str, second: str) -> Optional[np.ndarray]:
        ...


class EmbeddingFormatError(ValueError):
    pass


class EmbeddingTable:
    """Immutable token -> vector table."""

    def __init__(self, dimension: int, vectors: dict[str, np.ndarray]):
        self.dimension = int(dimension)
        self._vectors = {}
        for key, vec in vectors.items():
            arr = np.array(vec, dtype=float)
            if arr.shape != (self.dimension,):
                raise ValueError(f"{key!r}: expected {self.dimension} components, got {arr.size}")
            if not np.isfinite(arr).all():
                raise ValueError(f"{key!r}: non-finite component")
            arr.setflags(write=False)
            self._vectors[key] = arr

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, key) -> bool:
        return key in self._vectors

    def lookup(self, token: str) -> Optional[np.ndarray]:
        return self._vectors.get(token)

    def lookup_bigram(self, first: str, second: str) -> Optional[np.ndarray]:
        return self._vectors.get(first + BIGRAM_JOINER + second)

    def keys(self):
        return self._vectors.keys()

    @property
    def num_bigrams(self) -> int:
        return sum(1 for k in self._vectors if _is_bigram_key(k))


def _is_bigram_key(key: str) -> bool:
    a, sep, b = key.partition(BIGRAM_JOINER)
    return bool(sep and a and b)


def load_embeddings(path) -> EmbeddingTable:
    """Read a whitespace-separated text embeddings file.

    An optional first line ``count dimension`` is accepted; otherwise the
    dimension is taken from the first entry.

    Raises:
        EmbeddingFormatError: on a malformed line (the message names the line
            number), a component count that disagrees with the dimension, a
            repeated token, or a header whose count does not match.
    """
    vectors: dict[str, np.ndarray] = {}
    dimension = None
    expected_count = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            fields = line.split()
            if not fields:
                continue
            if lineno == 1 and len(fields) == 2 and all(x.isdigit() for x in fields):
                expected_count, dimension = int(fields[0]), int(fields[1])
                if dimension < 1:
                    raise EmbeddingFormatError(f"line {lineno}: dimension must be >= 1")
                continue
            if len(fields) < 2:
                raise EmbeddingFormatError(f"line {lineno}: expected a token followed by components")
            token, comps = fields[0], fields[1:]
            if dimension is None:
                dimension = len(comps)
            if len(comps) != dimension:
                raise EmbeddingFormatError(
                    f"line {lineno}: expected {dimension} components, got {len(comps)}"
                )
            try:
                vec = np.array([float(x) for x in comps])
            except ValueError:
                raise EmbeddingFormatError(f"line {lineno}: non-numeric component") from None
            if not np.isfinite(vec).all():
                raise EmbeddingFormatError(f"line {lineno}: non-finite component")
            if token in vectors:
                raise EmbeddingFormatError(f"line {lineno}: duplicate entry {token!r}")
            vectors[token] = vec
    if dimension is None:
        raise EmbeddingFormatError("no entries found")
    if expected_count is not None and expected_count != len(vectors):
        raise EmbeddingFormatError(f"header announces {expected_count} entries, found {len(vectors)}")
    return EmbeddingTable(dimension, vectors)


class HashedEmbedder:
    """Deterministic pseudo-random unit vector per ``(seed, token)``.

    Stable across processes and platforms (keyed by BLAKE2b, not ``hash``).
    Knows no bigrams.
    """

    def __init__(self, dimension: int = 100, seed: int = 0):
        if dimension < 2:
            raise ValueError("dimension must be >= 2")
        self.dimension = int(dimension)
        self.seed = int(seed)
        self._cache: dict[str, np.ndarray] = {}

    def lookup(self, token: str) -> Optional[np.ndarray]:
        vec = self._cache.get(token)
        if vec is None:
            digest = hashlib.blake2b(f"{self.seed}\x00{token}".encode("utf-8"), digest_size=16).digest()
            rng = np.random.default_rng(int.from_bytes(digest, "little"))
            vec = rng.standard_normal(self.dimension)
            vec /= np.linalg.norm(vec)
            vec.setflags(write=False)
            self._cache[token] = vec
        return vec

    def lookup_bigram(self, first: str, second: str) -> Optional[np.ndarray]:
        return None


def hashed_fallback_embedder(dimension: int, seed: int) -> HashedEmbedder:
    return HashedEmbedder(dimension, seed)


def _vectors(table: Embedder, tokens: TokenSeq) -> Iterable[Optional[np.ndarray]]:
    toks = tokens.tokens
    for tok in toks:
        yield table.lookup(tok)
    for a, b in zip(toks, toks[1:]):
        yield table.lookup_bigram(a, b)


def embed_sentence(table: Embedder, sentence) -> np.ndarray:
    """Mean vector of the sentence's known unigrams and bigrams.

    Unknown items are skipped; a sentence with no known item maps to the
    zero vector.
    """
    total = np.zeros(table.dimension)
    found = 0
    for vec in _vectors(table, as_tokens(sentence)):
        if vec is not None:
            total += vec
            found += 1
    return total / found if found else total


def embed_document(table: Embedder, document) -> np.ndarray:
    """Embed all sentences of a document as one long token sequence."""
    if isinstance(document, SentenceList):
        tokens = document.all_tokens()
    else:
        tokens = as_tokens(document)
    return embed_sentence(table, tokens)


def cosine(a, b) -> float:
    """Cosine similarity, defined as 0 when either vector is zero."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return float(min(1.0, max(-1.0, np.dot(a, b) / (na * nb))))
