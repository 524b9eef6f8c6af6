"""Tokenization, sentence splitting and the token containers shared by the package.

All metrics operate on lowercased whitespace/punctuation tokens::

    >>> tokenize("The cat sat.").tokens
    ('the', 'cat', 'sat', '.')
    >>> [s.text for s in split_sentences("He left. She stayed.")]
    ['He left.', 'She stayed.']
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "TokenSeq",
    "Sentence",
    "SentenceList",
    "tokenize",
    "detokenize",
    "split_sentences",
    "abbreviations",
]

# Peeled off the front of a whitespace chunk, one character per token.
LEADING_PUNCT = frozenset('"([{')
# Peeled off the end of a whitespace chunk, one character per token.
TRAILING_PUNCT = frozenset('.,!?;:")]}')
SENTENCE_FINAL = frozenset(".!?")

_CHUNK = re.compile(r"\S+")
# Sentence-final run, optional closing quotes/brackets, then either
# whitespace + capital letter or end of text.
_BOUNDARY = re.compile(r"[.!?]+[\"')\]]*(?=\s+[A-Z]|\s*$)")


@dataclass(frozen=True)
class TokenSeq:
    """An ordered sequence of normalized tokens.

    ``source_char_spans`` holds ``(start, end)`` character offsets into the
    raw text each token came from, when known.
    """

    tokens: tuple[str, ...] = ()
    source_char_spans: Optional[tuple[tuple[int, int], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if any(not t for t in self.tokens):
            raise ValueError("tokens must be non-empty strings")
        if self.source_char_spans is not None:
            spans = tuple(tuple(s) for s in self.source_char_spans)
            if len(spans) != len(self.tokens):
                raise ValueError("one character span per token required")
            object.__setattr__(self, "source_char_spans", spans)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, item):
        return self.tokens[item]

    def __eq__(self, other):
        if isinstance(other, TokenSeq):
            return self.tokens == other.tokens
        if isinstance(other, (tuple, list)):
            return self.tokens == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.tokens)


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: TokenSeq


@dataclass(frozen=True)
class SentenceList:
    sentences: tuple[Sentence, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __getitem__(self, item):
        return self.sentences[item]

    @property
    def texts(self) -> list[str]:
        return [s.text for s in self.sentences]

    def all_tokens(self) -> TokenSeq:
        """Tokens of every sentence, concatenated in order."""
        return TokenSeq(tuple(t for s in self.sentences for t in s.tokens))


def as_tokens(value) -> TokenSeq:
    """Coerce raw text, a token list or a TokenSeq into a TokenSeq."""
    if isinstance(value, TokenSeq):
        return value
    if isinstance(value, str):
        return tokenize(value)
    return TokenSeq(tuple(value))


def _split_chunk(chunk: str, offset: int) -> list[tuple[str, int, int]]:
    lo, hi = 0, len(chunk)
    head, tail = [], []
    while lo < hi and chunk[lo] in LEADING_PUNCT:
        head.append((chunk[lo], offset + lo, offset + lo + 1))
        lo += 1
    while hi > lo and chunk[hi - 1] in TRAILING_PUNCT:
        tail.append((chunk[hi - 1], offset + hi - 1, offset + hi))
        hi -= 1
    core = [(chunk[lo:hi], offset + lo, offset + hi)] if hi > lo else []
    return head + core + tail[::-1]


def tokenize(text: str) -> TokenSeq:
    """Lowercase ``text`` and split it into word and punctuation tokens.

    Whitespace separates chunks. Within a chunk, opening quotes/brackets are
    split off the front and ``. , ! ? ; :`` plus closing quotes/brackets off
    the back, one token per character. Everything in between (hyphens,
    apostrophes, inner periods as in ``u.s``) stays one token.
    """
    tokens, spans = [], []
    for m in _CHUNK.finditer(text):
        for piece, start, end in _split_chunk(m.group(), m.start()):
            tokens.append(piece.lower())
            spans.append((start, end))
    return TokenSeq(tuple(tokens), tuple(spans))


def detokenize(tokens: Iterable[str], capitalize: bool = True) -> str:
    """Join tokens into text that :func:`tokenize` maps back to the same tokens.

    Trailing punctuation attaches to the previous token and opening brackets
    to the next one. With ``capitalize`` the first ASCII letter of each
    sentence is uppercased so that :func:`split_sentences` can find the
    boundaries again in lowercased decoder output.
    """
    out: list[str] = []
    glue_next = False
    sentence_start = True
    for tok in tokens:
        word = tok
        if capitalize and sentence_start and word[0].isascii() and word[0].isalpha():
            word = word[0].upper() + word[1:]
            sentence_start = False
        elif word[0].isalnum():
            sentence_start = False
        if out and (glue_next or (tok in TRAILING_PUNCT and tok != '"')):
            out[-1] += word
        else:
            out.append(word)
        glue_next = tok in LEADING_PUNCT and tok != '"'
        if tok in SENTENCE_FINAL:
            sentence_start = True
    return " ".join(out)


@lru_cache(maxsize=1)
def abbreviations() -> frozenset[str]:
    """The fixed abbreviation guard list shipped with the package."""
    raw = resources.files("divsum").joinpath("data/abbreviations.txt").read_text("utf-8")
    return frozenset(
        line.strip().lower()
        for line in raw.splitlines()
        if line.strip() and not line.startswith("#")
    )


def _guarded(text: str, end: int) -> bool:
    """True if the word ending at ``end`` is a guarded abbreviation."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:end].lower().lstrip("\"'([{")
    return word in abbreviations()


def split_sentences(text: str) -> SentenceList:
    """Split raw text into sentences.

    A boundary is one or more of ``. ! ?`` (plus closing quotes/brackets)
    followed by whitespace and a capital letter, or by the end of the text.
    Periods ending a guarded abbreviation (``Dr.``, ``U.S.``, ...) never
    split. Fragments without any token are dropped.
    """
    pieces = []
    start = 0
    for m in _BOUNDARY.finditer(text):
        end = m.end()
        first_period = m.group().find(".")
        if first_period >= 0 and _guarded(text, m.start() + first_period + 1):
            continue
        pieces.append(text[start:end])
        start = end
    pieces.append(text[start:])
    sentences = []
    for piece in pieces:
        piece = piece.strip()
        toks = tokenize(piece)
        if len(toks):
            sentences.append(Sentence(piece, toks))
    return SentenceList(tuple(sentences))


def ngrams(tokens: Sequence[str], n: int) -> list[tuple]:
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]
