"""Brute-force reference implementations used as test oracles.

None of these share code with the package; they are deliberately naive.
"""

import itertools
import math
import statistics


def occurs_at(needle, haystack):
    """First index where ``needle`` occurs contiguously in ``haystack``, or -1."""
    n = len(needle)
    for j in range(len(haystack) - n + 1):
        if list(haystack[j:j + n]) == list(needle):
            return j
    return -1


def longest_common_substring(a, b):
    """Enumerate every substring of ``a``; ``(length, a_start, b_start)``."""
    best = (0, 0, 0)
    for length in range(len(a), 0, -1):
        for i in range(len(a) - length + 1):
            j = occurs_at(a[i:i + length], b)
            if j >= 0:
                return (length, i, j)
    return best


def acs_greedy(summary, document, min_len):
    """Greedy longest-first common spans, by enumerating substrings of the
    uncovered summary positions. Returns ``[(s_start, d_start, length)]``."""
    covered = [False] * len(summary)
    spans = []
    while True:
        found = None
        for length in range(len(summary), 0, -1):
            for i in range(len(summary) - length + 1):
                if any(covered[i:i + length]):
                    continue
                j = occurs_at(summary[i:i + length], document)
                if j >= 0:
                    found = (i, j, length)
                    break
            if found:
                break
        if found is None or found[2] < min_len:
            return spans
        spans.append(found)
        for k in range(found[0], found[0] + found[2]):
            covered[k] = True


def lcs_subsequence(a, b):
    """Longest common subsequence by full table, textbook recurrence."""
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[len(a)][len(b)]


def enumerate_sequences(model, min_tokens, max_tokens):
    """Every sequence the decoder may return, with its total log-score.

    Content tokens exclude START and STOP. A sequence is ``c`` content tokens
    followed by STOP (``min_tokens <= c`` and ``c + 1 <= max_tokens``) or
    exactly ``max_tokens`` content tokens.
    """
    content = [i for i in range(len(model.vocabulary)) if i not in (model.start_id, model.stop_id)]
    out = []

    def score(seq):
        total = 0.0
        for t, tok in enumerate(seq):
            v = float(model.step(seq[:t])[tok])
            if v == -math.inf:
                return None
            total += v
        return total

    for c in range(0, max_tokens + 1):
        for body in itertools.product(content, repeat=c):
            body = tuple(body)
            if c == max_tokens:
                seqs = [body]
            elif c >= min_tokens:
                seqs = [body + (model.stop_id,)]
            else:
                seqs = []
            for seq in seqs:
                s = score(seq)
                if s is not None:
                    out.append((s, seq))
    return out


def greedy_decode(model, min_tokens, max_tokens):
    seq = ()
    while len(seq) < max_tokens:
        scores = list(model.step(seq))
        best, best_tok = -math.inf, None
        for tok, v in enumerate(scores):
            if tok == model.start_id:
                continue
            if tok == model.stop_id and len(seq) < min_tokens:
                continue
            if v > best:
                best, best_tok = v, tok
        seq = seq + (best_tok,)
        if best_tok == model.stop_id:
            break
    return seq


def py_cosine(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0 or nb == 0:
        return 0.0
    return dot / (na * nb)


def _zshift(values):
    std = statistics.pstdev(values)
    if std <= 1e-12:
        return [0.5] * len(values)
    mean = statistics.fmean(values)
    return [0.5 + (v - mean) / std for v in values]


def _maxnorm(values):
    top = max(values)
    if top <= 0:
        return [0.0] * len(values)
    return [v / top for v in values]


def mmr_bruteforce(doc, vectors, n, beta, tie=1e-9):
    """Round-by-round evaluation of the MMR objective from its definition.

    Objectives within ``tie`` of the round's best are ties, won by the lower
    index.
    """
    k = len(vectors)
    rel = _zshift(_maxnorm([py_cosine(doc, v) for v in vectors]))

    def red(i, j):
        others = [m for m in range(k) if m != i]
        vals = _zshift(_maxnorm([py_cosine(vectors[i], vectors[m]) for m in others]))
        return vals[others.index(j)]

    picked = []
    for _ in range(min(n, k)):
        scores = {}
        for i in range(k):
            if i in picked:
                continue
            penalty = max((red(i, j) for j in picked), default=0.0)
            scores[i] = beta * rel[i] - (1 - beta) * penalty
        top = max(scores.values())
        picked.append(min(i for i, s in scores.items() if s >= top - tie))
    return picked
