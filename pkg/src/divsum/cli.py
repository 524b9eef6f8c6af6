"""Command line interface: ``divsum {score,rouge,decode,merge}``.

Corpus commands read JSONL (one record per line, ``-`` for stdin) and
write JSON to stdout or ``--output``. A bad record produces an error entry
instead of aborting the run; the exit status is 1 if any record failed and
2 on usage or model-file errors. ``DIVSUM_THREADS`` bounds the worker pool;
output order always follows input order.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .decoder import DecodeConfig, ModelSpecError, diverse_beam_search, load_model
from .embed import EmbeddingFormatError, HashedEmbedder, load_embeddings
from .extractiveness import DEFAULT_MIN_SPAN, extraction_score
from .mmr import MMRConfig
from .pipeline import merge_diverse_summaries
from .rouge import rouge_scores
from .textproc import detokenize, tokenize


class RecordError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("DIVSUM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def _read_records(path):
    """Yield ``(record_id, record_or_exception)`` per non-blank line."""
    stream = sys.stdin if path == "-" else open(path, encoding="utf-8")
    seen = set()
    try:
        for lineno, line in enumerate(stream, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as err:
                yield f"line {lineno}", RecordError(f"invalid JSON: {err.msg}")
                continue
            if not isinstance(rec, dict):
                yield f"line {lineno}", RecordError("record must be a JSON object")
                continue
            rid = str(rec.get("id", f"line {lineno}"))
            if rid in seen:
                yield rid, RecordError(f"duplicate id {rid!r}")
                continue
            seen.add(rid)
            yield rid, rec
    finally:
        if stream is not sys.stdin:
            stream.close()


def _field(rec, name, kind=str):
    value = rec.get(name)
    if value is None:
        raise RecordError(f"missing field {name!r}")
    if not isinstance(value, kind):
        raise RecordError(f"field {name!r} has the wrong type")
    return value


def _map_records(path, fn):
    """Apply ``fn`` to every record in parallel; keeps input order."""
    items = list(_read_records(path))

    def run(item):
        rid, rec = item
        try:
            if isinstance(rec, Exception):
                raise rec
            return {"id": rid, **fn(rec)}
        except (RecordError, ValueError) as err:
            return {"id": rid, "error": str(err)}

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(run, items))


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _write(args, lines):
    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="utf-8")
    try:
        for line in lines:
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _mean(values):
    return math.fsum(values) / len(values) if values else None


def cmd_score(args) -> int:
    def score(rec):
        summary = tokenize(_field(rec, "summary"))
        document = tokenize(_field(rec, "document"))
        return extraction_score(summary, document, args.min_span).to_dict()

    results = _map_records(args.input, score)
    ok = [r for r in results if "error" not in r]
    aggregate = {
        "records": len(results),
        "errors": len(results) - len(ok),
        "plagiarism_score": _mean([r["plagiarism_score"] for r in ok]),
        "extraction_score": _mean([r["extraction_score"] for r in ok]),
    }
    _write(args, [_dump(r) for r in results] + [_dump({"aggregate": aggregate})])
    return 1 if aggregate["errors"] else 0


def cmd_rouge(args) -> int:
    def score(rec):
        candidate = rec.get("candidate", rec.get("summary"))
        if candidate is None:
            raise RecordError("missing field 'candidate'")
        if not isinstance(candidate, str):
            raise RecordError("field 'candidate' has the wrong type")
        return rouge_scores(tokenize(candidate), tokenize(_field(rec, "reference"))).to_dict()

    results = _map_records(args.input, score)
    ok = [r for r in results if "error" not in r]
    summary = {
        "records": len(results),
        "errors": len(results) - len(ok),
        "rouge1_f": _mean([r["rouge1"]["fmeasure"] for r in ok]),
        "rouge2_f": _mean([r["rouge2"]["fmeasure"] for r in ok]),
        "rougeL_f": _mean([r["rougeL"]["fmeasure"] for r in ok]),
        "per_record": results,
    }
    _write(args, [json.dumps(summary, ensure_ascii=False, indent=2)])
    return 1 if summary["errors"] else 0


def _decode_config(args) -> DecodeConfig:
    return DecodeConfig(
        beam_width=args.beam_width,
        groups=args.groups,
        diversity_strength=args.diversity_strength,
        diversity_kind=args.diversity,
        ngram_order=args.ngram_order,
        min_tokens=args.min_len,
        max_tokens=args.max_len,
        length_norm=args.length_norm,
    )


def cmd_decode(args) -> int:
    try:
        model = load_model(args.model)
        config = _decode_config(args)
    except (ModelSpecError, ValueError, OSError) as err:
        print(f"divsum decode: error: {err}", file=sys.stderr)
        return 2
    groups = diverse_beam_search(model, config)
    out = {
        "config": {
            "beam_width": config.beam_width,
            "groups": config.groups,
            "diversity_strength": config.diversity_strength,
            "diversity": config.diversity_kind,
            "ngram_order": config.ngram_order,
            "min_len": config.min_tokens,
            "max_len": config.max_tokens,
            "length_norm": config.length_norm,
        },
        "groups": [
            [
                {
                    "rank": rank,
                    "tokens": h.words(model, keep_stop=True),
                    "text": detokenize(h.words(model)),
                    "log_score": h.log_score,
                    "score": h.score(config.length_norm),
                    "length": len(h.tokens),
                }
                for rank, h in enumerate(ranked)
            ]
            for ranked in groups
        ],
    }
    _write(args, [json.dumps(out, ensure_ascii=False, indent=2)])
    return 0


def _merge_inputs(rec, all_hypotheses):
    if "candidates" in rec:
        cands = _field(rec, "candidates", list)
        if not all(isinstance(c, str) for c in cands):
            raise RecordError("field 'candidates' must be a list of strings")
        return cands
    if "groups" in rec:
        groups = _field(rec, "groups", list)
        texts = []
        for ranked in groups:
            if not isinstance(ranked, list) or not all(isinstance(c, str) for c in ranked):
                raise RecordError("field 'groups' must be a list of lists of strings")
            texts.extend(ranked if all_hypotheses else ranked[:1])
        return texts
    raise RecordError("missing field 'candidates'")


def cmd_merge(args) -> int:
    try:
        if args.embeddings:
            embedder = load_embeddings(args.embeddings)
        else:
            embedder = HashedEmbedder(args.hash_dim, args.seed)
        mmr_config = MMRConfig(args.n, args.beta)
    except (EmbeddingFormatError, ValueError, OSError) as err:
        print(f"divsum merge: error: {err}", file=sys.stderr)
        return 2

    def merge(rec):
        document = _field(rec, "document")
        texts = _merge_inputs(rec, args.all_hypotheses)
        if not texts:
            raise RecordError("empty candidates")
        return merge_diverse_summaries(document, texts, embedder, mmr_config, args.min_span).to_dict()

    results = _map_records(args.input, merge)
    _write(args, [_dump(r) for r in results])
    return 1 if any("error" in r for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="divsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_help):
        p.add_argument("input", help=input_help)
        p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")

    p = sub.add_parser("score", help="plagiarism_score / extraction_score per record")
    common(p, "JSONL with id, document, summary")
    p.add_argument("--min-span", type=int, default=DEFAULT_MIN_SPAN, help="shortest copied span that counts")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("rouge", help="mean ROUGE-1/2/L F1 over a corpus")
    common(p, "JSONL with id, reference, candidate")
    p.set_defaults(func=cmd_rouge)

    p = sub.add_parser("decode", help="diverse beam search over a JSON table model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--beam-width", type=int, default=24)
    p.add_argument("--groups", type=int, default=6)
    p.add_argument("--lambda", dest="diversity_strength", type=float, default=0.3)
    p.add_argument("--diversity", choices=["hamming", "ngram"], default="hamming")
    p.add_argument("--ngram-order", type=int, default=2)
    p.add_argument("--min-len", type=int, default=35)
    p.add_argument("--max-len", type=int, default=150)
    p.add_argument("--length-norm", action="store_true", help="rank by log-score per token")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("merge", help="merge candidate summaries by MMR sentence selection")
    common(p, "JSONL with id, document and candidates (or groups)")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--embeddings", help="text embeddings file")
    src.add_argument("--hash-dim", type=int, default=100, help="dimension of the hashed fallback embedder")
    p.add_argument("--seed", type=int, default=0, help="seed of the hashed fallback embedder")
    p.add_argument("--n", type=int, default=3, help="sentences to select")
    p.add_argument("--beta", type=float, default=0.35, help="relevance weight")
    p.add_argument("--all-hypotheses", action="store_true", help="use every hypothesis of each group, not only the best")
    p.add_argument("--min-span", type=int, default=DEFAULT_MIN_SPAN)
    p.set_defaults(func=cmd_merge)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as err:
        print(f"divsum {args.command}: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
