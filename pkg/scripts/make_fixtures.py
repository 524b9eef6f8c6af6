"""Regenerate the shipped test data under tests/data.

Run from the repository root:

    python scripts/make_fixtures.py

Everything is seeded, so a rerun rewrites byte-identical files. Golden
outputs are produced by the package's own CLI; the tests check them
against independent oracles as well.
"""

import io
import json
import pathlib
from contextlib import redirect_stdout

from divsum.cli import main
from divsum.decoder import DecodeConfig, diverse_beam_search
from divsum.fixtures import copying_corpus, fixture_model
from divsum.pipeline import hypothesis_texts

ROOT = pathlib.Path(__file__).resolve().parents[1]
DATA = ROOT / "tests" / "data"


def write_json(path, obj):
    path.write_text(json.dumps(obj, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


def write_compact(path, obj):
    path.write_text(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n", encoding="utf-8")


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    if code != 0:
        raise SystemExit(f"divsum {' '.join(map(str, argv))} exited with {code}")
    return buf.getvalue()


TOY_MODEL = {
    "vocabulary": ["<s>", "</s>", "a", "b"],
    "start": "<s>",
    "stop": "</s>",
    "kind": "ngram",
    "order": 1,
    "contexts": {
        "<s>": [None, -2.0, -0.4, -1.2],
        "a": [None, -0.9, -1.4, -1.1],
        "b": [None, -0.5, -1.0, -2.3],
    },
}

FLOOD = (
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the northern hills. "
    "Rescue teams arrived before sunset with small boats. Officials promised new levees by next spring. "
    "Schools stayed closed for three days."
)
FLOOD_COPY = (
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the northern hills. "
    "Rescue teams arrived before sunset with small boats."
)
FLOOD_PARAPHRASES = [
    "Water from the river swamped an old mill. Herders led cattle away toward higher ground. "
    "Officials promised new levees by next spring.",
    "Boats came before dark to help stranded people. The bridge mill was ruined by the flood. "
    "Classes were cancelled for several days.",
]

SCORE_EXTRA = [
    {"id": "full-copy", "document": FLOOD, "summary": FLOOD_COPY},
    {"id": "novel", "document": FLOOD, "summary": "A quiet winter followed without incident."},
    {"id": "paraphrase", "document": FLOOD, "summary": FLOOD_PARAPHRASES[0]},
    {"id": "mixed", "document": FLOOD, "summary": FLOOD_PARAPHRASES[1] + " " + "Schools stayed closed for three days."},
]

ROUGE_CORPUS = [
    {"id": "worked", "reference": "the cat sat on the mat", "candidate": "the cat sat"},
    {"id": "identical", "reference": FLOOD_COPY, "candidate": FLOOD_COPY},
    {"id": "paraphrase-1", "reference": FLOOD_COPY, "candidate": FLOOD_PARAPHRASES[0]},
    {"id": "paraphrase-2", "reference": FLOOD_COPY, "candidate": FLOOD_PARAPHRASES[1]},
    {"id": "reordered", "reference": "a b c d e f", "candidate": "f e d c b a"},
    {"id": "disjoint", "reference": "sun and moon", "candidate": "rain or snow"},
    {"id": "repeats", "reference": "the the cat", "candidate": "the the the the"},
    {"id": "punctuation", "reference": "Yes, it works.", "candidate": "yes it works"},
    {"id": "long-candidate", "reference": "officials promised levees", "candidate": FLOOD},
    {"id": "one-shared", "reference": "boats arrived early", "candidate": "trucks arrived late"},
]


def main_():
    DATA.mkdir(parents=True, exist_ok=True)
    models = DATA / "models"
    models.mkdir(exist_ok=True)

    corpus = copying_corpus(10)
    for rec in corpus:
        write_compact(models / f"{rec['id']}.json", rec["model"])
    write_jsonl(DATA / "copying_corpus.jsonl", [
        {"id": r["id"], "document": r["document"], "lead": r["lead"], "model": f"models/{r['id']}.json"}
        for r in corpus
    ])

    # Extractiveness: six copying documents scored against their leads, plus
    # hand-made flood records.
    score_records = [
        {"id": r["id"], "document": r["document"], "summary": r["lead"]} for r in corpus[:6]
    ] + SCORE_EXTRA
    write_jsonl(DATA / "score_corpus.jsonl", score_records)
    (DATA / "score_golden.jsonl").write_text(run_cli("score", DATA / "score_corpus.jsonl"), encoding="utf-8")

    write_jsonl(DATA / "rouge_corpus.jsonl", ROUGE_CORPUS)
    (DATA / "rouge_golden.json").write_text(run_cli("rouge", DATA / "rouge_corpus.jsonl"), encoding="utf-8")

    write_json(DATA / "toy_model.json", TOY_MODEL)
    (DATA / "decode_toy_golden.json").write_text(
        run_cli("decode", DATA / "toy_model.json", "--beam-width", 4, "--groups", 2, "--lambda", 1.0, "--min-len", 1, "--max-len", 4),
        encoding="utf-8",
    )
    (DATA / "decode_copy_golden.json").write_text(
        run_cli("decode", models / "copy-000.json"), encoding="utf-8"
    )

    # Merge inputs: decoded groups for three copying documents plus the
    # planted-copy flood record.
    merge_records = []
    for rec in corpus[:3]:
        model = fixture_model(rec)
        groups = diverse_beam_search(model, DecodeConfig())
        merge_records.append({
            "id": rec["id"],
            "document": rec["document"],
            "groups": [hypothesis_texts(model, [g], all_hypotheses=True) for g in groups],
        })
    merge_records.append({"id": "flood", "document": FLOOD, "candidates": [FLOOD_COPY, *FLOOD_PARAPHRASES]})
    write_jsonl(DATA / "merge_corpus.jsonl", merge_records)
    (DATA / "merge_golden.jsonl").write_text(run_cli("merge", DATA / "merge_corpus.jsonl"), encoding="utf-8")


if __name__ == "__main__":
    main_()
