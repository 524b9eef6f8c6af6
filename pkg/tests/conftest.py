import itertools
import json
import math
import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from divsum.decoder import TableModel  # noqa: E402

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


def random_table_model(seed, content=("a", "b"), order=2, forbid=0.0):
    """Order-``order`` model with every context listed and random log-probs."""
    rng = np.random.default_rng(seed)
    vocab = ["<s>", "</s>", *content]
    contexts = {}
    symbols = ["<s>", *content]
    for ctx in itertools.product(symbols, repeat=order):
        # START may only appear as left padding.
        if any(a != "<s>" and b == "<s>" for a, b in zip(ctx, ctx[1:])):
            continue
        logits = rng.normal(size=len(vocab))
        logits[0] = -np.inf
        if forbid:
            mask = rng.random(len(vocab)) < forbid
            mask[1] = False
            logits[mask] = -np.inf
        logp = logits - np.log(np.exp(logits[np.isfinite(logits)]).sum())
        contexts[" ".join(ctx)] = [None if math.isinf(v) else float(v) for v in logp]
    return TableModel.from_dict(
        {"vocabulary": vocab, "start": "<s>", "stop": "</s>", "kind": "ngram", "order": order, "contexts": contexts}
    )


def load_jsonl(path):
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


# -- acceptance report ------------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _markers.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    entry = _criteria.setdefault(number, {"title": title, "ok": True})
    entry["ok"] = entry["ok"] and report.outcome == "passed"


_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = m.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {entry['title']}")
