import pytest

from divsum.decoder import DecodeConfig, beam_search, diverse_beam_search
from divsum.embed import HashedEmbedder, embed_document
from divsum.extractiveness import extraction_score
from divsum.fixtures import copying_corpus, fixture_model
from divsum.mmr import MMRConfig
from divsum.pipeline import build_candidates, decode_and_merge, hypothesis_texts, merge_diverse_summaries
from divsum.textproc import detokenize, split_sentences, tokenize

from oracles import mmr_bruteforce

DOC = (
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the northern hills. "
    "Rescue teams arrived before sunset with small boats. Officials promised new levees by next spring. "
    "Schools stayed closed for three days."
)
COPY = (
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the northern hills. "
    "Rescue teams arrived before sunset with small boats."
)
PARAPHRASE_1 = (
    "Water from the river swamped an old mill. Herders led cattle away toward higher ground. "
    "Officials promised new levees by next spring."
)
PARAPHRASE_2 = (
    "Boats came before dark to help stranded people. The bridge mill was ruined by the flood. "
    "Classes were cancelled for several days."
)


def test_dedup_keeps_first_occurrence():
    cands = build_candidates([COPY] * 6, HashedEmbedder())
    assert [c.text for c in cands] == split_sentences(COPY).texts
    assert [c.index for c in cands] == [0, 1, 2]


def test_dedup_compares_tokens():
    cands = build_candidates(["It rained.", "it   RAINED .", "Dry."], HashedEmbedder())
    assert [c.text for c in cands] == ["It rained.", "Dry."]


def test_single_summary_is_reordered():
    result = merge_diverse_summaries(DOC, [COPY], HashedEmbedder(), MMRConfig(n=3))
    assert sorted(c.text for c in result.selected) == sorted(split_sentences(COPY).texts)
    assert result.final_summary == " ".join(c.text for c in result.selected)


def test_planted_copy_fixture():
    embedder = HashedEmbedder()
    summaries = [COPY, PARAPHRASE_1, PARAPHRASE_2]
    result = merge_diverse_summaries(DOC, summaries, embedder, MMRConfig(n=3, beta=0.35))
    cands = build_candidates(summaries, embedder)
    doc_vec = embed_document(embedder, split_sentences(DOC))
    expected = mmr_bruteforce(doc_vec, [c.vector for c in cands], 3, 0.35)
    assert [c.index for c in result.selected] == expected
    assert result.num_candidates == 9
    assert result.report.extraction_score < extraction_score(COPY, DOC).extraction_score


def test_output_sentences_come_from_inputs():
    summaries = [COPY, PARAPHRASE_1, PARAPHRASE_2]
    result = merge_diverse_summaries(DOC, summaries, HashedEmbedder(dimension=32, seed=5))
    pool = {s for text in summaries for s in split_sentences(text).texts}
    assert all(c.text in pool for c in result.selected)
    assert tokenize(result.final_summary).tokens == tuple(t for c in result.selected for t in c.tokens)


def test_all_empty_rejected():
    with pytest.raises(ValueError, match="empty"):
        merge_diverse_summaries(DOC, ["", "   "], HashedEmbedder())


def test_report_and_dict():
    result = merge_diverse_summaries(DOC, [COPY, PARAPHRASE_1], HashedEmbedder())
    d = result.to_dict()
    assert d["final_summary"] == result.final_summary
    assert [s["index"] for s in d["selected"]] == [c.index for c in result.selected]
    assert d["report"]["extraction_score"] == result.report.extraction_score


class TestDecodeAndMerge:
    record = copying_corpus(1)[0]

    def test_deterministic(self):
        model = fixture_model(self.record)
        one = decode_and_merge(model, self.record["document"]).to_dict()
        two = decode_and_merge(fixture_model(self.record), self.record["document"]).to_dict()
        assert one == two

    def test_single_group_without_diversity_uses_beam_top1(self):
        model = fixture_model(self.record)
        cfg = DecodeConfig(beam_width=4, groups=1, diversity_strength=0.0)
        result = decode_and_merge(model, self.record["document"], cfg)
        top = beam_search(model, cfg)[0]
        text = detokenize(top.words(model))
        assert result.diverse_inputs == [text]
        assert sorted(c.text for c in result.selected) == sorted(split_sentences(text).texts)

    def test_diversity_widens_candidate_pool(self):
        model = fixture_model(self.record)
        result = decode_and_merge(model, self.record["document"])
        assert len(result.diverse_inputs) == 6
        longest = max(len(split_sentences(t)) for t in result.diverse_inputs)
        assert result.num_candidates > longest

    def test_merged_is_less_extractive_than_beam_search(self):
        model = fixture_model(self.record)
        doc = self.record["document"]
        top = beam_search(model, DecodeConfig(groups=1))[0]
        baseline = extraction_score(detokenize(top.words(model)), doc).extraction_score
        assert decode_and_merge(model, doc).report.extraction_score < baseline

    def test_all_hypotheses_flag(self):
        model = fixture_model(self.record)
        groups = diverse_beam_search(model, DecodeConfig())
        assert len(hypothesis_texts(model, groups)) == 6
        assert len(hypothesis_texts(model, groups, all_hypotheses=True)) == sum(len(g) for g in groups)
        wide = decode_and_merge(model, self.record["document"], all_hypotheses=True)
        assert len(wide.diverse_inputs) == sum(len(g) for g in groups)
