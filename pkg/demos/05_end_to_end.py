# %% [markdown]
# # End to end on the copying corpus
#
# Decode six diverse summaries per document, merge three sentences, and
# compare the extraction score with the top hypothesis of plain beam search.

# %%
import numpy as np

from divsum import DecodeConfig, beam_search, decode_and_merge, detokenize, extraction_score
from divsum.fixtures import copying_corpus, fixture_model

rows = []
for record in copying_corpus(10):
    model = fixture_model(record)
    top = beam_search(model, DecodeConfig(groups=1))[0]
    baseline = extraction_score(detokenize(top.words(model)), record["document"]).extraction_score
    merged = decode_and_merge(model, record["document"])
    rows.append((baseline, merged.report.extraction_score, merged.num_candidates))

scores = np.array(rows)
print("beam search  mean extraction", scores[:, 0].mean().round(3))
print("merged       mean extraction", scores[:, 1].mean().round(3))
print("documents where merging copies less:", int((scores[:, 1] < scores[:, 0]).sum()), "of", len(rows))
