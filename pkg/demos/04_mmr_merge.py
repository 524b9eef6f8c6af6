# %% [markdown]
# # Merging diverse summaries with MMR
#
# Candidate sentences are embedded, scored for relevance to the document and
# for redundancy with what was already chosen, and picked one by one. Here
# one summary is a verbatim copy of the document and the other two are
# rewrites.

# %%
from divsum import HashedEmbedder, MMRConfig, extraction_score, merge_diverse_summaries

document = (
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the northern hills. "
    "Rescue teams arrived before sunset with small boats. Officials promised new levees by next spring. "
    "Schools stayed closed for three days."
)
summaries = [
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the northern hills. "
    "Rescue teams arrived before sunset with small boats.",
    "Water from the river swamped an old mill. Herders led cattle away toward higher ground. "
    "Officials promised new levees by next spring.",
    "Boats came before dark to help stranded people. The bridge mill was ruined by the flood. "
    "Classes were cancelled for several days.",
]

# %%
embedder = HashedEmbedder(dimension=100, seed=0)
result = merge_diverse_summaries(document, summaries, embedder, MMRConfig(n=3, beta=0.35))
for cand in result.selected:
    print(cand.index, cand.text)

# %% The merged summary copies less than the verbatim one.
print("copy  ", extraction_score(summaries[0], document).extraction_score)
print("merged", round(result.report.extraction_score, 3))

# %% With beta = 1 only relevance counts.
relevance_only = merge_diverse_summaries(document, summaries, embedder, MMRConfig(n=3, beta=1.0))
print([c.index for c in relevance_only.selected])
