# %% [markdown]
# # Diverse beam search on a copying model
#
# The fixture model copies the opening sentences of its document word for
# word, but at some positions it also offers near-tied substitutes. Plain
# beam search follows the copy. Splitting the beam into groups and
# penalizing each group for repeating tokens chosen by earlier groups at
# the same step pushes later groups onto the substitutes.

# %%
from divsum import DecodeConfig, beam_search, diverse_beam_search, detokenize
from divsum.fixtures import fixture_model, make_copying_fixture

record = make_copying_fixture(seed=4)
model = fixture_model(record)
print("document lead:\n", record["lead"], "\n")

# %% Plain beam search, width 24.
best = beam_search(model, DecodeConfig(groups=1))[0]
print(round(best.log_score, 3), detokenize(best.words(model)) == record["lead"])

# %% Six groups of four with a Hamming diversity term.
groups = diverse_beam_search(model, DecodeConfig(beam_width=24, groups=6, diversity_strength=0.3))
for g, ranked in enumerate(groups):
    top = ranked[0]
    changed = sum(a != b for a, b in zip(top.words(model), best.words(model)))
    print(f"group {g}: log-score {top.log_score:8.3f}, {changed:2d} tokens differ from beam search")

# %% Without diversity every group reproduces beam search of width 4.
flat = diverse_beam_search(model, DecodeConfig(groups=6, diversity_strength=0.0))
print(len({ranked[0].tokens for ranked in flat}))
