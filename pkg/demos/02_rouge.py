# %% [markdown]
# # ROUGE by hand
#
# ROUGE-N counts clipped n-gram overlap; ROUGE-L uses the longest common
# subsequence. Each reports precision, recall and their F1.

# %%
from divsum import rouge_l, rouge_n, rouge_scores

candidate = "the cat sat".split()
reference = "the cat sat on the mat".split()

for n in (1, 2):
    print(f"ROUGE-{n}", rouge_n(candidate, reference, n))
print("ROUGE-L", rouge_l(candidate, reference))

# %% Raw strings are tokenized first (lowercased, punctuation split off).
scores = rouge_scores("Boats arrived before dark.", "Rescue boats arrived before sunset.")
print({k: round(v["fmeasure"], 3) for k, v in scores.to_dict().items()})
