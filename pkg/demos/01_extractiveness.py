# %% [markdown]
# # How extractive is a summary?
#
# Two scores compare a summary with its source document. The plagiarism
# score is the share of the summary covered by its single longest copied
# span. The extraction score looks at every copied span of three or more
# tokens and penalizes long spans much more than several short ones.

# %%
import numpy as np

from divsum import extraction_penalty, extraction_score, plagiarism_score, tokenize

document = tokenize(
    "The river flooded the old mill near the bridge. Farmers moved their cattle to the "
    "northern hills. Rescue teams arrived before sunset with small boats."
)

# %% A verbatim sentence scores 1 on both.
copy = tokenize("Farmers moved their cattle to the northern hills.")
print(plagiarism_score(copy, document), extraction_score(copy, document).extraction_score)

# %% Two short copied fragments joined by new words.
mixed = tokenize("The river flooded the old mill, so farmers moved their cattle away.")
report = extraction_score(mixed, document)
for span, share in zip(report.spans, report.proportions):
    words = mixed.tokens[span.summary_start:span.summary_end]
    print(f"{share:.2f}  {' '.join(words)}")
print("plagiarism", round(report.plagiarism_score, 3), "extraction", round(report.extraction_score, 3))

# %% The penalty curve stays below the diagonal: one long span costs more
# than two halves.
p = np.linspace(0, 1, 6)
print(np.round([extraction_penalty(x) for x in p], 4))
print(extraction_penalty(0.5) + extraction_penalty(0.5), "<", extraction_penalty(1.0))
