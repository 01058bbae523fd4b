# The deterministic stages of the image-corpus curation pipeline.
#
# Stage 0 filters raw seed captions before any model sees them. Stage 1
# picks the best of N generations per prompt under a weighted score with
# quality counting double. Stage 2 drops images whose largest text
# region is too small to read.
from texteval import (
    Candidate,
    OcrResult,
    OcrWord,
    filter_seed_caption,
    filter_small_text,
    largest_text_area,
    select_best_of_n,
    weighted_score,
)

print("-- seed caption filtering --")
for caption in [
    "A poster with bold letters",
    "*",
    "",
    " ".join(["word"] * 15),
    " ".join(["word"] * 60),
]:
    decision = filter_seed_caption(caption)
    label = "keep" if decision.keep else f"drop({decision.reason})"
    print(f"  {label:16s} {caption[:40]!r}")
print()

def candidate(cid, quality, aesthetic, box_w, box_h):
    word = OcrWord("TEXT", (100, 100, 100 + box_w, 100 + box_h), 0.9)
    return Candidate("group-7", cid, quality, aesthetic, OcrResult((word,), 1024, 1024))

# Five generations of the same prompt, scored externally.
group = [
    candidate(0, quality=4.20, aesthetic=3.00, box_w=90, box_h=50),
    candidate(1, quality=3.90, aesthetic=4.00, box_w=80, box_h=50),
    candidate(2, quality=3.10, aesthetic=4.90, box_w=200, box_h=90),
    candidate(3, quality=4.05, aesthetic=3.20, box_w=30, box_h=20),
    candidate(4, quality=3.90, aesthetic=4.00, box_w=80, box_h=50),  # ties with 1
]

print("-- Best-of-N selection (quality weighted 2x) --")
for c in group:
    print(f"  candidate {c.candidate_id}: score = {weighted_score(c):.2f}")
winner = select_best_of_n(group)
print(f"  winner: candidate {winner.candidate_id} (ties break to the lowest id)")
print()

print("-- largest-text-area filter (threshold 4000 px^2, strict) --")
verdict = filter_small_text(winner)
print(f"  winner's largest region = {largest_text_area(winner.ocr):.0f} px^2")
print(f"  kept? {verdict.keep}" + (f"  reason: {verdict.reason}" if verdict.reason else ""))
