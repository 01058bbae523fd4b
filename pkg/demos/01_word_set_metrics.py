# Word-set text metrics from the ground up.
#
# A text-to-image model was asked to render some words; OCR tells us what
# actually appeared. Word order is meaningless in an image, so every
# metric here treats both sides as unordered collections.
from texteval import edit_distance, ned, pned, recall, precision_and_f1, sentence_exact
from texteval import MatchingPolicy

# Character level: classic edit distance and its normalized form.
print("edit_distance('kitten', 'sitting') =", edit_distance("kitten", "sitting"))
print("ned('kitten', 'sitting')           =", round(ned("kitten", "sitting"), 4))
print("ned('remixed', 'remix')            =", round(ned("remixed", "remix"), 4))
print()

# The pairwise score: optimal word matching + a unit penalty per missing
# or extra word. Identical collections score 0 regardless of order.
demanded = ["GOOD", "MUSIC", "REMIXED", "UNRELEASED"]
detected = ["UNRELEASED", "REMIX", "GOOD", "MUSIC", "NOISE"]

result = pned(demanded, detected)
print("demanded:", demanded)
print("detected:", detected)
print("matched pairs (word, detection, distance):")
for gt_word, ocr_word, distance in result.matched_pairs:
    print(f"  {gt_word:12s} <-> {ocr_word:12s}  {distance:.4f}")
print(f"matched cost      = {result.matched_cost:.4f}")
print(f"unmatched penalty = {result.unmatched_penalty:.4f}  (|4 - 5| words)")
print(f"total             = {result.total:.4f}")
print()

# Shuffling either side never changes the score.
shuffled = list(reversed(detected))
print("total after shuffling detections:", round(pned(demanded, shuffled).total, 4))
print()

# Thresholded recall/precision: near misses like REMIX ~ REMIXED count as
# hits at the default 0.3 tolerance, but not under a stricter one.
print("recall @0.30 =", recall(demanded, detected))
print("recall @0.25 =", recall(demanded, detected, MatchingPolicy(0.25)))
prec, f1 = precision_and_f1(demanded, detected)
print(f"precision = {prec:.3f}, F1 = {f1:.3f}")
print("sentence exact?", sentence_exact(demanded, detected))
