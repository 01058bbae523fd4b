# Building benchmark prompts with difficulty tiers and text conditions.
#
# A prompt couples an image caption with quoted text captions to render.
# Total word count fixes the difficulty tier (easy 2-4, medium 5-9,
# hard 10-14); easy prompts may additionally constrain color, font, or
# position, with contrasting font styles never mixed in one prompt.
from texteval import (
    AttributeCondition,
    COLORS,
    FONT_PAIRS,
    POSITIONS,
    classify_difficulty,
    make_bench_prompt,
    parse_bench_prompt,
)

print("condition vocabularies:")
print("  colors   :", ", ".join(COLORS))
print("  fonts    :", " / ".join(f"{a}|{b}" for a, b in FONT_PAIRS))
print("  positions:", ", ".join(POSITIONS))
print()

caption = "A picture of a blue and green abstract people logo on a purple background"

plain = make_bench_prompt(caption, ["AREA", "PEOPLE"])
print(f"[{plain.difficulty}] {plain.rendered}")

colored = make_bench_prompt(
    caption, ["AREA", "PEOPLE"],
    (AttributeCondition("color", "red", 0), AttributeCondition("color", "cyan", 1)),
)
print(f"[{colored.difficulty}] {colored.rendered}")

positioned = make_bench_prompt(
    "A city skyline at dusk", ["OPEN", "DAILY"],
    (AttributeCondition("position", "top", 0),),
)
print(f"[{positioned.difficulty}] {positioned.rendered}")

medium = make_bench_prompt(
    "A menu of a fast food restaurant",
    ["Sandwich Combo", "Grilled Chicken", "Fries"],
)
print(f"[{medium.difficulty}] {medium.rendered}")
print()

# Rendered prompts parse back to their inputs, so ground truth for
# evaluation can be recovered from the prompt text alone.
print("re-parsed:", parse_bench_prompt(medium.rendered))
print()

# Word counts outside every tier are rejected, as are contrasting fonts.
print("classify_difficulty(1)  ->", classify_difficulty(1))
print("classify_difficulty(14) ->", classify_difficulty(14))
try:
    make_bench_prompt(caption, ["AREA", "PEOPLE"], (
        AttributeCondition("font", "3D style", 0),
        AttributeCondition("font", "flat style", 1),
    ))
except ValueError as exc:
    print("rejected:", exc)
