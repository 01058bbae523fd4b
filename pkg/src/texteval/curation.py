"""Deterministic dataset-curation stages and benchmark prompt construction.

Covers the offline parts of the image-corpus pipeline: seed-caption
filtering, Best-of-N selection under a weighted quality/aesthetic score,
largest-text-region area filtering, instruction templates for the
external LLM adapters, and the benchmark prompt grammar with its
difficulty tiers.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .conditions import FONT_DESCRIPTIONS, font_pair_opposite
from .core import (
    AttributeCondition,
    OcrResult,
    SampleFormatError,
    atomic_write_text,
    iter_jsonl,
    parse_ocr,
)

# Tier boundaries on the total rendered word count.
EASY_RANGE = (2, 4)
MEDIUM_RANGE = (5, 9)
HARD_RANGE = (10, 14)

MAX_SEED_CAPTION_WORDS = 15
VERBOSE_SEED_CAPTION_WORDS = 50
MIN_TEXT_AREA_PX = 4000
QUALITY_WEIGHT = 2.0
AESTHETIC_WEIGHT = 1.0
CROP_EXPAND_DEFAULT = 0.10  # re-exported for CLI defaults


@dataclass(frozen=True)
class FilterDecision:
    """Keep/drop verdict with a machine-readable reason (None when kept)."""

    keep: bool
    reason: str | None = None


def filter_seed_caption(caption: str) -> FilterDecision:
    """Decide whether a raw OCR seed caption is usable.

    Drops captions that are empty, purely symbolic (no alphanumeric
    character at all), or too long. Captions of 50+ words are flagged
    "verbose(>=50)" and 15..49 words "long(>=15)"; only captions with
    fewer than 15 words are retained.
    """
    stripped = caption.strip()
    if not stripped:
        return FilterDecision(False, "empty")
    if not any(ch.isalnum() for ch in stripped):
        return FilterDecision(False, "meaningless")
    count = len(stripped.split())
    if count >= VERBOSE_SEED_CAPTION_WORDS:
        return FilterDecision(False, "verbose(>=50)")
    if count >= MAX_SEED_CAPTION_WORDS:
        return FilterDecision(False, "long(>=15)")
    return FilterDecision(True)


@dataclass(frozen=True)
class Candidate:
    """One generated image inside a Best-of-N group sharing a prompt."""

    group_id: str
    candidate_id: int
    quality: float
    aesthetic: float
    ocr: OcrResult

    def __post_init__(self) -> None:
        for name in ("quality", "aesthetic"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"candidate {self.candidate_id}: {name} must be finite")


def weighted_score(
    candidate: Candidate,
    w_quality: float = QUALITY_WEIGHT,
    w_aesthetic: float = AESTHETIC_WEIGHT,
) -> float:
    return w_quality * candidate.quality + w_aesthetic * candidate.aesthetic


def select_best_of_n(
    group: Sequence[Candidate],
    w_quality: float = QUALITY_WEIGHT,
    w_aesthetic: float = AESTHETIC_WEIGHT,
) -> Candidate:
    """Pick the highest-scoring candidate; ties go to the lowest id."""
    if not group:
        raise ValueError("cannot select from an empty candidate group")
    return max(group, key=lambda c: (weighted_score(c, w_quality, w_aesthetic), -c.candidate_id))


def largest_text_area(ocr: OcrResult) -> float:
    """Area in px^2 of the largest detected text region; 0 without words."""
    return max((w.area for w in ocr.words), default=0.0)


def filter_small_text(candidate: Candidate, min_area_px: float = MIN_TEXT_AREA_PX) -> FilterDecision:
    """Drop images whose largest text region is smaller than the threshold.

    The comparison is strict: exactly ``min_area_px`` is kept. Images
    with no detected text at all are dropped (their largest region is 0).
    """
    if largest_text_area(candidate.ocr) < min_area_px:
        return FilterDecision(False, "area")
    return FilterDecision(True)


def parse_candidate(record: Mapping, where: str = "record") -> Candidate:
    """Build a Candidate from one candidates.jsonl record."""
    for key in ("group_id", "candidate_id", "quality", "aesthetic", "ocr"):
        if key not in record:
            raise SampleFormatError(f"{where}: missing required key {key!r}")
    try:
        return Candidate(
            group_id=str(record["group_id"]),
            candidate_id=int(record["candidate_id"]),
            quality=float(record["quality"]),
            aesthetic=float(record["aesthetic"]),
            # Text content is irrelevant to the area filter; keep tokens
            # exactly as detected so symbol-only regions still count.
            ocr=parse_ocr(record["ocr"], policy="exact", where=f"{where} ocr"),
        )
    except SampleFormatError:
        raise
    except (TypeError, ValueError) as exc:
        raise SampleFormatError(f"{where}: {exc}") from exc


# ---------------------------------------------------------------------------
# Instruction templates for the external LLM adapters.

ENHANCER_TEMPLATE = """Simple Caption: {simple_caption}

Above is the simple caption of an image with text. Please deduce the detailed description of the image based on this simple caption. Note:

1.The description should only include visual elements and should not contain any extended meanings.
2.The visual elements should be as rich as possible, such as the main objects in the image, their respective attributes, the spatial relationships between the objects, lighting and shadows, color style, any text in the image and its style, etc.
3.The output description should be a single paragraph and should not be structured.
4.The description should avoid certain situations, such as pure white or black backgrounds, blurry text, excessive rendering of text, or harsh visual styles.
5.The detailed caption should be human-readable and fluent.
6.Avoid using vague expressions such as "may be" or "might be"; the generated caption must be in a definitive, narrative tone.
7.Do not use negative sentence structures, such as "there is nothing in the image," etc. The entire caption should directly describe the content of the image.
8.The entire output should be limited to 200 words."""

RECAPTION_TEMPLATE = """Image: {image}
Original Caption: {original_caption}
Instruction: This is the caption of an image with text rendered on and the corresponding image. There might be some artifacts in the image. For example, some of the texts were not be rendered correctly in the generated image. I need you to refer to the provided caption and corresponding generated image, refine the caption based on the generated image. Note: 1.The refined caption should fully describe the generated image.
2.In the refinded caption, the misalignment of the original caption and the generated image should be fixed and the other visual details should be keeped.
3.Directly output the refined caption.
4.The output description should be a single paragraph and should not be structured.
5.The entire output should be limited to 200 words."""

REFINEMENT_TEMPLATE = """Below is the caption of an image along with the text I provided. Please revise this caption, ensuring that the revised caption does not include the text I provided while maintaining the original meaning as much as possible. Note:
1.The refined caption should be kept brief and concise, and it should describe an image containing no text.
2.Directly give me the refined caption.
3.Maybe the refined caption could start with "An image of..." or "A picture of...".
4.Remember the provided text must not be included in the refined caption.
5.The refined caption should be fluent.
6.Most importantly: the refined caption must not contain any text to be rendered on the image.

Simple Caption: {simple_caption}

Text: {ocr_results}"""

_INSTRUCTION_TEMPLATES = {
    "enhancer": (ENHANCER_TEMPLATE, ("simple_caption",)),
    "recaption": (RECAPTION_TEMPLATE, ("image", "original_caption")),
    "refinement": (REFINEMENT_TEMPLATE, ("simple_caption", "ocr_results")),
}

INSTRUCTION_KINDS = tuple(_INSTRUCTION_TEMPLATES)


def render_instruction(kind: str, slots: Mapping[str, object]) -> str:
    """Render one of the fixed instruction templates, byte-stable.

    ``slots`` must provide every placeholder the template declares
    (list/tuple values are joined with ", "). Unknown kinds or slots and
    missing slots are errors naming the offender.
    """
    if kind not in _INSTRUCTION_TEMPLATES:
        raise ValueError(f"unknown instruction kind: {kind!r} (expected one of {INSTRUCTION_KINDS})")
    template, required = _INSTRUCTION_TEMPLATES[kind]
    prepared = {}
    for name in required:
        if name not in slots:
            raise ValueError(f"instruction {kind!r}: missing slot {name!r}")
        value = slots[name]
        prepared[name] = ", ".join(str(v) for v in value) if isinstance(value, (list, tuple)) else str(value)
    extra = set(slots) - set(required)
    if extra:
        raise ValueError(f"instruction {kind!r}: unknown slot(s) {sorted(extra)}")
    return template.format(**prepared)


# ---------------------------------------------------------------------------
# Out-of-process LLM exchange. Enhancement and recaptioning run against
# external models; this toolkit only writes rendered instructions out and
# reads completed responses back, keyed by request id.


@dataclass(frozen=True)
class LlmRequest:
    """One rendered instruction awaiting an external model."""

    request_id: str
    kind: str
    instruction: str


def build_llm_request(request_id: str, kind: str, slots: Mapping[str, object]) -> LlmRequest:
    return LlmRequest(request_id, kind, render_instruction(kind, slots))


def write_llm_requests(requests: Iterable[LlmRequest], path: str | Path) -> None:
    lines = [
        json.dumps(
            {"request_id": r.request_id, "kind": r.kind, "instruction": r.instruction},
            ensure_ascii=False,
        )
        for r in requests
    ]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_llm_responses(path: str | Path) -> dict[str, str]:
    """Load responses keyed by request id; a duplicated id is an error."""
    responses: dict[str, str] = {}
    for lineno, record in iter_jsonl(path):
        try:
            rid, response = record["request_id"], record["response"]
        except KeyError as exc:
            raise SampleFormatError(f"line {lineno}: missing key {exc}") from exc
        if rid in responses:
            raise SampleFormatError(f"line {lineno}: duplicate response for request {rid!r}")
        responses[rid] = response
    return responses


# ---------------------------------------------------------------------------
# Benchmark prompts.

PROMPT_CONNECTOR = ", with the text on it: "


def classify_difficulty(word_count: int) -> str | None:
    """Map a total rendered word count to its tier, or None if out of range."""
    if EASY_RANGE[0] <= word_count <= EASY_RANGE[1]:
        return "easy"
    if MEDIUM_RANGE[0] <= word_count <= MEDIUM_RANGE[1]:
        return "medium"
    if HARD_RANGE[0] <= word_count <= HARD_RANGE[1]:
        return "hard"
    return None


def total_word_count(text_captions: Sequence[str]) -> int:
    return sum(len(caption.split()) for caption in text_captions)


@dataclass(frozen=True)
class BenchPrompt:
    """A fully rendered benchmark prompt with its difficulty tier."""

    image_caption: str
    text_captions: tuple[str, ...]
    conditions: tuple[AttributeCondition, ...]
    difficulty: str
    rendered: str


def _condition_suffix(cond: AttributeCondition) -> str:
    if cond.kind == "color":
        return f" in {cond.value}"
    if cond.kind == "font":
        return f", {FONT_DESCRIPTIONS[cond.value]}"
    return f", at the {cond.value} of the image"


def render_bench_prompt(
    image_caption: str,
    text_captions: Sequence[str],
    conditions: Sequence[AttributeCondition] = (),
) -> str:
    """Render the prompt grammar without tier/consistency validation.

    Conditions reference text captions by index via ``word_index``.
    Unconditioned prompts separate quoted captions with ", "; as soon as
    any caption carries a condition, units are separated with "; ".
    """
    by_index = {c.word_index: c for c in conditions}
    units = []
    for k, caption in enumerate(text_captions):
        unit = f'"{caption}"'
        if k in by_index:
            unit += _condition_suffix(by_index[k])
        units.append(unit)
    sep = "; " if by_index else ", "
    return f"{image_caption}{PROMPT_CONNECTOR}{sep.join(units)}."


def make_bench_prompt(
    image_caption: str,
    text_captions: Sequence[str],
    conditions: Sequence[AttributeCondition] = (),
) -> BenchPrompt:
    """Validate, classify, and render one benchmark prompt.

    Raises ValueError when the word count falls outside every tier, when
    conditions appear on a non-easy prompt, when one caption carries two
    conditions, or when both members of a contrasting font pair are
    requested in the same prompt.
    """
    image_caption = image_caption.strip()
    if not image_caption:
        raise ValueError("image caption must be non-empty")
    if '"' in image_caption:
        raise ValueError('image caption must not contain double quotes')
    captions = tuple(c.strip() for c in text_captions)
    if not captions or any(not c for c in captions):
        raise ValueError("text captions must be non-empty")
    if any('"' in c for c in captions):
        raise ValueError('text captions must not contain double quotes')

    count = total_word_count(captions)
    difficulty = classify_difficulty(count)
    if difficulty is None:
        raise ValueError(f"word count {count} outside all difficulty tiers")

    seen: set[int] = set()
    fonts: list[str] = []
    for cond in conditions:
        if cond.word_index >= len(captions):
            raise ValueError(
                f"condition index {cond.word_index} out of range for {len(captions)} captions"
            )
        if cond.word_index in seen:
            raise ValueError(f"caption {cond.word_index} carries more than one condition")
        seen.add(cond.word_index)
        if cond.kind == "font":
            fonts.append(cond.value)
    if conditions and difficulty != "easy":
        raise ValueError(f"conditions are only allowed on easy prompts, got {difficulty}")
    for style in fonts:
        if font_pair_opposite(style) in fonts:
            raise ValueError(
                f"contrasting font styles {style!r} and {font_pair_opposite(style)!r} "
                "must not appear in the same prompt"
            )

    rendered = render_bench_prompt(image_caption, captions, conditions)
    return BenchPrompt(image_caption, captions, tuple(conditions), difficulty, rendered)


_QUOTED = re.compile(r'"([^"]*)"')


def parse_bench_prompt(rendered: str) -> list[str]:
    """Extract the quoted text captions back out of a rendered prompt."""
    return _QUOTED.findall(rendered)
