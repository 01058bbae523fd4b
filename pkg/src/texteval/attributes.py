"""Attribute-condition evaluation: fuzzy matching, crop geometry, judge queries.

Color and font conditions are checked by an external visual judge: the
conditioned word is fuzzy-matched against the OCR tokens, its bbox is
expanded slightly and cropped, and a fixed-format question is emitted.
Position conditions are checked geometrically against a 3x3-thirds grid
over the normalized bbox center, with no judge involved. Conditions
whose word was never detected count as unsatisfied.

The judge exchange is file-based and two-phase: requests out as
``judge_requests.jsonl``, answers back as ``judge_answers.jsonl`` keyed
by query id, so the toolkit stays runnable offline against any endpoint.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .conditions import font_pair_opposite
from .core import (
    AttributeCondition,
    GroundTruthText,
    OcrResult,
    OcrWord,
    SampleFormatError,
    atomic_write_text,
    iter_jsonl,
)
from .ocr_metrics import MatchingPolicy, match_word_sets

DEFAULT_CROP_MARGIN = 0.10

COLOR_QUESTION = 'The text "{text}" is in the color of {color}? Answer me using "yes" or "no".'
FONT_QUESTION = (
    'The text "{text}" is {font_a} or {font_b}? '
    'Answer me using either "{font_a}" or "{font_b}" only.'
)


@dataclass(frozen=True)
class JudgeQuery:
    """One question for the external judge, with its legal answers."""

    query_id: str
    sample_id: str
    question: str
    crop_bbox: tuple[float, float, float, float] | None
    expected_answers: tuple[str, ...]


def fuzzy_match_conditions(
    gt: GroundTruthText,
    ocr: OcrResult,
    policy: MatchingPolicy = MatchingPolicy(),
) -> list[tuple[AttributeCondition, OcrWord | None]]:
    """Pair each conditioned GT word with at most one detected word.

    Uses the same optimal assignment as the corpus metrics, restricted
    to pairs at or under the policy threshold; conditions whose word
    found no acceptable partner map to None.
    """
    pairs = match_word_sets(list(gt.words), ocr.token_list())
    by_gt_index = {
        i: ocr.words[j] for i, j, d in pairs if d <= policy.ned_threshold
    }
    return [(cond, by_gt_index.get(cond.word_index)) for cond in gt.conditions]


def expand_crop(
    bbox: Sequence[float],
    image_width: float,
    image_height: float,
    margin_frac: float = DEFAULT_CROP_MARGIN,
) -> tuple[float, float, float, float]:
    """Grow a bbox by a fraction of its own side lengths, clamped to the image.

    The crop handed to the judge is slightly larger than the detection
    so that cut-off strokes do not skew the verdict. Zero-area boxes and
    negative margins are errors.
    """
    x0, y0, x1, y1 = (float(v) for v in bbox)
    if x0 >= x1 or y0 >= y1:
        raise ValueError(f"degenerate bbox {tuple(bbox)}: zero area")
    if margin_frac < 0:
        raise ValueError(f"margin_frac must be >= 0, got {margin_frac}")
    dx = margin_frac * (x1 - x0)
    dy = margin_frac * (y1 - y0)
    return (
        max(0.0, x0 - dx),
        max(0.0, y0 - dy),
        min(float(image_width), x1 + dx),
        min(float(image_height), y1 + dy),
    )


def regions_containing(cx: float, cy: float) -> tuple[str, ...]:
    """All named regions whose range contains a normalized center point."""
    hits = []
    if cy < 1 / 3:
        hits.append("top")
    if cy > 2 / 3:
        hits.append("bottom")
    if cx < 1 / 3:
        hits.append("left")
    if cx > 2 / 3:
        hits.append("right")
    if cx < 1 / 3 and cy < 1 / 3:
        hits.append("upper left corner")
    if cx < 1 / 3 and cy > 2 / 3:
        hits.append("lower left corner")
    if cx > 2 / 3 and cy < 1 / 3:
        hits.append("upper right corner")
    if cx > 2 / 3 and cy > 2 / 3:
        hits.append("lower right corner")
    if 1 / 3 <= cx <= 2 / 3 and 1 / 3 <= cy <= 2 / 3:
        hits.append("center")
    return tuple(hits)


def position_score(
    position: str,
    bbox: Sequence[float],
    image_width: float,
    image_height: float,
) -> bool:
    """Whether a bbox center falls in the named region of the image.

    Regions are thirds of the normalized unit square: "top" means
    center_y < 1/3, "upper left corner" means both coordinates < 1/3,
    "center" means both within [1/3, 2/3], and so on.
    """
    x0, y0, x1, y1 = (float(v) for v in bbox)
    cx = (x0 + x1) / 2 / image_width
    cy = (y0 + y1) / 2 / image_height
    if position not in _POSITION_TESTS:
        raise ValueError(f"unknown position name: {position!r}")
    return _POSITION_TESTS[position](cx, cy)


_POSITION_TESTS = {
    "top": lambda cx, cy: cy < 1 / 3,
    "bottom": lambda cx, cy: cy > 2 / 3,
    "left": lambda cx, cy: cx < 1 / 3,
    "right": lambda cx, cy: cx > 2 / 3,
    "upper left corner": lambda cx, cy: cx < 1 / 3 and cy < 1 / 3,
    "lower left corner": lambda cx, cy: cx < 1 / 3 and cy > 2 / 3,
    "upper right corner": lambda cx, cy: cx > 2 / 3 and cy < 1 / 3,
    "lower right corner": lambda cx, cy: cx > 2 / 3 and cy > 2 / 3,
    "center": lambda cx, cy: 1 / 3 <= cx <= 2 / 3 and 1 / 3 <= cy <= 2 / 3,
}


def render_judge_query(
    condition: AttributeCondition,
    matched_word: str,
    *,
    query_id: str = "",
    sample_id: str = "",
    crop_bbox: Sequence[float] | None = None,
) -> JudgeQuery:
    """Render the fixed question format for a color or font condition.

    Position conditions are scored geometrically and never reach the
    judge; passing one is an error.
    """
    if condition.kind == "color":
        question = COLOR_QUESTION.format(text=matched_word, color=condition.value)
        expected: tuple[str, ...] = ("yes", "no")
    elif condition.kind == "font":
        opposite = font_pair_opposite(condition.value)
        question = FONT_QUESTION.format(
            text=matched_word, font_a=condition.value, font_b=opposite
        )
        expected = (condition.value, opposite)
    else:
        raise ValueError(f"{condition.kind} conditions are not judged by query")
    return JudgeQuery(
        query_id=query_id,
        sample_id=sample_id,
        question=question,
        crop_bbox=tuple(float(v) for v in crop_bbox) if crop_bbox is not None else None,
        expected_answers=expected,
    )


_COLOR_Q = re.compile(
    r'^The text "(?P<text>.*)" is in the color of (?P<color>.*)\? '
    r'Answer me using "yes" or "no"\.$'
)
_FONT_Q = re.compile(
    r'^The text "(?P<text>.*)" is (?P<font_a>.*) or (?P<font_b>.*)\? '
    r'Answer me using either "(?P=font_a)" or "(?P=font_b)" only\.$'
)


def parse_color_question(question: str) -> tuple[str, str]:
    """Recover (text, color) from a rendered color question."""
    m = _COLOR_Q.match(question)
    if not m:
        raise ValueError(f"not a color question: {question!r}")
    return m.group("text"), m.group("color")


def parse_font_question(question: str) -> tuple[str, str, str]:
    """Recover (text, font_a, font_b) from a rendered font question."""
    m = _FONT_Q.match(question)
    if not m:
        raise ValueError(f"not a font question: {question!r}")
    return m.group("text"), m.group("font_a"), m.group("font_b")


# ---------------------------------------------------------------------------
# Scoring and the file exchange.


@dataclass(frozen=True)
class ConditionOutcome:
    """One condition's verdict; satisfied is None while awaiting the judge."""

    sample_id: str
    kind: str
    satisfied: bool | None
    query_id: str | None = None


def score_attributes(outcomes: Iterable[ConditionOutcome]) -> dict[str, float]:
    """Per-kind satisfaction rates: satisfied / total conditions of that kind.

    Kinds with no conditions are absent from the result. Unresolved
    outcomes (still awaiting an answer) are an error.
    """
    totals: dict[str, int] = {}
    satisfied: dict[str, int] = {}
    for outcome in outcomes:
        if outcome.satisfied is None:
            raise ValueError(
                f"condition outcome for query {outcome.query_id!r} is unresolved"
            )
        totals[outcome.kind] = totals.get(outcome.kind, 0) + 1
        satisfied[outcome.kind] = satisfied.get(outcome.kind, 0) + bool(outcome.satisfied)
    return {kind: satisfied[kind] / totals[kind] for kind in sorted(totals)}


def resolve_outcome(query: JudgeQuery, condition: AttributeCondition, answer: str) -> bool:
    """Interpret a judge answer: "yes" satisfies color, the GT style satisfies font."""
    if answer not in query.expected_answers:
        raise ValueError(
            f"query {query.query_id!r}: answer {answer!r} not in "
            f"expected answers {list(query.expected_answers)}"
        )
    if condition.kind == "color":
        return answer == "yes"
    return answer == condition.value


def write_judge_requests(queries: Sequence[JudgeQuery], path: str | Path) -> None:
    lines = []
    for q in queries:
        lines.append(
            json.dumps(
                {
                    "query_id": q.query_id,
                    "sample_id": q.sample_id,
                    "question": q.question,
                    "crop_bbox": list(q.crop_bbox) if q.crop_bbox is not None else None,
                    "expected_answers": list(q.expected_answers),
                },
                ensure_ascii=False,
            )
        )
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_judge_requests(path: str | Path) -> list[JudgeQuery]:
    queries = []
    for lineno, record in iter_jsonl(path):
        try:
            queries.append(
                JudgeQuery(
                    query_id=record["query_id"],
                    sample_id=record["sample_id"],
                    question=record["question"],
                    crop_bbox=tuple(record["crop_bbox"]) if record.get("crop_bbox") else None,
                    expected_answers=tuple(record["expected_answers"]),
                )
            )
        except KeyError as exc:
            raise SampleFormatError(f"line {lineno}: missing key {exc}") from exc
    return queries


def write_judge_answers(answers: Mapping[str, str], path: str | Path) -> None:
    lines = [
        json.dumps({"query_id": qid, "answer": answer}, ensure_ascii=False)
        for qid, answer in answers.items()
    ]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_judge_answers(path: str | Path) -> dict[str, str]:
    """Load answers keyed by query id; a duplicated id is an error."""
    answers: dict[str, str] = {}
    for lineno, record in iter_jsonl(path):
        try:
            qid, answer = record["query_id"], record["answer"]
        except KeyError as exc:
            raise SampleFormatError(f"line {lineno}: missing key {exc}") from exc
        if qid in answers:
            raise SampleFormatError(f"line {lineno}: duplicate answer for query {qid!r}")
        answers[qid] = answer
    return answers
