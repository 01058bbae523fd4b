"""Shared domain types, token normalization, and JSONL ingest/serialization.

The wire format for evaluation corpora is one JSON record per line:

    {"id": str,
     "gt_words": [str, ...],
     "conditions": [{"word_index": int, "kind": str, "value": str}, ...],   # optional
     "ocr": {"image_width": int, "image_height": int,
             "words": [{"text": str, "bbox": [x0, y0, x1, y1], "confidence": float}, ...]}}

Ground-truth and OCR strings are split on whitespace into word tokens
before any metric sees them; every token is normalized according to the
active policy at load time. All types are immutable after construction
and safe to share across workers.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .conditions import CONDITION_KINDS, allowed_values

NORMALIZATION_POLICIES = ("default", "exact")

#: Metric keys averaged by aggregate(), in report order.
METRIC_FIELDS = ("pned", "recall", "precision", "ocr_f1", "word_accuracy", "sentence_exact")


class SampleFormatError(ValueError):
    """An input record violates the samples/candidates wire schema."""


def normalize_token(raw: str, policy: str = "default") -> str:
    """Normalize one word token.

    Under the "default" policy the token is lowercased and surrounding
    non-alphanumeric characters are stripped; interior characters are
    preserved. Under "exact" the token is returned unchanged. The result
    may be empty; callers drop empty tokens. Idempotent under both
    policies.
    """
    if policy == "exact":
        return raw
    if policy != "default":
        raise ValueError(f"unknown normalization policy: {policy!r}")
    # Lowercase first: some code points lower to multi-character
    # sequences, and stripping afterwards keeps the result a fixpoint.
    s = raw.lower()
    start, end = 0, len(s)
    while start < end and not s[start].isalnum():
        start += 1
    while end > start and not s[end - 1].isalnum():
        end -= 1
    return s[start:end]


def tokenize(text: str, policy: str = "default") -> list[str]:
    """Split on whitespace, normalize each piece, and drop empty results."""
    out = []
    for piece in text.split():
        tok = normalize_token(piece, policy)
        if tok:
            out.append(tok)
    return out


@dataclass(frozen=True)
class AttributeCondition:
    """A per-word constraint on rendered text: color, font, or position."""

    kind: str
    value: str
    word_index: int = 0

    def __post_init__(self) -> None:
        if self.kind not in CONDITION_KINDS:
            raise ValueError(f"unknown condition kind: {self.kind!r}")
        if self.value not in allowed_values(self.kind):
            raise ValueError(f"unknown {self.kind} condition value: {self.value!r}")
        if self.word_index < 0:
            raise ValueError(f"condition word_index must be >= 0, got {self.word_index}")


@dataclass(frozen=True)
class GroundTruthText:
    """The ordered word tokens a prompt demands, plus optional conditions."""

    words: tuple[str, ...]
    conditions: tuple[AttributeCondition, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "conditions", tuple(self.conditions))
        for w in self.words:
            if not w:
                raise ValueError("ground-truth words must be non-empty after normalization")
        for cond in self.conditions:
            if cond.word_index >= len(self.words):
                raise ValueError(
                    f"condition word_index {cond.word_index} out of range "
                    f"for {len(self.words)} words"
                )


@dataclass(frozen=True)
class OcrWord:
    """One detected word: token text, pixel bbox (x0, y0, x1, y1), confidence."""

    text: str
    bbox: tuple[float, float, float, float]
    confidence: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "bbox", tuple(float(v) for v in self.bbox))
        x0, y0, x1, y1 = self.bbox
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"degenerate bbox {self.bbox}: requires x0 < x1 and y0 < y1")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")

    @property
    def area(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return (x1 - x0) * (y1 - y0)


@dataclass(frozen=True)
class OcrResult:
    """All detected words for one image of known pixel dimensions."""

    words: tuple[OcrWord, ...]
    image_width: int
    image_height: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(self.words))
        if self.image_width <= 0 or self.image_height <= 0:
            raise ValueError(
                f"image dimensions must be positive, got "
                f"{self.image_width}x{self.image_height}"
            )
        for w in self.words:
            x0, y0, x1, y1 = w.bbox
            if x0 < 0 or y0 < 0 or x1 > self.image_width or y1 > self.image_height:
                raise ValueError(
                    f"bbox {w.bbox} outside image bounds "
                    f"{self.image_width}x{self.image_height}"
                )

    def token_list(self) -> list[str]:
        return [w.text for w in self.words]


@dataclass(frozen=True)
class Sample:
    """One evaluation record: id, demanded words, and the OCR observation."""

    sample_id: str
    gt: GroundTruthText
    ocr: OcrResult


@dataclass(frozen=True)
class SampleReport:
    """Per-sample metric values."""

    sample_id: str
    gt_word_count: int
    pned: float
    recall: float
    precision: float
    ocr_f1: float
    word_accuracy: float
    sentence_exact: bool
    attribute_scores: Mapping[str, float] | None = None

    def __post_init__(self) -> None:
        if self.precision + self.recall == 0:
            expected = 0.0
        else:
            expected = 2 * self.precision * self.recall / (self.precision + self.recall)
        if abs(self.ocr_f1 - expected) > 1e-12:
            raise ValueError(
                f"ocr_f1 {self.ocr_f1} inconsistent with precision/recall "
                f"(expected {expected})"
            )

    def to_dict(self) -> dict:
        out: dict = {
            "sample_id": self.sample_id,
            "gt_word_count": self.gt_word_count,
            "pned": self.pned,
            "recall": self.recall,
            "precision": self.precision,
            "ocr_f1": self.ocr_f1,
            "word_accuracy": self.word_accuracy,
            "sentence_exact": self.sentence_exact,
        }
        if self.attribute_scores is not None:
            out["attribute_scores"] = dict(self.attribute_scores)
        return out


@dataclass(frozen=True)
class AggregateReport:
    """Corpus-level summary: per-sample reports plus means/stds and tier counts."""

    samples: tuple[SampleReport, ...]
    count: int
    means: Mapping[str, float]
    stds: Mapping[str, float]
    tier_counts: Mapping[str, int]
    attribute_scores: Mapping[str, float] | None = None

    def __post_init__(self) -> None:
        for key, value in self.means.items():
            if key != "pned" and not -1e-12 <= value <= 1 + 1e-12:
                raise ValueError(f"mean of [0,1] metric {key!r} is {value}, outside [0, 1]")

    def to_dict(self) -> dict:
        agg: dict = {
            "count": self.count,
            "means": dict(self.means),
            "stds": dict(self.stds),
            "tier_counts": dict(self.tier_counts),
        }
        if self.attribute_scores is not None:
            agg["attribute_scores"] = dict(self.attribute_scores)
        return {"samples": [s.to_dict() for s in self.samples], "aggregate": agg}


# ---------------------------------------------------------------------------
# Ingestion


def _require(record: Mapping, key: str, where: str):
    if key not in record:
        raise SampleFormatError(f"{where}: missing required key {key!r}")
    return record[key]


def _parse_gt(record: Mapping, policy: str, where: str, sample_id: str) -> GroundTruthText:
    raw_words = _require(record, "gt_words", where)
    if not isinstance(raw_words, list) or not all(isinstance(w, str) for w in raw_words):
        raise SampleFormatError(f"{where}: gt_words must be a list of strings")
    tokens: list[str] = []
    for entry in raw_words:
        entry_tokens = tokenize(entry, policy)
        if not entry_tokens:
            raise SampleFormatError(
                f"sample {sample_id!r}: gt word {entry!r} is empty after normalization"
            )
        tokens.extend(entry_tokens)
    conditions = []
    for k, cond in enumerate(record.get("conditions") or ()):
        try:
            parsed = AttributeCondition(
                kind=_require(cond, "kind", where),
                value=_require(cond, "value", where),
                word_index=int(_require(cond, "word_index", where)),
            )
        except ValueError as exc:
            raise SampleFormatError(f"sample {sample_id!r}: condition {k}: {exc}") from exc
        if parsed.word_index >= len(tokens):
            raise SampleFormatError(
                f"sample {sample_id!r}: condition {k} word_index {parsed.word_index} "
                f"out of range for {len(tokens)} words"
            )
        conditions.append(parsed)
    return GroundTruthText(tuple(tokens), tuple(conditions))


def parse_ocr(record: Mapping, policy: str = "exact", where: str = "ocr") -> OcrResult:
    """Build an OcrResult from its wire dict.

    Multi-word OCR strings are split on whitespace into one token per
    word, each inheriting the line's bbox. Bboxes are clamped to the
    image bounds; a bbox that degenerates after clamping (or was
    inverted to begin with) is an error. Tokens that normalize to empty
    are dropped.
    """
    width = int(_require(record, "image_width", where))
    height = int(_require(record, "image_height", where))
    if width <= 0 or height <= 0:
        raise SampleFormatError(f"{where}: image dimensions must be positive")
    words: list[OcrWord] = []
    for k, entry in enumerate(_require(record, "words", where)):
        text = _require(entry, "text", f"{where} word {k}")
        bbox = _require(entry, "bbox", f"{where} word {k}")
        if not isinstance(bbox, (list, tuple)) or len(bbox) != 4:
            raise SampleFormatError(f"{where} word {k}: bbox must be [x0, y0, x1, y1]")
        try:
            x0, y0, x1, y1 = (float(v) for v in bbox)
        except (TypeError, ValueError) as exc:
            raise SampleFormatError(f"{where} word {k}: non-numeric bbox {bbox!r}") from exc
        if not all(math.isfinite(v) for v in (x0, y0, x1, y1)):
            raise SampleFormatError(f"{where} word {k}: non-finite bbox {bbox!r}")
        if x0 >= x1 or y0 >= y1:
            raise SampleFormatError(
                f"{where} word {k}: invalid bbox {bbox!r} (requires x0 < x1 and y0 < y1)"
            )
        x0, x1 = max(0.0, min(x0, width)), max(0.0, min(x1, width))
        y0, y1 = max(0.0, min(y0, height)), max(0.0, min(y1, height))
        if x0 >= x1 or y0 >= y1:
            raise SampleFormatError(
                f"{where} word {k}: bbox {bbox!r} lies outside the image"
            )
        confidence = float(entry.get("confidence", 1.0))
        if not 0.0 <= confidence <= 1.0:
            raise SampleFormatError(f"{where} word {k}: confidence {confidence} outside [0, 1]")
        for tok in tokenize(text, policy):
            words.append(OcrWord(tok, (x0, y0, x1, y1), confidence))
    return OcrResult(tuple(words), width, height)


def parse_sample(record: Mapping, policy: str = "default", where: str = "record") -> Sample:
    """Build a Sample from one decoded JSONL record."""
    sample_id = _require(record, "id", where)
    if not isinstance(sample_id, str) or not sample_id:
        raise SampleFormatError(f"{where}: id must be a non-empty string")
    gt = _parse_gt(record, policy, where, sample_id)
    ocr_record = _require(record, "ocr", where)
    try:
        ocr = parse_ocr(ocr_record, policy, where=f"sample {sample_id!r} ocr")
    except ValueError as exc:
        if isinstance(exc, SampleFormatError):
            raise
        raise SampleFormatError(f"sample {sample_id!r}: {exc}") from exc
    return Sample(sample_id, gt, ocr)


def iter_jsonl(path: str | Path) -> Iterable[tuple[int, dict]]:
    """Yield (line_number, decoded object) for every non-blank line."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SampleFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise SampleFormatError(f"line {lineno}: record must be a JSON object")
            yield lineno, obj


def load_samples(path: str | Path, policy: str = "default") -> list[Sample]:
    """Load an evaluation corpus from a JSONL file, in file order.

    Raises SampleFormatError naming the offending line number (malformed
    records) or sample id (semantic violations such as an out-of-range
    condition index). An empty file yields an empty list.
    """
    samples = []
    for lineno, record in iter_jsonl(path):
        try:
            samples.append(parse_sample(record, policy, where=f"line {lineno}"))
        except SampleFormatError:
            raise
        except (TypeError, ValueError) as exc:
            raise SampleFormatError(f"line {lineno}: {exc}") from exc
    return samples


# ---------------------------------------------------------------------------
# Serialization


def sample_to_dict(sample: Sample) -> dict:
    """Inverse of parse_sample; load(serialize(x)) round-trips."""
    out: dict = {"id": sample.sample_id, "gt_words": list(sample.gt.words)}
    if sample.gt.conditions:
        out["conditions"] = [
            {"word_index": c.word_index, "kind": c.kind, "value": c.value}
            for c in sample.gt.conditions
        ]
    out["ocr"] = {
        "image_width": sample.ocr.image_width,
        "image_height": sample.ocr.image_height,
        "words": [
            {"text": w.text, "bbox": list(w.bbox), "confidence": w.confidence}
            for w in sample.ocr.words
        ],
    }
    return out


def dump_samples(samples: Iterable[Sample], path: str | Path) -> None:
    lines = [json.dumps(sample_to_dict(s), ensure_ascii=False) for s in samples]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def write_report(report: AggregateReport, path: str | Path) -> None:
    """Persist an aggregate report as deterministic, human-diffable JSON."""
    atomic_write_text(path, json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")


def report_schema() -> dict:
    """Return the published JSON schema for report files."""
    text = resources.files("texteval").joinpath("report.schema.json").read_text("utf-8")
    return json.loads(text)


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write a file via temp-then-rename so readers never see partial output."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
