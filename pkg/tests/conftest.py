"""Shared fixtures: deterministic synthetic corpora for the file-based tests."""
from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

VOCAB = [
    "area", "people", "music", "poster", "remixed", "unreleased", "good",
    "sandwich", "combo", "grilled", "chicken", "lettuce", "tomato", "mayo",
    "fries", "drink", "pepsi", "movie", "without", "eyes", "coffee", "shop",
    "open", "daily", "fresh", "bread", "bakery", "vintage", "records", "sale",
    "garden", "party", "summer", "festival", "night", "market", "street",
    "food", "craft", "beer",
]

COLOR_VALUES = ["red", "blue", "green", "yellow"]
FONT_VALUES = ["serif", "cursive style", "3D style", "upright"]
POSITION_VALUES = ["top", "bottom", "center", "upper left corner"]


def _random_bbox(rng: random.Random, width: int = 1024, height: int = 1024):
    w = rng.randint(40, 200)
    h = rng.randint(20, 80)
    x0 = rng.randint(0, width - w - 1)
    y0 = rng.randint(0, height - h - 1)
    return [x0, y0, x0 + w, y0 + h]


def _mangle(rng: random.Random, word: str) -> str:
    pos = rng.randrange(len(word))
    repl = rng.choice("abcdefghijklmnopqrstuvwxyz".replace(word[pos], ""))
    return word[:pos] + repl + word[pos + 1 :]


def build_fixture_records(
    n: int = 50, with_conditions: bool = True, seed: int = 7
) -> list[dict]:
    """A deterministic mixed-quality corpus in the samples.jsonl wire format.

    Roughly a third of the samples reproduce their words exactly, a third
    contain typos/omissions/noise, and a third carry attribute conditions.
    """
    rng = random.Random(seed)
    records = []
    for i in range(n):
        gt_words = rng.sample(VOCAB, rng.randint(2, 6))
        flavor = i % 3
        ocr_words = []
        if flavor == 0:  # perfect reproduction, shuffled order
            detected = list(gt_words)
            rng.shuffle(detected)
        elif flavor == 1:  # typos, omissions, spurious extras
            detected = []
            for w in gt_words:
                roll = rng.random()
                if roll < 0.2:
                    continue
                detected.append(_mangle(rng, w) if roll < 0.5 else w)
            if rng.random() < 0.5:
                detected.append(rng.choice(VOCAB))
        else:  # exact words, conditions attached below
            detected = list(gt_words)
        for w in detected:
            ocr_words.append({
                "text": w,
                "bbox": _random_bbox(rng),
                "confidence": round(rng.uniform(0.5, 1.0), 3),
            })
        record = {
            "id": f"s{i:03d}",
            "gt_words": gt_words,
            "ocr": {"image_width": 1024, "image_height": 1024, "words": ocr_words},
        }
        if with_conditions and flavor == 2:
            kind = ("color", "font", "position")[i % 9 // 3]
            values = {
                "color": COLOR_VALUES, "font": FONT_VALUES, "position": POSITION_VALUES,
            }[kind]
            record["conditions"] = [{
                "word_index": rng.randrange(len(gt_words)),
                "kind": kind,
                "value": rng.choice(values),
            }]
        records.append(record)
    return records


def write_jsonl(records: list[dict], path: Path) -> Path:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


@pytest.fixture
def fixture_corpus_path(tmp_path: Path) -> Path:
    return write_jsonl(build_fixture_records(), tmp_path / "samples.jsonl")


@pytest.fixture
def perfect_corpus_path(tmp_path: Path) -> Path:
    rng = random.Random(3)
    records = []
    for i in range(5):
        words = rng.sample(VOCAB, 3)
        records.append({
            "id": f"p{i}",
            "gt_words": words,
            "ocr": {
                "image_width": 512,
                "image_height": 512,
                "words": [
                    {"text": w, "bbox": [10 + 60 * k, 10, 60 + 60 * k, 40], "confidence": 0.9}
                    for k, w in enumerate(words)
                ],
            },
        })
    return write_jsonl(records, tmp_path / "perfect.jsonl")
