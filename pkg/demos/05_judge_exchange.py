# The two-phase judge protocol for color/font/position conditions.
#
# Position conditions are settled geometrically (a thirds grid over the
# normalized bbox center). Color and font conditions need eyes: the
# toolkit crops slightly beyond the matched word's bbox and emits one
# fixed-format question per condition, then folds the answers back in.
# Everything runs offline; any VQA endpoint can play the judge.
import tempfile
from pathlib import Path

from texteval import (
    AttributeCondition,
    GroundTruthText,
    OcrResult,
    OcrWord,
    Sample,
    evaluate_corpus,
    read_judge_requests,
    write_judge_answers,
    read_judge_answers,
    write_judge_requests,
)

samples = [
    Sample(
        "logo-1",
        GroundTruthText(
            ("area", "people"),
            (
                AttributeCondition("color", "red", 0),
                AttributeCondition("font", "serif", 1),
            ),
        ),
        OcrResult(
            (
                OcrWord("area", (60, 80, 240, 140), 0.97),
                OcrWord("people", (300, 80, 520, 140), 0.98),
            ),
            1024, 1024,
        ),
    ),
    Sample(
        "banner-1",
        GroundTruthText(("open",), (AttributeCondition("position", "top", 0),)),
        OcrResult((OcrWord("open", (400, 20, 620, 90), 0.91),), 1024, 1024),
    ),
]

workdir = Path(tempfile.mkdtemp(prefix="texteval-judge-"))

# Phase 1: position settles now; color/font become questions.
phase1 = evaluate_corpus(samples)
print("attribute scores before judging:", phase1.report.attribute_scores)
requests_path = workdir / "judge_requests.jsonl"
write_judge_requests(phase1.queries, requests_path)
for query in read_judge_requests(requests_path):
    print(f"  {query.query_id}: {query.question}")
    print(f"      crop={query.crop_bbox}, legal answers={list(query.expected_answers)}")

# Phase 2: any judge can answer; here we hand-write a verdict each.
answers_path = workdir / "judge_answers.jsonl"
write_judge_answers({"logo-1#c0": "yes", "logo-1#c1": "sans-serif"}, answers_path)
phase2 = evaluate_corpus(samples, answers=read_judge_answers(answers_path))
print()
print("attribute scores after judging :", phase2.report.attribute_scores)
print("(the font answer contradicted the demanded style, so font scores 0)")
