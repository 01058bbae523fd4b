# Evaluating a whole corpus from a JSONL file.
#
# Each line pairs the demanded words with one image's OCR output. The
# evaluator computes per-sample metrics, difficulty-tier counts, and
# corpus means/stds, and can write everything as a schema-stable report.
import json
import tempfile
from pathlib import Path

from texteval import evaluate_corpus, load_samples, write_report

records = [
    {  # perfect reproduction, different order
        "id": "poster-1",
        "gt_words": ["AREA", "PEOPLE"],
        "ocr": {"image_width": 1024, "image_height": 1024, "words": [
            {"text": "PEOPLE", "bbox": [300, 80, 520, 140], "confidence": 0.98},
            {"text": "AREA", "bbox": [60, 80, 240, 140], "confidence": 0.97},
        ]},
    },
    {  # one near miss, one dropped word
        "id": "poster-2",
        "gt_words": ["GOOD", "MUSIC", "REMIXED"],
        "ocr": {"image_width": 1024, "image_height": 1024, "words": [
            {"text": "GOOD", "bbox": [100, 100, 260, 160], "confidence": 0.95},
            {"text": "REMIX", "bbox": [100, 200, 300, 260], "confidence": 0.71},
        ]},
    },
    {  # OCR line containing two words splits into two tokens
        "id": "menu-1",
        "gt_words": ["Sandwich", "Combo"],
        "ocr": {"image_width": 800, "image_height": 600, "words": [
            {"text": "Sandwich Combo", "bbox": [40, 40, 400, 90], "confidence": 0.92},
        ]},
    },
]

workdir = Path(tempfile.mkdtemp(prefix="texteval-demo-"))
samples_path = workdir / "samples.jsonl"
samples_path.write_text("".join(json.dumps(r) + "\n" for r in records))

samples = load_samples(samples_path)  # tokens normalized here
result = evaluate_corpus(samples)

for sample_report in result.report.samples:
    print(
        f"{sample_report.sample_id:10s} pned={sample_report.pned:.3f} "
        f"recall={sample_report.recall:.2f} f1={sample_report.ocr_f1:.2f} "
        f"exact={sample_report.sentence_exact}"
    )
print()
print("corpus means:", {k: round(v, 4) for k, v in result.report.means.items()})
print("tier counts :", dict(result.report.tier_counts))

report_path = workdir / "report.json"
write_report(result.report, report_path)
print("report written to", report_path)
