import json
from pathlib import Path

import pytest

from texteval.cli import main

from conftest import write_jsonl


def read_report(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def read_jsonl(path: Path) -> list[dict]:
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


class TestEval:
    def test_missing_file_exits_2(self, tmp_path, capsys):
        code = main(["eval", str(tmp_path / "nope.jsonl"), "-o", str(tmp_path / "r.json")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_record_exits_3_naming_line(self, tmp_path, capsys):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "a", "gt_words": ["x"], "ocr": {"image_width": 10, "image_height": 10, "words": []}}\nnot json\n')
        code = main(["eval", str(path), "-o", str(tmp_path / "r.json")])
        assert code == 3
        assert "line 2" in capsys.readouterr().err

    def test_perfect_corpus(self, perfect_corpus_path, tmp_path):
        out = tmp_path / "report.json"
        assert main(["eval", str(perfect_corpus_path), "-o", str(out)]) == 0
        report = read_report(out)
        assert report["aggregate"]["means"]["recall"] == 1.0
        assert report["aggregate"]["means"]["pned"] == 0.0
        assert report["aggregate"]["means"]["sentence_exact"] == 1.0

    def test_pned_example_value(self, tmp_path):
        record = {
            "id": "pen",
            "gt_words": ["cat", "dog"],
            "ocr": {"image_width": 100, "image_height": 100,
                    "words": [{"text": "cot", "bbox": [0, 0, 10, 10], "confidence": 1.0}]},
        }
        path = write_jsonl([record], tmp_path / "s.jsonl")
        out = tmp_path / "report.json"
        assert main(["eval", str(path), "-o", str(out)]) == 0
        report = read_report(out)
        assert report["samples"][0]["pned"] == pytest.approx(4 / 3)

    def test_two_phase_judge_flow(self, fixture_corpus_path, tmp_path):
        out = tmp_path / "report.json"
        requests = tmp_path / "judge_requests.jsonl"
        answers = tmp_path / "judge_answers.jsonl"

        # Phase 1: no answers; report withholds judged kinds, requests emitted.
        assert main([
            "eval", str(fixture_corpus_path), "-o", str(out),
            "--judge-requests", str(requests),
        ]) == 0
        phase1 = read_report(out)
        assert requests.exists()
        agg_scores = phase1["aggregate"].get("attribute_scores", {})
        assert "color" not in agg_scores
        assert "font" not in agg_scores

        # Judge stub answers deterministically.
        assert main(["judge-stub", str(requests), "-o", str(answers)]) == 0

        # Phase 2: answers folded in.
        assert main([
            "eval", str(fixture_corpus_path), "-o", str(out),
            "--judge-requests", str(requests), "--judge-answers", str(answers),
        ]) == 0
        phase2 = read_report(out)
        scores = phase2["aggregate"]["attribute_scores"]
        assert "color" in scores and "font" in scores and "position" in scores
        # Stub answers the first expected answer: "yes" for colors and the
        # demanded style for fonts, so matched conditions are satisfied.
        assert scores["color"] == 1.0
        assert scores["font"] == 1.0

    def test_normalization_flag(self, tmp_path):
        record = {
            "id": "n",
            "gt_words": ["Area"],
            "ocr": {"image_width": 100, "image_height": 100,
                    "words": [{"text": "area", "bbox": [0, 0, 10, 10], "confidence": 1.0}]},
        }
        path = write_jsonl([record], tmp_path / "s.jsonl")
        out = tmp_path / "r.json"
        main(["eval", str(path), "-o", str(out)])
        assert read_report(out)["samples"][0]["recall"] == 1.0
        main(["eval", str(path), "-o", str(out), "--normalization", "exact"])
        # "Area" vs "area": NED 0.25 still matches at 0.3 but not exactly.
        report = read_report(out)
        assert report["samples"][0]["recall"] == 1.0
        assert report["samples"][0]["word_accuracy"] == 0.0


class TestCurate:
    def candidates(self, tmp_path) -> Path:
        big = [0, 0, 100, 100]
        small = [0, 0, 60, 60]
        records = [
            {"group_id": "g1", "candidate_id": 0, "quality": 4.2, "aesthetic": 3.0,
             "ocr": {"image_width": 1024, "image_height": 1024,
                     "words": [{"text": "hi", "bbox": big, "confidence": 1.0}]}},
            {"group_id": "g1", "candidate_id": 1, "quality": 3.9, "aesthetic": 4.0,
             "ocr": {"image_width": 1024, "image_height": 1024,
                     "words": [{"text": "hi", "bbox": big, "confidence": 1.0}]}},
            {"group_id": "g2", "candidate_id": 0, "quality": 9.0, "aesthetic": 9.0,
             "ocr": {"image_width": 1024, "image_height": 1024,
                     "words": [{"text": "hi", "bbox": small, "confidence": 1.0}]}},
        ]
        return write_jsonl(records, tmp_path / "candidates.jsonl")

    def test_weighted_winner_and_area_filter(self, tmp_path):
        out = tmp_path / "filter_report.jsonl"
        assert main(["curate", str(self.candidates(tmp_path)), "-o", str(out)]) == 0
        rows = {row["group_id"]: row for row in read_jsonl(out)}
        assert rows["g1"]["winner_id"] == 1
        assert rows["g1"]["winner_score"] == pytest.approx(11.8)
        assert rows["g1"]["keep"] is True
        # g2's only candidate has a 3600 px^2 region: below 4000.
        assert rows["g2"]["keep"] is False
        assert rows["g2"]["reason"] == "area"

    def test_min_area_flag(self, tmp_path):
        out = tmp_path / "filter_report.jsonl"
        main(["curate", str(self.candidates(tmp_path)), "-o", str(out), "--min-area", "3600"])
        rows = {row["group_id"]: row for row in read_jsonl(out)}
        assert rows["g2"]["keep"] is True  # exactly at threshold is kept

    def test_empty_input(self, tmp_path):
        empty = tmp_path / "candidates.jsonl"
        empty.write_text("")
        out = tmp_path / "filter_report.jsonl"
        assert main(["curate", str(empty), "-o", str(out)]) == 0
        assert out.read_text() == ""

    def test_malformed_candidate_exits_3(self, tmp_path, capsys):
        path = tmp_path / "candidates.jsonl"
        path.write_text('{"group_id": "g", "candidate_id": 0}\n')
        assert main(["curate", str(path), "-o", str(tmp_path / "f.jsonl")]) == 3


class TestBench:
    def records(self, tmp_path) -> Path:
        records = [
            {"id": "r1", "image_caption": "A logo", "text_captions": ["AREA", "PEOPLE", "NOW"]},
            {"id": "r2", "image_caption": "A poem", "text_captions": ["word"] * 16},
            {"id": "r3", "image_caption": "A sign", "text_captions": ["OPEN", "DAILY"],
             "conditions": [
                 {"text_index": 0, "kind": "font", "value": "3D style"},
                 {"text_index": 1, "kind": "font", "value": "flat style"},
             ]},
        ]
        return write_jsonl(records, tmp_path / "records.jsonl")

    def test_tiers_errors_and_skips(self, tmp_path):
        out = tmp_path / "bench.jsonl"
        assert main(["bench", str(self.records(tmp_path)), "-o", str(out)]) == 0
        rows = {row["id"]: row for row in read_jsonl(out)}
        assert rows["r1"]["difficulty"] == "easy"
        assert rows["r1"]["rendered"].endswith('"AREA", "PEOPLE", "NOW".')
        assert "outside" in rows["r2"]["error"]
        assert "contrasting" in rows["r3"]["error"]


class TestValidatePned:
    def test_small_grid(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main([
            "validate-pned", "-o", str(out),
            "--alphas", "0,0.5,1.0", "--repeats", "1", "--n-samples", "10",
            "--seed", "5", "--jobs", "1",
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,mean_pned_ordered,std_ordered,mean_pned_shuffled,std_shuffled"
        assert lines[1] == "0.000000,0.000000,0.000000,0.000000,0.000000"
        for line in lines[1:]:
            cells = line.split(",")
            assert cells[1] == cells[3]  # ordered mean == shuffled mean
            assert cells[2] == cells[4]

    def test_same_seed_same_bytes(self, tmp_path):
        args = ["--alphas", "0,0.5", "--repeats", "1", "--n-samples", "8", "--seed", "3", "--jobs", "1"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["validate-pned", "-o", str(a), *args])
        main(["validate-pned", "-o", str(b), *args])
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_grid_exits_2(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["validate-pned", "-o", str(out), "--alphas", "0.5,0.1"]) == 2
        assert main(["validate-pned", "-o", str(out), "--alphas", "zero"]) == 2


class TestUsage:
    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "x.jsonl", "--frobnicate"])
        assert exc.value.code == 2

    @pytest.mark.parametrize(
        "flag, value",
        [
            ("--ned-threshold", "1.5"),
            ("--ned-threshold", "-0.1"),
            ("--crop-margin", "-0.2"),
            ("--min-area", "-1"),
            ("--jobs", "0"),
        ],
    )
    def test_out_of_range_flag_values_exit_2(self, flag, value):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "x.jsonl", flag, value])
        assert exc.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "texteval" in capsys.readouterr().out

    def test_judge_stub_with_fixture_override(self, tmp_path):
        requests = tmp_path / "judge_requests.jsonl"
        requests.write_text(json.dumps({
            "query_id": "s#c0", "sample_id": "s",
            "question": 'The text "x" is in the color of red? Answer me using "yes" or "no".',
            "crop_bbox": [0, 0, 5, 5], "expected_answers": ["yes", "no"],
        }) + "\n")
        fixture = tmp_path / "fixture.json"
        fixture.write_text(json.dumps({"s#c0": "no"}))
        out = tmp_path / "judge_answers.jsonl"
        assert main(["judge-stub", str(requests), "-o", str(out), "--fixture", str(fixture)]) == 0
        assert read_jsonl(out) == [{"query_id": "s#c0", "answer": "no"}]
