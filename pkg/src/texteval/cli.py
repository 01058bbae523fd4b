"""Command-line front end.

Subcommands: eval, curate, bench, validate-pned, judge-stub. Every
subcommand is deterministic given its flags and seed; output files are
written atomically and are byte-identical regardless of --jobs.

Exit codes: 0 success, 2 usage or I/O problems, 3 data validation
failures (the message names the offending line or record).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .attributes import (
    DEFAULT_CROP_MARGIN,
    read_judge_answers,
    read_judge_requests,
    write_judge_answers,
    write_judge_requests,
)
from .core import (
    NORMALIZATION_POLICIES,
    AttributeCondition,
    SampleFormatError,
    atomic_write_text,
    iter_jsonl,
    load_samples,
    write_report,
)
from .curation import (
    AESTHETIC_WEIGHT,
    MIN_TEXT_AREA_PX,
    QUALITY_WEIGHT,
    filter_small_text,
    largest_text_area,
    make_bench_prompt,
    parse_candidate,
    select_best_of_n,
    weighted_score,
)
from .evaluate import evaluate_corpus
from .ocr_metrics import DEFAULT_NED_THRESHOLD, MatchingPolicy
from .perturb import DEFAULT_ALPHAS, DEFAULT_REPEATS, PerturbConfig, run_sweep, write_sweep_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def _unit_interval(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is outside [0, 1]")
    return value


def _nonnegative(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return value


def _shared_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--ned-threshold", type=_unit_interval, default=DEFAULT_NED_THRESHOLD,
        help="NED at or under this value counts as a match (default %(default)s)",
    )
    parser.add_argument(
        "--normalization", choices=NORMALIZATION_POLICIES, default="default",
        help="token normalization policy (default %(default)s)",
    )
    parser.add_argument(
        "--crop-margin", type=_nonnegative, default=DEFAULT_CROP_MARGIN,
        help="fractional bbox expansion for judge crops (default %(default)s)",
    )
    parser.add_argument(
        "--min-area", type=_nonnegative, default=MIN_TEXT_AREA_PX,
        help="minimum largest-text-region area in px^2 (default %(default)s)",
    )
    parser.add_argument(
        "--quality-weight", type=float, default=QUALITY_WEIGHT,
        help="quality weight for Best-of-N selection (default %(default)s)",
    )
    parser.add_argument(
        "--aesthetic-weight", type=float, default=AESTHETIC_WEIGHT,
        help="aesthetic weight for Best-of-N selection (default %(default)s)",
    )
    parser.add_argument("--seed", type=int, default=0, help="base random seed (default 0)")
    parser.add_argument(
        "--jobs", type=_positive_int, default=os.cpu_count() or 1,
        help="worker processes; never changes output bytes (default: cpu count)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="texteval",
        description="OCR-based scoring and curation toolkit for visual text rendering.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="score a samples.jsonl corpus into report.json")
    p_eval.add_argument("samples", help="path to samples.jsonl")
    p_eval.add_argument("-o", "--output", default="report.json", help="report path")
    p_eval.add_argument(
        "--judge-requests", default=None,
        help="where to write judge_requests.jsonl (default: next to the report)",
    )
    p_eval.add_argument(
        "--judge-answers", default=None,
        help="judge_answers.jsonl to fold into attribute scores",
    )
    _shared_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_curate = sub.add_parser("curate", help="Best-of-N selection plus text-area filtering")
    p_curate.add_argument("candidates", help="path to candidates.jsonl")
    p_curate.add_argument("-o", "--output", default="filter_report.jsonl")
    _shared_flags(p_curate)
    p_curate.set_defaults(func=cmd_curate)

    p_bench = sub.add_parser("bench", help="render benchmark prompts with difficulty tiers")
    p_bench.add_argument("records", help="path to raw caption/text records (jsonl)")
    p_bench.add_argument("-o", "--output", default="bench.jsonl")
    _shared_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_val = sub.add_parser("validate-pned", help="run the perturbation sweep")
    p_val.add_argument("-o", "--output", default="sweep.csv")
    p_val.add_argument(
        "--alphas", default=",".join(str(a) for a in DEFAULT_ALPHAS),
        help="comma-separated ascending perturbation intensities in [0,1]",
    )
    p_val.add_argument("--repeats", type=_positive_int, default=DEFAULT_REPEATS)
    p_val.add_argument("--n-samples", type=_positive_int, default=100)
    _shared_flags(p_val)
    p_val.set_defaults(func=cmd_validate_pned)

    p_stub = sub.add_parser(
        "judge-stub", help="answer judge requests deterministically (offline testing)"
    )
    p_stub.add_argument("requests", help="path to judge_requests.jsonl")
    p_stub.add_argument("-o", "--output", default="judge_answers.jsonl")
    p_stub.add_argument(
        "--fixture", default=None,
        help="JSON file mapping query_id to answer; unmapped queries get the first expected answer",
    )
    _shared_flags(p_stub)
    p_stub.set_defaults(func=cmd_judge_stub)

    return parser


def cmd_eval(args: argparse.Namespace) -> int:
    samples = load_samples(args.samples, policy=args.normalization)
    answers = read_judge_answers(args.judge_answers) if args.judge_answers else None
    result = evaluate_corpus(
        samples,
        policy=MatchingPolicy(args.ned_threshold),
        margin_frac=args.crop_margin,
        answers=answers,
        jobs=args.jobs,
    )
    write_report(result.report, args.output)
    if result.queries:
        requests_path = args.judge_requests or str(
            Path(args.output).parent / "judge_requests.jsonl"
        )
        write_judge_requests(result.queries, requests_path)
        if answers is None:
            print(
                f"wrote {len(result.queries)} judge request(s) to {requests_path}",
                file=sys.stderr,
            )
    print(f"wrote report for {result.report.count} sample(s) to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_curate(args: argparse.Namespace) -> int:
    groups: dict[str, list] = {}
    for lineno, record in iter_jsonl(args.candidates):
        candidate = parse_candidate(record, where=f"line {lineno}")
        groups.setdefault(candidate.group_id, []).append(candidate)
    lines = []
    failures = 0
    for group_id, members in groups.items():
        try:
            winner = select_best_of_n(members, args.quality_weight, args.aesthetic_weight)
            verdict = filter_small_text(winner, args.min_area)
            lines.append(json.dumps({
                "group_id": group_id,
                "winner_id": winner.candidate_id,
                "winner_score": weighted_score(winner, args.quality_weight, args.aesthetic_weight),
                "max_text_area": largest_text_area(winner.ocr),
                "keep": verdict.keep,
                "reason": verdict.reason,
            }, ensure_ascii=False))
        except ValueError as exc:
            failures += 1
            lines.append(json.dumps(
                {"group_id": group_id, "error": str(exc)}, ensure_ascii=False
            ))
    atomic_write_text(args.output, "".join(line + "\n" for line in lines))
    print(f"curated {len(groups)} group(s) into {args.output}", file=sys.stderr)
    return EXIT_DATA if failures else EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    lines = []
    built = skipped = 0
    for lineno, record in iter_jsonl(args.records):
        record_id = record.get("id", f"line{lineno}")
        try:
            conditions = tuple(
                AttributeCondition(
                    kind=c["kind"], value=c["value"], word_index=int(c["text_index"])
                )
                for c in record.get("conditions") or ()
            )
            prompt = make_bench_prompt(
                record["image_caption"], record["text_captions"], conditions
            )
        except KeyError as exc:
            lines.append(json.dumps(
                {"id": record_id, "error": f"missing key {exc}"}, ensure_ascii=False
            ))
            skipped += 1
            continue
        except ValueError as exc:
            lines.append(json.dumps({"id": record_id, "error": str(exc)}, ensure_ascii=False))
            skipped += 1
            continue
        entry = {
            "id": record_id,
            "image_caption": prompt.image_caption,
            "text_captions": list(prompt.text_captions),
            "difficulty": prompt.difficulty,
            "rendered": prompt.rendered,
        }
        if prompt.conditions:
            entry["conditions"] = [
                {"text_index": c.word_index, "kind": c.kind, "value": c.value}
                for c in prompt.conditions
            ]
        lines.append(json.dumps(entry, ensure_ascii=False))
        built += 1
    atomic_write_text(args.output, "".join(line + "\n" for line in lines))
    print(f"rendered {built} prompt(s), skipped {skipped}, into {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_validate_pned(args: argparse.Namespace) -> int:
    try:
        alphas = [float(a) for a in args.alphas.split(",") if a.strip() != ""]
    except ValueError:
        print(f"error: cannot parse alpha grid {args.alphas!r}", file=sys.stderr)
        return EXIT_USAGE
    cfg = PerturbConfig(n_samples=args.n_samples, rng_seed=args.seed)
    try:
        rows = run_sweep(cfg, alphas, repeats=args.repeats, jobs=args.jobs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    write_sweep_csv(rows, args.output)
    print(f"wrote sweep over {len(rows)} alpha value(s) to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_judge_stub(args: argparse.Namespace) -> int:
    queries = read_judge_requests(args.requests)
    fixture = {}
    if args.fixture:
        with open(args.fixture, encoding="utf-8") as fh:
            fixture = json.load(fh)
    answers = {
        q.query_id: fixture.get(q.query_id, q.expected_answers[0]) for q in queries
    }
    write_judge_answers(answers, args.output)
    print(f"answered {len(answers)} request(s) into {args.output}", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IsADirectoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SampleFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
