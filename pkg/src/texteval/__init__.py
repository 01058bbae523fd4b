"""texteval: OCR-based scoring and curation toolkit for visual text rendering.

The library measures how faithfully rendered text in generated images
matches what a prompt demanded, using OCR output as the observation. It
provides word-set metrics built on normalized edit distance and optimal
assignment, attribute-condition checks (color/font/position), the
deterministic stages of an image-corpus curation pipeline, benchmark
prompt construction with difficulty tiers, and a seeded perturbation
harness that validates the headline metric's behavior.
"""

__version__ = "0.1.0"

from .assignment import Assignment, CostMatrix, solve_min_assignment
from .attributes import (
    ConditionOutcome,
    JudgeQuery,
    expand_crop,
    fuzzy_match_conditions,
    parse_color_question,
    parse_font_question,
    position_score,
    read_judge_answers,
    read_judge_requests,
    regions_containing,
    render_judge_query,
    resolve_outcome,
    score_attributes,
    write_judge_answers,
    write_judge_requests,
)
from .conditions import (
    COLORS,
    CONDITION_KINDS,
    FONT_DESCRIPTIONS,
    FONT_PAIRS,
    FONT_STYLES,
    POSITIONS,
    allowed_values,
    font_pair_opposite,
)
from .core import (
    AggregateReport,
    AttributeCondition,
    GroundTruthText,
    OcrResult,
    OcrWord,
    Sample,
    SampleFormatError,
    SampleReport,
    dump_samples,
    load_samples,
    normalize_token,
    parse_sample,
    report_schema,
    sample_to_dict,
    tokenize,
    write_report,
)
from .curation import (
    BenchPrompt,
    Candidate,
    FilterDecision,
    LlmRequest,
    build_llm_request,
    classify_difficulty,
    filter_seed_caption,
    filter_small_text,
    largest_text_area,
    make_bench_prompt,
    parse_bench_prompt,
    read_llm_responses,
    render_bench_prompt,
    render_instruction,
    select_best_of_n,
    total_word_count,
    weighted_score,
    write_llm_requests,
)
from .editdist import dp_table, edit_distance, ned
from .evaluate import EvaluationResult, collect_condition_work, evaluate_corpus, evaluate_sample
from .ocr_metrics import (
    MatchingPolicy,
    aggregate,
    match_word_sets,
    precision_and_f1,
    recall,
    sentence_exact,
    word_accuracy,
)
from .perturb import (
    PerturbConfig,
    SweepRow,
    generate_corpus,
    perturb,
    run_sweep,
    sweep_to_csv,
    write_sweep_csv,
)
from .pned import PnedBreakdown, pned

__all__ = [
    "__version__",
    # assignment
    "Assignment", "CostMatrix", "solve_min_assignment",
    # attributes
    "ConditionOutcome", "JudgeQuery", "expand_crop", "fuzzy_match_conditions",
    "parse_color_question", "parse_font_question", "position_score",
    "read_judge_answers", "read_judge_requests", "regions_containing",
    "render_judge_query", "resolve_outcome", "score_attributes",
    "write_judge_answers", "write_judge_requests",
    # conditions
    "COLORS", "CONDITION_KINDS", "FONT_DESCRIPTIONS", "FONT_PAIRS",
    "FONT_STYLES", "POSITIONS", "allowed_values", "font_pair_opposite",
    # core
    "AggregateReport", "AttributeCondition", "GroundTruthText", "OcrResult",
    "OcrWord", "Sample", "SampleFormatError", "SampleReport", "dump_samples",
    "load_samples", "normalize_token", "parse_sample", "report_schema",
    "sample_to_dict", "tokenize", "write_report",
    # curation
    "BenchPrompt", "Candidate", "FilterDecision", "LlmRequest",
    "build_llm_request", "classify_difficulty", "filter_seed_caption",
    "filter_small_text", "largest_text_area", "make_bench_prompt",
    "parse_bench_prompt", "read_llm_responses", "render_bench_prompt",
    "render_instruction", "select_best_of_n", "total_word_count",
    "weighted_score", "write_llm_requests",
    # editdist
    "dp_table", "edit_distance", "ned",
    # evaluate
    "EvaluationResult", "collect_condition_work", "evaluate_corpus", "evaluate_sample",
    # ocr metrics
    "MatchingPolicy", "aggregate", "match_word_sets", "precision_and_f1",
    "recall", "sentence_exact", "word_accuracy",
    # perturbation harness
    "PerturbConfig", "SweepRow", "generate_corpus", "perturb", "run_sweep",
    "sweep_to_csv", "write_sweep_csv",
    # pned
    "PnedBreakdown", "pned",
]
