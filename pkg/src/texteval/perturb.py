"""Controlled-perturbation harness for validating the word-set metric.

Synthesizes a corpus of random word lists, damages each list with six
stochastic operations applied per word with probability alpha, and
sweeps alpha to measure how the metric responds. Each (alpha, repeat,
sample) cell derives its own random stream from the base seed, so the
sweep is bit-reproducible regardless of execution order or parallelism.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import atomic_write_text
from .pned import pned

ASCII_LOWER = string.ascii_lowercase

# Spawn-key namespaces so corpus generation, perturbation, and shuffling
# never share a stream.
_CORPUS_KEY = 0
_PERTURB_KEY = 1
_SHUFFLE_KEY = 2

DEFAULT_ALPHAS = tuple(round(0.1 * k, 1) for k in range(11))
DEFAULT_REPEATS = 5

SWEEP_CSV_HEADER = "alpha,mean_pned_ordered,std_ordered,mean_pned_shuffled,std_shuffled"


@dataclass(frozen=True)
class PerturbConfig:
    """Knobs for corpus synthesis and perturbation intensity."""

    alpha: float = 0.0
    n_samples: int = 100
    list_len_range: tuple[int, int] = (1, 20)
    str_len_range: tuple[int, int] = (3, 8)
    alphabet: str = ASCII_LOWER
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha {self.alpha} outside [0, 1]")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        for name in ("list_len_range", "str_len_range"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise ValueError(f"{name} {(lo, hi)} must satisfy 1 <= lo <= hi")
        if not self.alphabet:
            raise ValueError("alphabet must be non-empty")


def _stream(seed: int, *key: int) -> np.random.Generator:
    """A random stream derived from (seed, key), independent of all others."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _random_word(rng: np.random.Generator, str_len_range: tuple[int, int], alphabet: str) -> str:
    length = int(rng.integers(str_len_range[0], str_len_range[1] + 1))
    return "".join(alphabet[int(rng.integers(len(alphabet)))] for _ in range(length))


def generate_corpus(cfg: PerturbConfig) -> list[list[str]]:
    """Synthesize the ground-truth corpus; deterministic given rng_seed."""
    corpus = []
    for si in range(cfg.n_samples):
        rng = _stream(cfg.rng_seed, _CORPUS_KEY, si)
        length = int(rng.integers(cfg.list_len_range[0], cfg.list_len_range[1] + 1))
        corpus.append([_random_word(rng, cfg.str_len_range, cfg.alphabet) for _ in range(length)])
    return corpus


def perturb(
    sample: Sequence[str],
    alpha: float,
    rng: np.random.Generator,
    *,
    str_len_range: tuple[int, int] = (3, 8),
    alphabet: str = ASCII_LOWER,
) -> list[str]:
    """Damage a word list: per word, with probability alpha, one of six ops.

    Operations, chosen uniformly: character insertion, character
    deletion, character replacement (always to a different character),
    splitting the word at a uniform interior point, adding a fresh
    random word after the current one, or deleting the word. Words too
    short to split fall back to a uniformly chosen character operation;
    deleting the only character of a word removes the word entirely.
    Every operation strictly changes the word multiset.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha {alpha} outside [0, 1]")
    out: list[str] = []
    for word in sample:
        if rng.random() >= alpha:
            out.append(word)
            continue
        op = int(rng.integers(6))
        if op == 3 and len(word) < 2:
            op = int(rng.integers(3))
        if op == 0:  # insert a character
            pos = int(rng.integers(len(word) + 1))
            ch = alphabet[int(rng.integers(len(alphabet)))]
            out.append(word[:pos] + ch + word[pos:])
        elif op == 1:  # delete a character
            if len(word) <= 1:
                continue  # deleting the last character removes the word
            pos = int(rng.integers(len(word)))
            out.append(word[:pos] + word[pos + 1 :])
        elif op == 2:  # replace a character with a different one
            if not word:
                out.append(alphabet[int(rng.integers(len(alphabet)))])
                continue
            pos = int(rng.integers(len(word)))
            choices = alphabet.replace(word[pos], "") or alphabet
            ch = choices[int(rng.integers(len(choices)))]
            out.append(word[:pos] + ch + word[pos + 1 :])
        elif op == 3:  # split into two substrings
            cut = int(rng.integers(1, len(word)))
            out.append(word[:cut])
            out.append(word[cut:])
        elif op == 4:  # add a fresh random word after this one
            out.append(word)
            out.append(_random_word(rng, str_len_range, alphabet))
        else:  # op == 5: delete the word
            continue
    return out


@dataclass(frozen=True)
class SweepRow:
    """Sweep statistics for one alpha, under both orderings."""

    alpha: float
    mean_pned_ordered: float
    std_ordered: float
    mean_pned_shuffled: float
    std_shuffled: float


def _cell_totals(
    cfg: PerturbConfig,
    corpus: list[list[str]],
    alpha: float,
    ai: int,
    ri: int,
) -> tuple[list[float], list[float]]:
    """Per-sample scores for one (alpha index, repeat index) cell."""
    ordered: list[float] = []
    shuffled: list[float] = []
    for si, sample in enumerate(corpus):
        prng = _stream(cfg.rng_seed, _PERTURB_KEY, ai, ri, si)
        damaged = perturb(
            sample, alpha, prng,
            str_len_range=cfg.str_len_range, alphabet=cfg.alphabet,
        )
        ordered.append(pned(sample, damaged).total)
        srng = _stream(cfg.rng_seed, _SHUFFLE_KEY, ai, ri, si)
        permuted = list(damaged)
        srng.shuffle(permuted)
        shuffled.append(pned(sample, permuted).total)
    return ordered, shuffled


def _cell_worker(args) -> tuple[int, int, list[float], list[float]]:
    cfg, corpus, alpha, ai, ri = args
    ordered, shuffled = _cell_totals(cfg, corpus, alpha, ai, ri)
    return ai, ri, ordered, shuffled


def run_sweep(
    cfg: PerturbConfig,
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    repeats: int = DEFAULT_REPEATS,
    jobs: int = 1,
) -> list[SweepRow]:
    """Sweep perturbation intensity and score ordered vs shuffled outputs.

    The shuffled condition re-scores the damaged list after a random
    permutation; because the metric is order-free the two columns agree
    exactly, and the sweep keeps both to make that visible. Results are
    bit-identical across ``jobs`` settings.
    """
    alphas = list(alphas)
    if not alphas:
        raise ValueError("alpha grid must be non-empty")
    for a in alphas:
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"alpha {a} outside [0, 1]")
    if any(a2 < a1 for a1, a2 in zip(alphas, alphas[1:])):
        raise ValueError("alpha grid must be sorted ascending")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")

    corpus = generate_corpus(cfg)
    tasks = [
        (cfg, corpus, alpha, ai, ri)
        for ai, alpha in enumerate(alphas)
        for ri in range(repeats)
    ]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell_worker, tasks, chunksize=1))
    else:
        results = [_cell_worker(t) for t in tasks]

    rows = []
    for ai, alpha in enumerate(alphas):
        ordered: list[float] = []
        shuffled: list[float] = []
        for res_ai, _, cell_ordered, cell_shuffled in results:
            if res_ai == ai:
                ordered.extend(cell_ordered)
                shuffled.extend(cell_shuffled)
        rows.append(
            SweepRow(
                alpha=float(alpha),
                mean_pned_ordered=float(np.mean(ordered)),
                std_ordered=float(np.std(ordered, ddof=1)) if len(ordered) > 1 else 0.0,
                mean_pned_shuffled=float(np.mean(shuffled)),
                std_shuffled=float(np.std(shuffled, ddof=1)) if len(shuffled) > 1 else 0.0,
            )
        )
    return rows


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    lines = [SWEEP_CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row.alpha:.6f},{row.mean_pned_ordered:.6f},{row.std_ordered:.6f},"
            f"{row.mean_pned_shuffled:.6f},{row.std_shuffled:.6f}"
        )
    return "".join(line + "\n" for line in lines)


def write_sweep_csv(rows: Sequence[SweepRow], path: str | Path) -> None:
    atomic_write_text(path, sweep_to_csv(rows))
