"""Randomized block construction of covering colourings.

The builder colours blocks of a fixed length, one round at a time. Each round
draws a handful of independent uniform colourings of the block, scores every
candidate by how many still-uncovered colour subsets it realizes on its own,
keeps the best one, and strikes the newly covered subsets from the family.
The output is the concatenation of the chosen blocks; a run succeeds when the
family is empty, and the result is always re-checkable with verify_cover (the
concatenation can only cover more than the blocks did in isolation, since
progressions across block boundaries are ignored while scoring).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import chain
from math import factorial, isqrt
from typing import Optional

import numpy as np

from .combinatorics import ColorSet, _rank_of_mask, subset_unrank
from .coverage import Coloring, _check_family_size
from .errors import ParameterError, RoundsExhaustedError

_BIT_GENERATORS = {"philox": np.random.Philox, "pcg64": np.random.PCG64}
_LOG = {"e": math.log, "2": math.log2, "10": math.log10}


def _check_log_base(log_base: str) -> None:
    if log_base not in _LOG:
        raise ParameterError(f"log base must be one of {sorted(_LOG)}, got {log_base!r}")


def min_alpha(log_base: str = "e") -> float:
    """Smallest admissible round multiplier, 1/log(2) in the chosen base."""
    _check_log_base(log_base)
    return 1.0 / _LOG[log_base](2)


def make_rng(seed: int, rng_name: str = "philox") -> np.random.Generator:
    """Build the generator behind all randomized operations.

    Both registered generators are counter-based or jumpable streams, so an
    identical (seed, rng_name) pair replays the identical draw sequence on any
    platform.
    """
    if rng_name not in _BIT_GENERATORS:
        raise ParameterError(
            f"unknown rng {rng_name!r}; choose from {sorted(_BIT_GENERATORS)}")
    if not isinstance(seed, int) or seed < 0:
        raise ParameterError(f"seed must be a nonnegative integer, got {seed!r}")
    return np.random.Generator(_BIT_GENERATORS[rng_name](seed))


def block_length(n: int, k: int) -> int:
    """Length of one construction block: ceil(sqrt(2) * sqrt((k-1)/k!) * n^(k/2)).

    The square of the target value is the exact rational 2*(k-1)*n^k / k!, so
    the ceiling is resolved with pure integer arithmetic: the answer is the
    smallest m with m^2 * k! >= 2*(k-1)*n^k. No floating point is involved,
    hence no off-by-one at near-integer values.
    """
    if k < 2:
        raise ParameterError(f"subset size k must be >= 2, got {k}")
    if k > n:
        raise ParameterError(f"subset size k = {k} exceeds the palette size n = {n}")
    radicand_num = 2 * (k - 1) * n**k
    radicand_den = factorial(k)
    m = isqrt(radicand_num // radicand_den)
    while m * m * radicand_den < radicand_num:
        m += 1
    return m


def rounds(n: int, k: int, alpha: float, log_base: str = "e",
           force: bool = False) -> int:
    """Number of construction rounds: ceil(alpha * k * log n).

    alpha must exceed 1/log(2) in the same base; that threshold is what makes
    the expected residual family shrink below one subset. `force` downgrades
    the violation to a warning for exploratory runs.
    """
    _check_log_base(log_base)
    if n < 2:
        raise ParameterError(f"palette size n must be >= 2, got {n}")
    if k < 2:
        raise ParameterError(f"subset size k must be >= 2, got {k}")
    threshold = min_alpha(log_base)
    if alpha <= threshold:
        message = (f"alpha = {alpha} does not exceed 1/log(2) = {threshold:.6f} "
                   f"for log base {log_base!r}")
        if not force:
            raise ParameterError(message)
        warnings.warn(message + "; proceeding anyway", stacklevel=2)
    return math.ceil(alpha * k * _LOG[log_base](n))


def random_coloring(N: int, n: int, rng: np.random.Generator) -> Coloring:
    """Uniform random n-colouring of [N]; each position independent.

    Deterministic given the generator state, i.e. given (seed, rng_name) and
    the number of draws consumed before this call.
    """
    if N < 1:
        raise ParameterError(f"interval length N must be >= 1, got {N}")
    if n < 1:
        raise ParameterError(f"number of colours must be >= 1, got {n}")
    values = rng.integers(1, n + 1, size=N)
    return Coloring(tuple(int(v) for v in values), n)


@dataclass(frozen=True)
class ConstructParams:
    """Knobs of the randomized construction; all of them are reproducibility
    inputs and get embedded in the trace."""

    seed: int
    alpha: float = 2.0
    samples_per_round: int = 16
    max_rounds: Optional[int] = None  # default 4 * rounds(n, k, alpha)
    rng_name: str = "philox"
    log_base: str = "e"
    force_alpha: bool = False

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ParameterError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if self.samples_per_round < 1:
            raise ParameterError(
                f"samples_per_round must be >= 1, got {self.samples_per_round}")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ParameterError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if self.rng_name not in _BIT_GENERATORS:
            raise ParameterError(
                f"unknown rng {self.rng_name!r}; choose from {sorted(_BIT_GENERATORS)}")
        _check_log_base(self.log_base)
        if not self.force_alpha and self.alpha <= min_alpha(self.log_base):
            raise ParameterError(
                f"alpha = {self.alpha} does not exceed 1/log(2) = "
                f"{min_alpha(self.log_base):.6f} for log base {self.log_base!r}")


@dataclass(frozen=True)
class RoundRecord:
    round: int
    family_before: int
    family_after: int
    coverage_fraction: float
    samples: int


@dataclass
class ConstructTrace:
    """Per-round progress of one construction run plus everything needed to
    reproduce it."""

    n: int
    k: int
    alpha: float
    seed: int
    rng_name: str
    log_base: str
    samples_per_round: int
    max_rounds: int
    block_length: int
    rounds: list[RoundRecord] = field(default_factory=list)
    rounds_used: int = 0
    final_length: int = 0


@dataclass
class ConstructResult:
    coloring: Coloring
    trace: ConstructTrace


def _progression_positions(N: int, k: int) -> list[tuple[int, ...]]:
    """0-based position tuples of all k-progressions in [N], enumeration order."""
    out = []
    for diff in range(1, (N - 1) // (k - 1) + 1):
        for start in range(N - (k - 1) * diff):
            out.append(tuple(range(start, start + k * diff, diff)))
    return out


def _covered_ranks(colors: tuple[int, ...], progs: list[tuple[int, ...]],
                   family: set[int]) -> set[int]:
    """Ranks of family members realized as rainbow progressions by this block."""
    hit = set()
    for pos in progs:
        mask = 0
        for p in pos:
            b = 1 << (colors[p] - 1)
            if mask & b:
                mask = 0
                break
            mask |= b
        if mask:
            r = _rank_of_mask(mask)
            if r in family:
                hit.add(r)
    return hit


def construct_cover(n: int, k: int, params: ConstructParams) -> ConstructResult:
    """Build an n-colouring covering every k-subset of [n], block by block.

    Each round appends exactly one block of block_length(n, k) positions, the
    best scorer among params.samples_per_round uniform candidates. Scoring
    treats the block in isolation; progressions spanning block boundaries are
    a bonus that only the final verification sees. Raises RoundsExhaustedError
    (carrying the residual family) if the family is nonempty after max_rounds.
    """
    if k < 2:
        raise ParameterError(f"subset size k must be >= 2, got {k}")
    if k > n:
        raise ParameterError(f"subset size k = {k} exceeds the palette size n = {n}")
    total = _check_family_size(n, k)
    length = block_length(n, k)
    target_rounds = rounds(n, k, params.alpha, params.log_base, force=params.force_alpha)
    max_rounds = params.max_rounds if params.max_rounds is not None else 4 * target_rounds
    rng = make_rng(params.seed, params.rng_name)
    progs = _progression_positions(length, k)

    trace = ConstructTrace(
        n=n, k=k, alpha=params.alpha, seed=params.seed, rng_name=params.rng_name,
        log_base=params.log_base, samples_per_round=params.samples_per_round,
        max_rounds=max_rounds, block_length=length)

    uncovered = set(range(total))
    blocks: list[tuple[int, ...]] = []
    for round_index in range(max_rounds):
        if not uncovered:
            break
        best_colors: Optional[tuple[int, ...]] = None
        best_hit: set[int] = set()
        for _ in range(params.samples_per_round):
            candidate = random_coloring(length, n, rng).colors
            hit = _covered_ranks(candidate, progs, uncovered)
            if best_colors is None or len(hit) > len(best_hit):
                best_colors, best_hit = candidate, hit
        before = len(uncovered)
        uncovered -= best_hit
        blocks.append(best_colors)
        trace.rounds.append(RoundRecord(
            round=round_index,
            family_before=before,
            family_after=len(uncovered),
            coverage_fraction=(before - len(uncovered)) / before,
            samples=params.samples_per_round))

    trace.rounds_used = len(blocks)
    trace.final_length = len(blocks) * length
    if uncovered:
        residual = [ColorSet(subset_unrank(r, n, k), r) for r in sorted(uncovered)]
        raise RoundsExhaustedError(
            f"{len(residual)} of {total} subsets still uncovered after "
            f"{len(blocks)} rounds (limit {max_rounds})",
            residual=residual, trace=trace, rounds_used=len(blocks))
    coloring = Coloring(tuple(chain.from_iterable(blocks)), n)
    return ConstructResult(coloring, trace)


def trace_record_dict(record: RoundRecord) -> dict:
    return {
        "round": record.round,
        "family_before": record.family_before,
        "family_after": record.family_after,
        "coverage_fraction": record.coverage_fraction,
        "samples": record.samples,
    }


def coloring_header(trace: ConstructTrace) -> dict:
    """Header comment fields for a constructed colouring file."""
    return {
        "n": trace.n,
        "k": trace.k,
        "alpha": trace.alpha,
        "seed": trace.seed,
        "rng": trace.rng_name,
        "log_base": trace.log_base,
        "rounds": trace.rounds_used,
        "block_length": trace.block_length,
    }
