"""Colourings of [N] and exact coverage of colour subsets.

A colour subset R is covered when some arithmetic progression carries exactly
the colours of R, one each. Coverage is tracked in a bit-vector indexed by
colex rank, so membership updates are O(1) and the whole family costs
C(n,k)/8 bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Optional

from .combinatorics import (
    ColorSet,
    Progression,
    _rank_of_mask,
    enumerate_progressions,
    subset_unrank,
)
from .errors import ColoringFormatError, FamilySizeError, ParameterError

# Guard for the coverage bit-vector: C(n,k) above this would need > 512 MiB.
FAMILY_SIZE_LIMIT = 1 << 32

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Coloring:
    """An assignment of one of n colours (1-based) to each position of [N].

    Surjectivity is not required; a colouring may leave colours unused.
    """

    colors: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not isinstance(self.colors, tuple):
            object.__setattr__(self, "colors", tuple(self.colors))
        if self.n < 1:
            raise ParameterError(f"number of colours must be >= 1, got {self.n}")
        if len(self.colors) < 1:
            raise ParameterError("a colouring needs at least one position")
        for i, c in enumerate(self.colors):
            if not 1 <= c <= self.n:
                raise ParameterError(
                    f"colour {c} at position {i + 1} outside 1..{self.n}")

    @property
    def N(self) -> int:
        return len(self.colors)


@dataclass
class CoverageReport:
    """Coverage status of every k-subset of [n].

    Bit r of `covered` corresponds to the subset with colex rank r.
    `witnesses`, when recorded, maps a covered rank to the first progression
    (in enumeration order) realizing that subset.
    """

    n: int
    k: int
    covered: int
    covered_count: int
    witnesses: Optional[dict[int, Progression]] = None

    @property
    def total(self) -> int:
        return comb(self.n, self.k)

    def is_covered(self, rank: int) -> bool:
        return (self.covered >> rank) & 1 == 1

    def uncovered_ranks(self) -> list[int]:
        return [r for r in range(self.total) if not (self.covered >> r) & 1]


@dataclass
class VerifyResult:
    complete: bool
    uncovered: list[ColorSet]
    report: CoverageReport


def rainbow_colors(coloring: Coloring, prog: Progression) -> Optional[ColorSet]:
    """Colour set of prog when its colours are pairwise distinct, else None."""
    if prog.last > coloring.N:
        raise ParameterError(
            f"progression ends at {prog.last}, outside the domain [{coloring.N}]")
    colors = coloring.colors
    mask = 0
    for p in prog.positions():
        b = 1 << (colors[p - 1] - 1)
        if mask & b:
            return None
        mask |= b
    return ColorSet(mask, _rank_of_mask(mask))


def _check_family_size(n: int, k: int) -> int:
    total = comb(n, k)
    if total > FAMILY_SIZE_LIMIT:
        raise FamilySizeError(
            f"C({n},{k}) = {total} subsets exceed the bit-vector guard of 2^32")
    return total


def covered_family(coloring: Coloring, k: int,
                   record_witnesses: bool = False) -> CoverageReport:
    """Scan every k-progression of the domain and mark each rainbow colour set.

    This is the hot loop of the whole package (the verifier dominates the
    runtime of construction), so the rainbow test is a scratch bitmask per
    progression and ranking is done inline without allocation.
    """
    n = coloring.n
    if k < 2:
        raise ParameterError(f"subset size k must be >= 2, got {k}")
    if k > n:
        raise ParameterError(f"subset size k = {k} exceeds the palette size n = {n}")
    total = _check_family_size(n, k)
    colors = coloring.colors
    N = len(colors)
    covered = 0
    count = 0
    witnesses: Optional[dict[int, Progression]] = {} if record_witnesses else None
    comb_ = comb
    for diff in range(1, (N - 1) // (k - 1) + 1):
        span = (k - 1) * diff
        for start in range(1, N - span + 1):
            mask = 0
            for p in range(start - 1, start + span, diff):
                b = 1 << (colors[p] - 1)
                if mask & b:
                    mask = 0
                    break
                mask |= b
            if not mask:
                continue
            rank = 0
            j = 1
            m = mask
            while m:
                rank += comb_((m & -m).bit_length() - 1, j)
                j += 1
                m &= m - 1
            bit = 1 << rank
            if not covered & bit:
                covered |= bit
                count += 1
                if witnesses is not None:
                    witnesses[rank] = Progression(start, diff, k)
                if count == total:
                    return CoverageReport(n, k, covered, count, witnesses)
    return CoverageReport(n, k, covered, count, witnesses)


def verify_cover(coloring: Coloring, n: int, k: int,
                 record_witnesses: bool = False) -> VerifyResult:
    """Decide whether the colouring covers every k-subset of [n].

    `uncovered` lists the missing subsets in colex order, so a complete cover
    is exactly an empty list.
    """
    if n != coloring.n:
        coloring = Coloring(coloring.colors, n)
    report = covered_family(coloring, k, record_witnesses)
    uncovered = [ColorSet(subset_unrank(r, n, k), r) for r in report.uncovered_ranks()]
    return VerifyResult(not uncovered, uncovered, report)


def witness(coloring: Coloring, R: ColorSet, k: Optional[int] = None) -> Optional[Progression]:
    """First progression in enumeration order carrying exactly the colours of R."""
    size = R.mask.bit_count()
    if k is not None and k != size:
        raise ParameterError(f"subset has {size} colours, expected k={k}")
    if size < 2:
        raise ParameterError("witness search needs a subset of at least 2 colours")
    if size > coloring.n or R.mask >> coloring.n:
        raise ParameterError("subset uses colours outside the palette")
    colors = coloring.colors
    target = R.mask
    for prog in enumerate_progressions(coloring.N, size):
        mask = 0
        for p in prog.positions():
            b = 1 << (colors[p - 1] - 1)
            if mask & b:
                mask = 0
                break
            mask |= b
        if mask == target:
            return prog
    return None


def parse_coloring_text(text: str) -> list[int]:
    """Parse colour values from the text format.

    Values are whitespace-separated positive integers, on one line or many;
    a line whose first non-blank character is '#' is a comment. Raises
    ColoringFormatError with 1-based line/column diagnostics.
    """
    values: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue
        for match in _TOKEN.finditer(line):
            token = match.group()
            column = match.start() + 1
            try:
                value = int(token)
            except ValueError:
                raise ColoringFormatError(
                    f"line {lineno}, column {column}: {token!r} is not an integer",
                    line=lineno, column=column) from None
            if value < 1:
                raise ColoringFormatError(
                    f"line {lineno}, column {column}: colour {value} must be >= 1",
                    line=lineno, column=column)
            values.append(value)
    if not values:
        raise ColoringFormatError("no colour values found", line=1, column=1)
    return values


def format_coloring(coloring: Coloring, header: Optional[dict] = None) -> str:
    """Render a colouring in the text format, optionally with a comment header."""
    lines = []
    if header:
        lines.append("# " + " ".join(f"{key}={value}" for key, value in header.items()))
    lines.append(" ".join(str(c) for c in coloring.colors))
    return "\n".join(lines) + "\n"


def coverage_report_dict(coloring: Coloring, result: VerifyResult) -> dict:
    """JSON-ready report: {n, k, N, complete, covered_count, total, uncovered, witnesses?}."""
    report = result.report
    out = {
        "n": report.n,
        "k": report.k,
        "N": coloring.N,
        "complete": result.complete,
        "covered_count": report.covered_count,
        "total": report.total,
        "uncovered": [list(cs.colors) for cs in result.uncovered],
    }
    if report.witnesses is not None:
        rendered = {}
        for rank in sorted(report.witnesses):
            prog = report.witnesses[rank]
            key = ",".join(map(str, ColorSet.from_rank(rank, report.n, report.k).colors))
            rendered[key] = {"start": prog.start, "diff": prog.diff, "length": prog.length}
        out["witnesses"] = rendered
    return out
