"""Arithmetic progressions in an integer interval: enumeration, exact counts,
pairwise-intersection tallies, and colex ranking of colour subsets.

Everything here is a pure function of its arguments, and every count is an
exact Python integer, so results never overflow and can be shared freely
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .errors import BudgetExceededError, ParameterError

# A full pair scan touches h^2 progression pairs; refuse to start one that a
# caller did not knowingly budget for.
DEFAULT_PAIR_LIMIT = 10**8


@dataclass(frozen=True)
class Progression:
    """Arithmetic progression {start, start+diff, ..., start+(length-1)*diff}."""

    start: int
    diff: int
    length: int

    def __post_init__(self):
        if self.start < 1:
            raise ParameterError(f"progression start must be >= 1, got {self.start}")
        if self.diff < 1:
            raise ParameterError(f"progression diff must be >= 1, got {self.diff}")
        if self.length < 2:
            raise ParameterError(f"progression length must be >= 2, got {self.length}")

    @property
    def last(self) -> int:
        return self.start + (self.length - 1) * self.diff

    def positions(self) -> range:
        """1-based positions of the terms, ascending."""
        return range(self.start, self.start + self.length * self.diff, self.diff)

    def in_interval(self, N: int) -> bool:
        return self.last <= N


@dataclass(frozen=True)
class ColorSet:
    """A set of colours stored as a bitmask; bit c-1 set means colour c is in.

    `rank` is the colex rank of the set among all subsets of its size, a dense
    index in {0, ..., C(n,k)-1}. Colex ranking does not depend on n, so the
    same rank stays valid when the palette grows.
    """

    mask: int
    rank: int

    @classmethod
    def from_mask(cls, mask: int, n: int, k: int) -> "ColorSet":
        return cls(mask, subset_rank(mask, n, k))

    @classmethod
    def from_rank(cls, rank: int, n: int, k: int) -> "ColorSet":
        return cls(subset_unrank(rank, n, k), rank)

    @classmethod
    def from_colors(cls, colors: Iterable[int], n: int) -> "ColorSet":
        values = list(colors)
        mask = 0
        for c in values:
            if not 1 <= c <= n:
                raise ParameterError(f"colour {c} outside 1..{n}")
            mask |= 1 << (c - 1)
        if mask.bit_count() != len(values):
            raise ParameterError(f"colour list {values} contains duplicates")
        return cls.from_mask(mask, n, len(values))

    @property
    def colors(self) -> tuple[int, ...]:
        out = []
        m = self.mask
        while m:
            out.append((m & -m).bit_length())
            m &= m - 1
        return tuple(out)

    @property
    def k(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class PairIntersectionCounts:
    """counts[i] = unordered pairs of distinct k-progressions sharing exactly
    i elements; total = number of progressions scanned. Two distinct
    progressions share at most k-1 elements, so the vector has length k and
    its entries sum to C(total, 2)."""

    counts: tuple[int, ...]
    total: int


def _check_interval(N: int, k: int) -> None:
    if k < 2:
        raise ParameterError(f"progression length k must be >= 2, got {k}")
    if N < 1:
        raise ParameterError(f"interval length N must be >= 1, got {N}")


def enumerate_progressions(N: int, k: int) -> Iterator[Progression]:
    """Yield every k-progression inside [N] exactly once.

    Order is ascending common difference, then ascending start, which keeps
    runs deterministic and scans the interval cache-friendly.
    """
    _check_interval(N, k)

    def gen():
        for diff in range(1, (N - 1) // (k - 1) + 1):
            for start in range(1, N - (k - 1) * diff + 1):
                yield Progression(start, diff, k)

    return gen()


def count_progressions(N: int, k: int) -> int:
    """Exact number of k-progressions in [N], in closed form.

    There are N - (k-1)d progressions of common difference d, so with
    D = floor((N-1)/(k-1)) the total is D*N - (k-1)*D*(D+1)/2.
    """
    _check_interval(N, k)
    D = (N - 1) // (k - 1)
    return D * N - (k - 1) * (D * (D + 1) // 2)


def count_intersecting_pairs(N: int, k: int,
                             pair_limit: int = DEFAULT_PAIR_LIMIT) -> PairIntersectionCounts:
    """Tally unordered pairs of distinct k-progressions in [N] by the exact
    number of elements they share.

    The scan is quadratic in the progression count h and refuses to start when
    h*h exceeds pair_limit. Each progression is materialized as a bitmask over
    positions, so a pair costs one AND plus a popcount.
    """
    _check_interval(N, k)
    h = count_progressions(N, k)
    if h * h > pair_limit:
        raise BudgetExceededError(
            f"pair scan needs h^2 = {h * h} pair checks (h = {h}), over the limit {pair_limit}")
    masks = []
    for prog in enumerate_progressions(N, k):
        m = 0
        for p in prog.positions():
            m |= 1 << p
        masks.append(m)
    counts = [0] * k
    for a, b in combinations(masks, 2):
        counts[(a & b).bit_count()] += 1
    return PairIntersectionCounts(tuple(counts), h)


def hi_upper_bounds(N: int, k: int) -> tuple[int, ...]:
    """Entrywise upper bounds for the pair-intersection tallies.

    bound[0] = C(h,2): no pair shares fewer than zero elements, so the count
    of disjoint pairs is at most the count of all pairs. bound[1] = h*k^2*N:
    fix one progression and one of its k elements; at most kN progressions
    pass through that element. bound[j] = C(N,2)*C(C(k,2),2) for j >= 2: a
    pair of shared elements pins each progression to one of its C(k,2) index
    slots, determining it completely.
    """
    _check_interval(N, k)
    h = count_progressions(N, k)
    out = [comb(h, 2), h * k * k * N]
    if k > 2:
        out.extend([comb(N, 2) * comb(comb(k, 2), 2)] * (k - 2))
    return tuple(out[:k])


def _rank_of_mask(mask: int) -> int:
    """Colex rank of the subset encoded by mask; no validation (hot path)."""
    rank = 0
    j = 1
    m = mask
    while m:
        rank += comb((m & -m).bit_length() - 1, j)
        j += 1
        m &= m - 1
    return rank


def _check_subset_params(n: int, k: int) -> None:
    if n < 1 or k < 1 or k > n:
        raise ParameterError(f"need 1 <= k <= n, got n={n} k={k}")


def subset_rank(mask: int, n: int, k: int) -> int:
    """Colex rank of a k-subset of [n] given as a bitmask.

    For S = {c_1 < ... < c_k} the rank is sum_j C(c_j - 1, j), a bijection
    onto {0, ..., C(n,k)-1}.
    """
    _check_subset_params(n, k)
    if mask <= 0 or mask >> n:
        raise ParameterError(f"mask {bin(mask)} is not a nonempty subset of [{n}]")
    if mask.bit_count() != k:
        raise ParameterError(f"mask has {mask.bit_count()} elements, expected k={k}")
    return _rank_of_mask(mask)


def subset_unrank(rank: int, n: int, k: int) -> int:
    """Inverse of subset_rank: bitmask of the k-subset of [n] with this rank."""
    _check_subset_params(n, k)
    if not 0 <= rank < comb(n, k):
        raise ParameterError(f"rank {rank} out of range for C({n},{k}) = {comb(n, k)}")
    mask = 0
    r = rank
    c = n
    for j in range(k, 0, -1):
        while comb(c - 1, j) > r:
            c -= 1
        mask |= 1 << (c - 1)
        r -= comb(c - 1, j)
        c -= 1
    return mask
