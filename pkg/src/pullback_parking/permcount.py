"""Counting parking functions through their outcome words.

An outcome word lists, spot by spot, which car ended up where (0 = vacant).
For each parked car the number of preferences that would have landed it on
its spot factors into a backward part B (cars it could have backed past),
a forward part F (occupied run it could have pulled through), plus one for
preferring the spot directly.  Products of these per-spot counts give
fiber sizes, and sums of fiber sizes over all words give totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .core import Params
from .oracle import ensure_within_ceiling


def multiset_permutations(items) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of `items` in lexicographic order.

    Standard next-permutation stepping; O(1) extra memory, no materialized
    list of results.
    """
    seq = sorted(items)
    size = len(seq)
    while True:
        yield tuple(seq)
        i = size - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = size - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1 :] = reversed(seq[i + 1 :])


def outcome_words(m: int, n: int) -> Iterator[tuple[int, ...]]:
    """All words with each car 1..m once and n-m zeros, lexicographically."""
    if m < 0 or n < 0 or m > n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    return multiset_permutations([0] * (n - m) + list(range(1, m + 1)))


def contained_words(a: int, b: int) -> Iterator[tuple[int, ...]]:
    """Outcome words for the 0..b street: a leading 0, then cars and zeros."""
    for tail in outcome_words(a, b):
        yield (0,) + tail


def _check_word(word) -> int:
    labels = sorted(v for v in word if v != 0)
    m = len(labels)
    if labels != list(range(1, m + 1)) or any(v < 0 for v in word):
        raise ValueError(f"not an outcome word: {word!r}")
    return m


def _run_right(word, j: int) -> int:
    v = word[j]
    x = 0
    t = j + 1
    while t < len(word) and 0 < word[t] < v:
        x += 1
        t += 1
    return x


def _run_left(word, j: int) -> int:
    v = word[j]
    x = 0
    t = j - 1
    while t >= 0 and 0 < word[t] < v:
        x += 1
        t -= 1
    return x


def _checked_position(word, spot: int) -> int:
    if not 1 <= spot <= len(word):
        raise ValueError(f"spot {spot} outside 1..{len(word)}")
    if word[spot - 1] == 0:
        raise ValueError(f"spot {spot} is vacant")
    return spot - 1


def right_run(word, spot: int) -> int:
    """Length of the run of earlier-arrived cars just right of `spot`."""
    return _run_right(word, _checked_position(word, spot))


def left_run(word, spot: int) -> int:
    """Length of the run of earlier-arrived cars just left of `spot`."""
    return _run_left(word, _checked_position(word, spot))


def _check_spot(word, spot: int) -> None:
    if not 1 <= spot <= len(word):
        raise ValueError(f"spot {spot} outside 1..{len(word)}")


def b_count(word, spot: int, k: int) -> int:
    """Preferences that park this car by backing in: min(right run, k)."""
    _check_spot(word, spot)
    if word[spot - 1] == 0:
        return 0
    return min(_run_right(word, spot - 1), k)


def f_count(word, spot: int, k: int, l: int) -> int:
    """Preferences that park this car by pulling forward.

    With the whole street left of the spot occupied the backward scan dies
    at the street start and only l limits the count; otherwise the car
    must clear k occupied spots behind its preference first.
    """
    _check_spot(word, spot)
    if word[spot - 1] == 0:
        return 0
    run = _run_left(word, spot - 1)
    if run == 0:
        return 0
    if run == spot - 1:
        return min(spot - 1, l)
    return max(min(run - k, l), 0)


def pref_count(word, spot: int, k: int, l: int) -> int:
    """Number of preferences landing the car at `spot`; 1 for vacant spots."""
    _check_spot(word, spot)
    if word[spot - 1] == 0:
        return 1
    return b_count(word, spot, k) + f_count(word, spot, k, l) + 1


def fiber_size(word, k: int, l: int) -> int:
    """Number of preference lists whose outcome is exactly `word`."""
    word = tuple(word)
    _check_word(word)
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    total = 1
    for spot in range(1, len(word) + 1):
        total *= pref_count(word, spot, k, l)
    return total


def total_count(params: Params, ceiling: int | None = None) -> int:
    """|PF_{m,n}(k,l)| as the sum of fiber sizes over all outcome words."""
    m, n, k, l = params.m, params.n, params.k, params.l
    if m > n:
        return 0
    if m == 0:
        return 1
    ensure_within_ceiling(math.perm(n, m), ceiling, f"summing fibers over words for PF({m},{n})")
    total = 0
    for word in outcome_words(m, n):
        product = 1
        for spot in range(1, n + 1):
            product *= pref_count(word, spot, k, l)
        total += product
    return total


def classical_fiber_size(perm) -> int:
    """Fiber size under the classical rule: product of longest runs of
    smaller labels ending at each position (the car itself included)."""
    perm = tuple(perm)
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm!r}")
    total = 1
    for j, v in enumerate(perm):
        run = 1
        t = j - 1
        while t >= 0 and perm[t] <= v:
            run += 1
            t -= 1
        total *= run
    return total


def contained_fiber_size(word, k: int, l: int) -> int:
    """Fiber size for a contained street, `word` starting with the spot-0 zero.

    Every zero (the leading one and interior ones) is a permanent vacancy,
    so a left run can never span the whole street and the forward count is
    always max(min(run - k, l), 0).
    """
    word = tuple(word)
    if not word or word[0] != 0:
        raise ValueError("contained outcome word must start with 0")
    cars = [v for v in word if v != 0]
    if len(set(cars)) != len(cars) or any(v < 0 for v in word):
        raise ValueError(f"not an outcome word: {word!r}")
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    total = 1
    for j in range(1, len(word)):
        if word[j] == 0:
            continue
        b = min(_run_right(word, j), k)
        f = max(min(_run_left(word, j) - k, l), 0)
        total *= b + f + 1
    return total


def contained_count_square(t: int, k: int, l: int, ceiling: int | None = None) -> int:
    """|C_{t,t}(k,l)|: fibers summed over all zero-prefixed permutations."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0:
        return 1
    ensure_within_ceiling(math.factorial(t), ceiling, f"summing contained fibers for C({t},{t})")
    total = 0
    for tail in permutations(range(1, t + 1)):
        total += contained_fiber_size((0,) + tail, k, l)
    return total


def contained_count(a: int, b: int, k: int, l: int, ceiling: int | None = None) -> int:
    """|C_{a,b}(k,l)|: fibers summed over all zero-prefixed outcome words."""
    Params(a, b, k, l)
    if a > b:
        return 0
    if a == 0:
        return 1
    ensure_within_ceiling(math.perm(b, a), ceiling, f"summing contained fibers for C({a},{b})")
    total = 0
    for word in contained_words(a, b):
        total += contained_fiber_size(word, k, l)
    return total


@dataclass(frozen=True)
class SubintervalDecomposition:
    """Occupied spots of an outcome word split into maximal consecutive runs.

    `intervals[v]` holds the spot numbers of the v-th run, `lengths[v]` its
    size, and `car_sets[v]` the labels parked there.  Each run after a
    vacancy behaves like its own contained street, which is what makes
    fiber sizes factor across runs.
    """

    occupied: tuple[int, ...]
    intervals: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]
    car_sets: tuple[frozenset[int], ...]


def subinterval_decomposition(word) -> SubintervalDecomposition:
    word = tuple(word)
    _check_word(word)
    occupied = tuple(i for i, v in enumerate(word, start=1) if v != 0)
    intervals: list[tuple[int, ...]] = []
    current: list[int] = []
    for spot in occupied:
        if current and spot != current[-1] + 1:
            intervals.append(tuple(current))
            current = []
        current.append(spot)
    if current:
        intervals.append(tuple(current))
    return SubintervalDecomposition(
        occupied=occupied,
        intervals=tuple(intervals),
        lengths=tuple(len(run) for run in intervals),
        car_sets=tuple(frozenset(word[s - 1] for s in run) for run in intervals),
    )


def knaples_count(m: int, n: int, k: int, ceiling: int | None = None) -> int:
    """Count with unrestricted forward motion (l = n-1)."""
    return total_count(Params(m, n, k, max(n - 1, 0)), ceiling)


def vacillating_count(m: int, n: int, ceiling: int | None = None) -> int:
    """Count with one spot of play in each direction (k = l = 1)."""
    return total_count(Params(m, n, 1, 1), ceiling)
