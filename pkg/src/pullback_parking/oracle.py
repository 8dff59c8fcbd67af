"""Brute-force ground truth by exhaustive enumeration of preference lists.

Every count here is obtained by simulating the parking rule on each
candidate list, so these functions are the reference the faster counting
methods are checked against.  Instances are refused when the enumeration
would exceed a configurable ceiling (default 10**8 lists, overridable via
the PULLBACK_CEILING environment variable or a `ceiling` argument).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement, product

from .core import Params, run_street

DEFAULT_CEILING = 10**8
_CEILING_ENV = "PULLBACK_CEILING"


class EnumerationLimitError(RuntimeError):
    """Raised when an instance is too large for exhaustive enumeration."""


def resolve_ceiling(ceiling: int | None = None) -> int:
    if ceiling is not None:
        return ceiling
    env = os.environ.get(_CEILING_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_CEILING


def ensure_within_ceiling(work: int, ceiling: int | None, what: str) -> None:
    """Refuse work above the resolved ceiling with a clear diagnostic."""
    limit = resolve_ceiling(ceiling)
    if work > limit:
        raise EnumerationLimitError(
            f"{what} needs {work} simulations, above the ceiling {limit}; "
            f"raise it via the ceiling option or {_CEILING_ENV}"
        )


def _count_range(firsts, m: int, n: int, k: int, l: int, virtual_start: bool) -> int:
    count = 0
    rest = range(1, n + 1)
    for first in firsts:
        for tail in product(rest, repeat=m - 1):
            spots = run_street((first, *tail), n, k, l, virtual_start)
            if len(spots) == m and (spots[-1] != 0 or not virtual_start):
                count += 1
    return count


def _count_all(m: int, n: int, k: int, l: int, virtual_start: bool, jobs: int) -> int:
    if m == 0:
        return 1
    if jobs > 1 and m > 1 and n > 1:
        chunks = [([first], m, n, k, l, virtual_start) for first in range(1, n + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return sum(pool.map(_count_worker, chunks))
    return _count_range(range(1, n + 1), m, n, k, l, virtual_start)


def _count_worker(args) -> int:
    return _count_range(*args)


def count_by_enumeration(params: Params, ceiling: int | None = None, jobs: int = 1) -> int:
    """|PF_{m,n}(k,l)| by simulating every list in [n]^m."""
    m, n = params.m, params.n
    if m > n:
        return 0
    ensure_within_ceiling(n**m if m else 1, ceiling, f"counting PF({params.m},{params.n})")
    return _count_all(m, n, params.k, params.l, False, jobs)


def count_contained_by_enumeration(
    a: int, b: int, k: int, l: int, ceiling: int | None = None, jobs: int = 1
) -> int:
    """|C_{a,b}(k,l)| by simulating every list in [b]^a on the 0..b street."""
    Params(a, b, k, l)
    if a > b:
        return 0
    ensure_within_ceiling(b**a if a else 1, ceiling, f"counting contained PF({a},{b})")
    return _count_all(a, b, k, l, True, jobs)


def _histogram_range(firsts, m: int, n: int, k: int, l: int) -> dict[tuple[int, ...], int]:
    hist: dict[tuple[int, ...], int] = {}
    rest = range(1, n + 1)
    for first in firsts:
        for tail in product(rest, repeat=m - 1):
            spots = run_street((first, *tail), n, k, l)
            if len(spots) != m:
                continue
            word = [0] * n
            for car, s in enumerate(spots, start=1):
                word[s - 1] = car
            key = tuple(word)
            hist[key] = hist.get(key, 0) + 1
    return hist


def _histogram_worker(args) -> dict[tuple[int, ...], int]:
    return _histogram_range(*args)


def fiber_histogram(
    params: Params, ceiling: int | None = None, jobs: int = 1
) -> dict[tuple[int, ...], int]:
    """Group every successful list by its outcome word.

    Values sum to count_by_enumeration; merging of partitioned runs keeps
    the sequential (lexicographic first-encounter) key order.
    """
    m, n, k, l = params.m, params.n, params.k, params.l
    if m > n:
        return {}
    ensure_within_ceiling(n**m if m else 1, ceiling, f"fiber histogram for PF({m},{n})")
    if m == 0:
        return {(0,) * n: 1}
    if jobs > 1 and m > 1 and n > 1:
        chunks = [([first], m, n, k, l) for first in range(1, n + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            merged: dict[tuple[int, ...], int] = {}
            for part in pool.map(_histogram_worker, chunks):
                for key, value in part.items():
                    merged[key] = merged.get(key, 0) + value
            return merged
    return _histogram_range(range(1, n + 1), m, n, k, l)


def count_weakly_increasing(params: Params, ceiling: int | None = None) -> int:
    """Count weakly increasing preference lists that park all cars."""
    m, n, k, l = params.m, params.n, params.k, params.l
    if m > n:
        return 0
    if m == 0:
        return 1
    ensure_within_ceiling(math.comb(n + m - 1, m), ceiling, f"weakly increasing PF({m},{n})")
    count = 0
    for prefs in combinations_with_replacement(range(1, n + 1), m):
        if len(run_street(prefs, n, k, l)) == m:
            count += 1
    return count


def sqrt2_numerators(count: int) -> list[int]:
    """Numerators of the first `count` continued-fraction convergents of sqrt(2).

    The partial quotients are extracted by the standard integer algorithm
    for quadratic surds rather than assumed, so this is an independent
    reference sequence (1, 3, 7, 17, 41, 99, ...).
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    a0 = math.isqrt(2)
    numerators: list[int] = []
    h_prev, h = 1, a0
    numerators.append(h)
    # Partial quotients of sqrt(d): m_{i+1} = d_i*a_i - m_i,
    # den_{i+1} = (d - m^2)/den_i, a_{i+1} = (a0 + m)//den.
    m_i, den, a_i = 0, 1, a0
    while len(numerators) < count:
        m_i = den * a_i - m_i
        den = (2 - m_i * m_i) // den
        a_i = (a0 + m_i) // den
        h_prev, h = h, a_i * h + h_prev
        numerators.append(h)
    return numerators[:count]
