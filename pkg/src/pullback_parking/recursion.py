"""Recursive counting of pullback parking functions.

The count is split by the spot the final car takes and by how it got
there: preferring it directly (Z), backing in from a block of earlier
cars to its right (X when that block runs to the street end, V
otherwise), or pulling forward through a block to its left (Y when the
block starts at spot 1, W otherwise).  Sub-streets contribute previously
computed parking-function and contained counts, memoized under keys with
k and l clamped to the sub-street length where larger values coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import permcount
from .core import Params

_PF_MEMO: dict[tuple[int, int, int, int], int] = {}
_C_MEMO: dict[tuple[int, int, int, int], int] = {}
_MEMO_CAP: int | None = None


def clear_memo() -> None:
    _PF_MEMO.clear()
    _C_MEMO.clear()


def set_memo_cap(cap: int | None) -> None:
    """Cap the memo tables; reaching the cap clears the whole table."""
    global _MEMO_CAP
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive or None")
    _MEMO_CAP = cap


def memo_sizes() -> tuple[int, int]:
    return len(_PF_MEMO), len(_C_MEMO)


def _store(table: dict, key: tuple, value: int) -> int:
    if _MEMO_CAP is not None and len(table) >= _MEMO_CAP:
        table.clear()
    table[key] = value
    return value


def _canon_key(cars: int, spots: int, k: int, l: int) -> tuple[int, int, int, int]:
    reach = max(spots - 1, 0)
    return (cars, spots, min(k, reach), min(l, reach))


def _binom(n: int, r: int) -> int:
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def _cc(a: int, b: int, k: int, l: int, ceiling: int | None) -> int:
    if a < 0 or b < 0 or a > b:
        return 0
    if a == 0:
        return 1
    key = _canon_key(a, b, k, l)
    hit = _C_MEMO.get(key)
    if hit is not None:
        return hit
    return _store(_C_MEMO, key, permcount.contained_count(a, b, k, l, ceiling))


def _pf(m: int, n: int, k: int, l: int, ceiling: int | None) -> int:
    if m < 0 or n < 0 or m > n:
        return 0
    if m == 0:
        return 1
    key = _canon_key(m, n, k, l)
    hit = _PF_MEMO.get(key)
    if hit is not None:
        return hit
    total = 0
    for i in range(1, n + 1):
        x, y, z, v, w = _spot_terms(m, n, k, l, i, ceiling)
        total += x + y + z + v + w
    return _store(_PF_MEMO, key, total)


def _spot_terms(
    m: int, n: int, k: int, l: int, i: int, ceiling: int | None
) -> tuple[int, int, int, int, int]:
    """The five contributions for the final car parking at spot i.

    Degenerate indices (empty ranges, invalid binomials, more cars than
    spots) all contribute 0, so no range is pruned.
    """
    x_term = (
        _binom(m - 1, n - i)
        * _pf(m - 1 - n + i, i - 1, k, l, ceiling)
        * _cc(n - i, n - i, k, l, ceiling)
        * min(k, n - i)
    )
    y_term = (
        _binom(m - 1, i - 1)
        * _pf(i - 1, i - 1, k, l, ceiling)
        * _cc(m - i, n - i, k, l, ceiling)
        * min(i - 1, l)
    )
    z_sum = 0
    v_sum = 0
    w_sum = 0
    for x in range(0, m):
        choose_left = _binom(m - 1, x)
        if choose_left == 0:
            continue
        left = _pf(x, i - 1, k, l, ceiling)
        z_sum += choose_left * left * _cc(m - 1 - x, n - i, k, l, ceiling)
        if left:
            for r in range(1, n - i):
                v_sum += (
                    choose_left
                    * left
                    * _binom(m - 1 - x, r)
                    * _cc(r, r, k, l, ceiling)
                    * _cc(m - 1 - x - r, n - r - i - 1, k, l, ceiling)
                    * min(r, k)
                )
        for r in range(k + 1, i - 1):
            w_sum += (
                choose_left
                * _pf(x, i - r - 2, k, l, ceiling)
                * _binom(m - 1 - x, r)
                * _cc(r, r, k, l, ceiling)
                * _cc(m - 1 - x - r, n - i, k, l, ceiling)
                * min(r - k, l)
            )
    return x_term, y_term, z_sum, v_sum, w_sum


def pf_count_recursive(params: Params, ceiling: int | None = None) -> int:
    """|PF_{m,n}(k,l)| by the five-term recursion; memoized across calls."""
    return _pf(params.m, params.n, params.k, params.l, ceiling)


@dataclass(frozen=True)
class TermRow:
    spot: int
    x_term: int
    y_term: int
    z_sum: int
    v_sum: int
    w_sum: int

    @property
    def total(self) -> int:
        return self.x_term + self.y_term + self.z_sum + self.v_sum + self.w_sum


@dataclass(frozen=True)
class TermBreakdown:
    params: Params
    rows: tuple[TermRow, ...]

    @property
    def total(self) -> int:
        return sum(row.total for row in self.rows)


def term_breakdown(params: Params, ceiling: int | None = None) -> TermBreakdown:
    """Per-spot values of the five recursion terms for one instance."""
    m, n = params.m, params.n
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rows = tuple(
        TermRow(i, *_spot_terms(m, n, params.k, params.l, i, ceiling))
        for i in range(1, n + 1)
    )
    return TermBreakdown(params, rows)


def knaples_count_recursive(m: int, n: int, k: int, ceiling: int | None = None) -> int:
    """Recursive count with unrestricted forward motion (l = n-1)."""
    return pf_count_recursive(Params(m, n, k, max(n - 1, 0)), ceiling)


_PUBLISHED_MEMO: dict[tuple[int, int], int] = {}


def knaples_published(length: int, k: int) -> int:
    """Previously published recursion for the k-Naples count at m = n.

    Implemented on its own (no call into pf_count_recursive) so the two
    recursions stay independent cross-checks of each other.
    """
    if length < 0 or k < 0:
        raise ValueError("length and k must be nonnegative")
    if length == 0:
        return 1
    key = (length, k)
    hit = _PUBLISHED_MEMO.get(key)
    if hit is not None:
        return hit
    n = length - 1
    total = 0
    for i in range(0, n + 1):
        tail_spots = n - i
        tail = (tail_spots + 1) ** (tail_spots - 1) if tail_spots >= 1 else 1
        total += (
            math.comb(n, i)
            * min((i + 1) + k, n + 1)
            * knaples_published(i, k)
            * tail
        )
    _PUBLISHED_MEMO[key] = total
    return total


def classical_closed_form(m: int, n: int) -> int:
    """(n+1-m)(n+1)^(m-1), the classical-rule count for m cars, n spots."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    if m == 0:
        return 1
    return (n + 1 - m) * (n + 1) ** (m - 1)
