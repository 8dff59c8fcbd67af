"""Pullback parking functions: rule simulation and exact counting.

Three independent routes to |PF_{m,n}(k,l)| — exhaustive simulation,
summing fiber sizes over outcome words, and a memoized recursion — plus
the contained variant, specializations (classical, Naples-style,
interval, vacillating), and a CLI (`pullback`) that cross-checks them.
"""

from .core import (
    CarTrace,
    Params,
    SimulationResult,
    Status,
    is_contained_pf,
    is_pullback_pf,
    simulate,
    simulate_contained,
)
from .oracle import (
    DEFAULT_CEILING,
    EnumerationLimitError,
    count_by_enumeration,
    count_contained_by_enumeration,
    count_weakly_increasing,
    fiber_histogram,
    sqrt2_numerators,
)
from .permcount import (
    SubintervalDecomposition,
    b_count,
    classical_fiber_size,
    contained_count,
    contained_count_square,
    contained_fiber_size,
    f_count,
    fiber_size,
    knaples_count,
    left_run,
    multiset_permutations,
    outcome_words,
    pref_count,
    right_run,
    subinterval_decomposition,
    total_count,
    vacillating_count,
)
from .recursion import (
    TermBreakdown,
    TermRow,
    classical_closed_form,
    clear_memo,
    knaples_count_recursive,
    knaples_published,
    pf_count_recursive,
    set_memo_cap,
    term_breakdown,
)

__version__ = "0.1.0"

__all__ = [
    "CarTrace",
    "DEFAULT_CEILING",
    "EnumerationLimitError",
    "Params",
    "SimulationResult",
    "Status",
    "SubintervalDecomposition",
    "TermBreakdown",
    "TermRow",
    "b_count",
    "classical_closed_form",
    "classical_fiber_size",
    "clear_memo",
    "contained_count",
    "contained_count_square",
    "contained_fiber_size",
    "count_by_enumeration",
    "count_contained_by_enumeration",
    "count_weakly_increasing",
    "f_count",
    "fiber_histogram",
    "fiber_size",
    "is_contained_pf",
    "is_pullback_pf",
    "knaples_count",
    "knaples_count_recursive",
    "knaples_published",
    "left_run",
    "multiset_permutations",
    "outcome_words",
    "pf_count_recursive",
    "pref_count",
    "right_run",
    "set_memo_cap",
    "subinterval_decomposition",
    "simulate",
    "simulate_contained",
    "sqrt2_numerators",
    "term_breakdown",
    "total_count",
    "vacillating_count",
]
