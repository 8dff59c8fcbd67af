"""Executable semantics of the pullback parking rule.

A street has spots 1..n and m cars arrive in order, each with a preferred
spot.  A car whose preference is taken checks up to k spots behind it
(nearest first), then up to l spots ahead, and parks at the first vacancy
it finds; otherwise it leaves and the whole run fails.  The contained
variant adds a permanently vacant spot 0 in front of the street: a car
that would back into spot 0 disqualifies the preference list.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Status(Enum):
    SUCCESS = "success"
    FAIL = "fail"
    CONTAINMENT_VIOLATION = "containment-violation"


@dataclass(frozen=True)
class Params:
    """A parking instance: m cars, n spots, backward/forward allowances k, l.

    k and l may exceed the street length; values >= n-1 behave exactly like
    n-1.  m > n is representable (every simulation then fails) and m = 0 is
    the empty instance used as a recursion base case.
    """

    m: int
    n: int
    k: int
    l: int

    def __post_init__(self) -> None:
        for name in ("m", "n", "k", "l"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            if value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value}")


@dataclass(frozen=True)
class CarTrace:
    """One car's walk: spots scanned behind and ahead of its preference.

    parked_at is the spot it ended on, 0 if it backed into the virtual
    spot of a contained street, or None if it failed to park.
    """

    car: int
    preferred: int
    backward_checked: tuple[int, ...]
    forward_checked: tuple[int, ...]
    parked_at: int | None


@dataclass(frozen=True)
class SimulationResult:
    status: Status
    traces: tuple[CarTrace, ...]
    outcome: tuple[int, ...] | None
    failed_car: int | None = None

    @property
    def ok(self) -> bool:
        return self.status is Status.SUCCESS


def run_street(prefs, n: int, k: int, l: int, virtual_start: bool = False) -> list[int]:
    """Park cars one by one; return the spot each car took, in arrival order.

    The returned list stops early when a car cannot park (its entry is
    absent) or, with virtual_start, when a car backs into spot 0 (its
    entry is 0 and it is the last).  Spot 0 is modelled as permanently
    occupied on an ordinary street so the backward scan never leaves it.
    """
    occupied = [False] * (n + 1)
    occupied[0] = not virtual_start
    spots: list[int] = []
    for p in prefs:
        if not occupied[p]:
            occupied[p] = True
            spots.append(p)
            continue
        lo = p - k
        if lo < 0:
            lo = 0
        found = -1
        s = p - 1
        while s >= lo:
            if not occupied[s]:
                found = s
                break
            s -= 1
        if found < 0:
            hi = p + l
            if hi > n:
                hi = n
            s = p + 1
            while s <= hi:
                if not occupied[s]:
                    found = s
                    break
                s += 1
        if found < 0:
            break
        occupied[found] = True
        spots.append(found)
        if found == 0:
            break
    return spots


def _validated(prefs, m: int, n: int) -> tuple[int, ...]:
    entries = tuple(prefs)
    if len(entries) != m:
        raise ValueError(f"preference list has length {len(entries)}, expected m={m}")
    for a in entries:
        if not isinstance(a, int) or isinstance(a, bool) or not 1 <= a <= n:
            raise ValueError(f"preference {a!r} outside 1..{n}")
    return entries


def _trace(car: int, p: int, spot: int | None, n: int, k: int, l: int, floor: int) -> CarTrace:
    # Reconstruct the scan from the landing spot; the scan order is fixed
    # (p-1 down to max(p-k, floor), then p+1 up to min(p+l, n)).
    back_stop = max(p - k, floor)
    if spot == p:
        backward: tuple[int, ...] = ()
        forward: tuple[int, ...] = ()
    elif spot is not None and spot < p:
        backward = tuple(range(p - 1, spot - 1, -1))
        forward = ()
    else:
        backward = tuple(range(p - 1, back_stop - 1, -1))
        if spot is None:
            forward = tuple(range(p + 1, min(p + l, n) + 1))
        else:
            forward = tuple(range(p + 1, spot + 1))
    return CarTrace(car, p, backward, forward, spot)


def _outcome_word(spots, n: int) -> tuple[int, ...]:
    word = [0] * n
    for car, s in enumerate(spots, start=1):
        word[s - 1] = car
    return tuple(word)


def simulate(prefs, params: Params) -> SimulationResult:
    """Run the pullback rule and record every car's scan.

    Raises ValueError for a malformed preference list; a car failing to
    park is not an error but a FAIL result ending the run.
    """
    entries = _validated(prefs, params.m, params.n)
    n, k, l = params.n, params.k, params.l
    spots = run_street(entries, n, k, l)
    traces = [
        _trace(car, p, s, n, k, l, floor=1)
        for car, (p, s) in enumerate(zip(entries, spots), start=1)
    ]
    if len(spots) == params.m:
        return SimulationResult(Status.SUCCESS, tuple(traces), _outcome_word(spots, n))
    failed = len(spots) + 1
    traces.append(_trace(failed, entries[failed - 1], None, n, k, l, floor=1))
    return SimulationResult(Status.FAIL, tuple(traces), None, failed_car=failed)


def is_pullback_pf(prefs, params: Params) -> bool:
    """True iff every car parks under the pullback rule."""
    entries = _validated(prefs, params.m, params.n)
    return len(run_street(entries, params.n, params.k, params.l)) == params.m


def simulate_contained(prefs, a: int, b: int, k: int, l: int) -> SimulationResult:
    """Run the rule on a street with a permanently vacant spot 0 in front.

    Preferences stay in 1..b; only a backward scan can reach spot 0, and a
    car parking there yields CONTAINMENT_VIOLATION instead of SUCCESS.
    """
    Params(a, b, k, l)
    entries = _validated(prefs, a, b)
    spots = run_street(entries, b, k, l, virtual_start=True)
    traces = [
        _trace(car, p, s, b, k, l, floor=0)
        for car, (p, s) in enumerate(zip(entries, spots), start=1)
    ]
    if spots and spots[-1] == 0:
        return SimulationResult(
            Status.CONTAINMENT_VIOLATION, tuple(traces), None, failed_car=len(spots)
        )
    if len(spots) == a:
        return SimulationResult(Status.SUCCESS, tuple(traces), _outcome_word(spots, b))
    failed = len(spots) + 1
    traces.append(_trace(failed, entries[failed - 1], None, b, k, l, floor=0))
    return SimulationResult(Status.FAIL, tuple(traces), None, failed_car=failed)


def is_contained_pf(prefs, a: int, b: int, k: int, l: int) -> bool:
    """True iff all cars park in 1..b and none backs into spot 0."""
    Params(a, b, k, l)
    entries = _validated(prefs, a, b)
    spots = run_street(entries, b, k, l, virtual_start=True)
    return len(spots) == a and (a == 0 or spots[-1] != 0)
