"""Shared helpers for the test suite: term enumeration and brute-force oracles."""

from functools import lru_cache
from itertools import combinations_with_replacement

from bluebird.bterm import App, B, BTerm
from bluebird.canonical import DegreeSeq, canonicalize
from bluebird.fast_apply import apply_runs, raise_runs


@lru_cache(maxsize=None)
def bterm_shapes(leaves: int) -> tuple[BTerm, ...]:
    """All application trees over the single constant with `leaves` leaves.

    Catalan-many shapes: 1, 1, 2, 5, 14, 42, 132, ...
    """
    if leaves < 1:
        raise ValueError("need at least one leaf")
    if leaves == 1:
        return (B,)
    out = []
    for k in range(1, leaves):
        for fn in bterm_shapes(k):
            for arg in bterm_shapes(leaves - k):
                out.append(App(fn, arg))
    return tuple(out)


def bterms_up_to(leaves: int) -> list[BTerm]:
    out: list[BTerm] = []
    for n in range(1, leaves + 1):
        out.extend(bterm_shapes(n))
    return out


def random_bterm(rng, max_leaves: int = 12) -> BTerm:
    """Uniform leaf count in 1..max_leaves, then a random split at each node."""
    def build(n: int) -> BTerm:
        if n == 1:
            return B
        k = rng.randint(1, n - 1)
        return App(build(k), build(n - k))
    return build(rng.randint(1, max_leaves))


def brute_rho(x: BTerm, limit: int) -> tuple[int, int]:
    """First-repeat search over the canonical forms of X^(1), X^(2), ...

    Returns the minimal (entry, cycle) pair, independent of the pointer
    algorithms under test.  Raises if no repeat shows up within `limit`.
    """
    base = canonicalize(x).runs
    seen: dict[tuple, int] = {}
    cur = base
    i = 1
    while i <= limit:
        if cur in seen:
            return seen[cur], i - seen[cur]
        seen[cur] = i
        cur = apply_runs(cur, raise_runs(base))
        i += 1
    raise AssertionError(f"no repeat within {limit} steps")


def decreasing_seqs(max_entries: int, max_degree: int) -> list[DegreeSeq]:
    """Every decreasing-degree sequence with 1..max_entries entries, degrees
    bounded by max_degree.  (Multisets of degrees, written descending.)"""
    out = []
    for n in range(1, max_entries + 1):
        for combo in combinations_with_replacement(range(max_degree + 1), n):
            out.append(DegreeSeq.from_degrees(sorted(combo, reverse=True)))
    return out
