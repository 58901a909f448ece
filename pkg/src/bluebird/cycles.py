"""Generic cycle detection over an advance function.

Both searches take the first element of an orbit x1, x2 = f(x1), ... and
return (entry, cycle): the least entry with x(entry) = x(entry + cycle) and
the least such positive cycle. States must support ==; f must be pure.

floyd_rho runs the classic three phases in the form used throughout this
package: phase 1 holds slow at x(i) and fast at x(2i) until they meet at
index m; phase 2 restarts slow from x(1) against fast = x(m+1) and walks
both in lockstep to the entry; phase 3 anchors at the entry and walks a
single pointer to measure the cycle (at most m more steps).

brent_rho teleports an anchor at power-of-two indices, which finds the cycle
length first and needs no doubled pointer; it usually does fewer advances.

The budget counts advances, i.e. calls of f. Checkpointable searches for the
canonical engine live in cycle_detect; these generics serve the lambda and
restricted engines and cross-checks in tests.
"""

from __future__ import annotations

from typing import Callable, TypeVar

from .errors import CycleNotFound

S = TypeVar("S")


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def step(self, f: Callable[[S], S], x: S) -> S:
        if self.left <= 0:
            raise CycleNotFound(self.limit)
        self.left -= 1
        return f(x)


def floyd_rho(first: S, f: Callable[[S], S], max_steps: int = 10**6) -> tuple[int, int]:
    """Tortoise-and-hare search; returns (entry, cycle)."""
    budget = _Budget(max_steps)
    slow = first
    fast = budget.step(f, first)
    m = 1
    while slow != fast:
        slow = budget.step(f, slow)
        fast = budget.step(f, budget.step(f, fast))
        m += 1
    # slow = x(m) = x(2m); the entry is the first collision of x(1), x(2), ...
    # against x(m+1), x(m+2), ... since m is a multiple of the cycle length.
    fast = budget.step(f, slow)
    slow = first
    entry = 1
    while slow != fast:
        slow = budget.step(f, slow)
        fast = budget.step(f, fast)
        entry += 1
    anchor = slow
    fast = budget.step(f, slow)
    cycle = 1
    while anchor != fast:
        fast = budget.step(f, fast)
        cycle += 1
    return entry, cycle


def brent_rho(first: S, f: Callable[[S], S], max_steps: int = 10**6) -> tuple[int, int]:
    """Brent's teleporting-anchor search; returns (entry, cycle)."""
    budget = _Budget(max_steps)
    slow = first
    fast = budget.step(f, first)
    power = 1
    lam = 1
    while slow != fast:
        if power == lam:
            slow = fast
            power <<= 1
            lam = 0
        fast = budget.step(f, fast)
        lam += 1
    # lam is the exact cycle length; walk two pointers lam apart to the entry
    slow = first
    fast = first
    for _ in range(lam):
        fast = budget.step(f, fast)
    entry = 1
    while slow != fast:
        slow = budget.step(f, slow)
        fast = budget.step(f, fast)
        entry += 1
    return entry, lam
