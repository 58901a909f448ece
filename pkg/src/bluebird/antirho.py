"""Certificates that a self-application orbit can never cycle.

A term X has the cycling property when X(i) = X(i+j) for some i, j >= 1 in
the orbit X(1) = X, X(i+1) = X(i) X up to beta-eta. This module checks the
opposite: families of normal-form trees closed under the orbit step, on
which the leaf count never decreases and keeps growing, so no iterate can
ever repeat.

The flagship family covers composition powers of a monomial: for k >= 0 and
n >= 1, the term Z of canonical form [k, k, ..., k] with (k+2)n entries.
Its iterates stay inside a tree family described by MonomialPower, the
leaf count l and head-argument count a of consecutive iterates obey exact
recurrences, and a is confined to {k+1, (k+2)n+k+1}. run_power_suite checks
all of this plus cycle-freedom over a finite stretch of the orbit.

Everything here works on the eta-short normal-form trees produced by
canonical.tree_of, with the lambda oracle cross-checking small iterates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Union

from . import bterm as bt
from .canonical import DegreeSeq, seq_to_bterm, tree_of
from .cycle_detect import iterate
from .trees import LEAF, BinTree, split_spine, tree_equal

TermLike = Union[bt.BTerm, str]


@dataclass(frozen=True, slots=True)
class MonomialPower:
    """Composition power of a degree-k monomial with (k+2)n factors."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def width(self) -> int:
        """Argument count of a composite member of the argument family."""
        return (self.k + 2) * self.n

    @property
    def leaf_count(self) -> int:
        """Leaves of the base term's normal-form tree."""
        return self.k + self.width + 2


def z_term(mp: MonomialPower) -> bt.BTerm:
    """The base term: (k+2)n composed copies of the degree-k monomial."""
    return seq_to_bterm(DegreeSeq.from_degrees([mp.k] * mp.width))


def in_argument_family(t: BinTree, mp: MonomialPower) -> bool:
    """Trees allowed as head arguments of an iterate: a leaf, or a head
    leaf with exactly (k+2)n arguments whose every (k+2)-nd argument
    (1-indexed) is a leaf and whose other arguments are again members."""
    period = mp.k + 2
    width = mp.width
    stack = [t]
    while stack:
        u = stack.pop()
        if u is LEAF:
            continue
        head, args = split_spine(u)
        if head is not LEAF or len(args) != width:
            return False
        for pos, s in enumerate(args, start=1):
            if pos % period == 0:
                if s is not LEAF:
                    return False
            else:
                stack.append(s)
    return True


def in_iterate_family(t: BinTree, mp: MonomialPower) -> bool:
    """Trees of orbit iterates: a left chain of exactly k+2 components,
    each in the argument family. The leftmost component may itself be
    composite, so exactly k+1 applications are peeled, no more."""
    comps = []
    cur = t
    for _ in range(mp.k + 1):
        if cur is LEAF:
            return False
        comps.append(cur.right)
        cur = cur.left
    comps.append(cur)
    return all(in_argument_family(c, mp) for c in comps)


@dataclass(frozen=True, slots=True)
class TreeStats:
    """Shape summary of a normal-form tree: leaf count, number of arguments
    applied to the head variable, and the first two of those arguments."""

    leaves: int
    head_args: int
    first_arg: BinTree | None
    second_arg: BinTree | None


def tree_stats(t: BinTree) -> TreeStats:
    head, args = split_spine(t)
    return TreeStats(
        leaves=t.size,
        head_args=len(args),
        first_arg=args[0] if args else None,
        second_arg=args[1] if len(args) > 1 else None,
    )


def orbit_trees(x: TermLike, count: int) -> Iterator[BinTree]:
    """Normal-form trees of X(1) .. X(count)."""
    for seq in iterate(x, count):
        yield tree_of(seq)


@dataclass(frozen=True, slots=True)
class CheckItem:
    name: str
    ok: bool
    detail: str = ""

    def render(self) -> str:
        line = ("ok   " if self.ok else "FAIL ") + self.name
        if self.detail:
            line += f" -- {self.detail}"
        return line


@dataclass(frozen=True, slots=True)
class Report:
    items: tuple[CheckItem, ...]

    @property
    def passed(self) -> bool:
        return all(item.ok for item in self.items)

    def render(self) -> str:
        lines = [item.render() for item in self.items]
        failed = sum(1 for item in self.items if not item.ok)
        lines.append("all checks passed" if failed == 0 else f"{failed} check(s) failed")
        return "\n".join(lines)


def _item(name: str, flags: list[tuple[int, bool, str]]) -> CheckItem:
    for i, ok, detail in flags:
        if not ok:
            return CheckItem(name, False, f"at iterate {i}: {detail}")
    return CheckItem(name, True)


def _oracle_stats_item(x: TermLike, trees: list[BinTree], limit: int = 6) -> CheckItem:
    """Independent route: normalize X(i) in the lambda calculus and compare
    binder and head-argument counts against the tree route."""
    from .lambda_oracle import bterm_to_lambda, term_stats

    if isinstance(x, str):
        x = bt.parse(x)
    flags = []
    for i in range(1, min(limit, len(trees)) + 1):
        stats = term_stats(bterm_to_lambda(bt.flat(x, i)), max_steps=10**6)
        tstats = tree_stats(trees[i - 1])
        ok = stats.binders == tstats.leaves and stats.head_args == tstats.head_args
        detail = (
            f"oracle (l={stats.binders}, a={stats.head_args}) vs "
            f"trees (l={tstats.leaves}, a={tstats.head_args})"
        )
        flags.append((i, ok, detail))
    return _item(f"lambda oracle agrees on leaf and head-arg counts (first {len(flags)})", flags)


def check_monotone(
    x: TermLike, steps: int, window: int | None = None
) -> Report:
    """Cycle-freedom evidence over X(1) .. X(steps): the leaf count never
    decreases, keeps increasing, and no canonical form repeats.

    "Keeps increasing" is a windowed heuristic: from each iterate a strict
    increase must occur within `window` further iterates. Flat stretches
    (the head swallowing arguments without growing) get longer as terms
    grow, so no fixed window is sound for every family; by default the
    window adapts to the current leaf count plus a base margin, which
    stays comfortably above every stall observed across the test families.
    """
    seqs = list(iterate(x, steps))
    trees = [tree_of(s) for s in seqs]
    leaves = [t.size for t in trees]
    if window is None:
        margin = 2 * leaves[0] + 2
        windows = [leaves[i] + margin for i in range(len(leaves))]
        label = "within a dynamic window (heuristic)"
    else:
        windows = [window] * len(leaves)
        label = f"within any {window} iterates (heuristic window)"

    flags = [
        (i + 1, leaves[i + 1] >= leaves[i], f"leaf count {leaves[i]} -> {leaves[i + 1]}")
        for i in range(len(leaves) - 1)
    ]
    non_decreasing = _item("leaf count never decreases", flags)

    flags = []
    for i in range(len(leaves)):
        j = i + windows[i]
        if j >= len(leaves):
            break
        flags.append(
            (i + 1, leaves[j] > leaves[i],
             f"leaf count stuck at {leaves[i]} from iterate {i + 1} to {j + 1}")
        )
    growing = _item(f"leaf count strictly increases {label}", flags)

    seen: dict[tuple, int] = {}
    flags = []
    for i, s in enumerate(seqs, start=1):
        prev = seen.setdefault(s.runs, i)
        flags.append((i, prev == i, f"canonical form equals iterate {prev}"))
    distinct = _item(f"no canonical form repeats in {steps} iterates", flags)

    return Report((non_decreasing, growing, distinct))


def check_general_condition(
    x: TermLike,
    membership: Callable[[BinTree], bool],
    steps: int,
) -> Report:
    """Sampled form of the no-cycle argument: every iterate tree belongs to
    the family, and the base leaf count exceeds every iterate's
    head-argument count. A family closed under the orbit step with that
    property can never produce a repeat."""
    trees = list(orbit_trees(x, steps))
    base_leaves = trees[0].size

    flags = [(i, membership(t), "tree left the family") for i, t in enumerate(trees, start=1)]
    member = _item(f"all {steps} iterate trees stay in the family", flags)

    flags = [
        (i, base_leaves >= tree_stats(t).head_args + 1,
         f"base has {base_leaves} leaves but iterate applies {tree_stats(t).head_args} arguments")
        for i, t in enumerate(trees, start=1)
    ]
    bound = _item("base leaf count exceeds every head-argument count", flags)

    return Report((member, bound))


def run_power_suite(mp: MonomialPower, steps: int = 200) -> Report:
    """Full certificate for a monomial power: family membership, the exact
    leaf/head-arg/first-arg recurrences between consecutive iterates, the
    two admissible head-arg counts, monotone growth, and the lambda-oracle
    cross-check."""
    x = z_term(mp)
    trees = list(orbit_trees(x, steps))
    stats = [tree_stats(t) for t in trees]
    gain = mp.leaf_count - 1  # leaves added by one application before head loss

    items = []

    flags = [(i, in_iterate_family(t, mp), "tree left the family")
             for i, t in enumerate(trees, start=1)]
    items.append(_item(f"all {steps} iterate trees stay in the family", flags))

    low, high = mp.k + 1, mp.width + mp.k + 1
    flags = [(i, s.head_args in (low, high), f"head applies {s.head_args} arguments")
             for i, s in enumerate(stats, start=1)]
    items.append(_item(f"head-argument count always {low} or {high}", flags))

    flags = []
    for i in range(len(stats) - 1):
        want = stats[i].leaves + gain - stats[i].head_args
        got = stats[i + 1].leaves
        flags.append((i + 1, got == want, f"expected {want} leaves, got {got}"))
    items.append(_item("leaf-count recurrence holds", flags))

    flags = []
    for i in range(len(stats) - 1):
        first = stats[i].first_arg
        if first is None:
            flags.append((i + 1, False, "iterate has no head arguments"))
            continue
        want = tree_stats(first).head_args + mp.k + 1
        got = stats[i + 1].head_args
        flags.append((i + 1, got == want, f"expected {want} head arguments, got {got}"))
    items.append(_item("head-arg recurrence holds", flags))

    flags = []
    for i in range(len(stats) - 1):
        first = stats[i].first_arg
        nxt = stats[i + 1].first_arg
        if first is None or nxt is None:
            flags.append((i + 1, False, "iterate has no head arguments"))
            continue
        if first is LEAF:
            # the next first argument is built by substituting into the
            # base's first argument; that collapses to the plain second
            # argument only when the base's first argument is a lone leaf,
            # i.e. k >= 1. For k = 0 the substituted shape is not asserted
            # here; the oracle cross-check still covers those iterates.
            if mp.k == 0:
                continue
            want = stats[i].second_arg
        else:
            want = tree_stats(first).first_arg
        if want is None:
            flags.append((i + 1, False, "recurrence source argument missing"))
            continue
        flags.append((i + 1, tree_equal(nxt, want), "first argument differs from prediction"))
    items.append(_item("first-arg recurrence holds (substitution-free cases)", flags))

    for item in check_monotone(x, steps).items:
        items.append(item)

    items.append(_oracle_stats_item(x, trees))

    return Report(tuple(items))


def example_antirho_term() -> bt.BTerm:
    """The worked non-monomial example: canonical form [2, 2, 1, 1, 0, 0]."""
    return seq_to_bterm(DegreeSeq.from_degrees([2, 2, 1, 1, 0, 0]))


def in_example_argument_family(t: BinTree) -> bool:
    """Argument family for the worked example: a leaf; or a head leaf with
    arguments (t1, leaf); or with arguments (t1, leaf, s, leaf) where s is
    itself a head leaf with arguments (t2, leaf); t1, t2 again members."""
    stack = [t]
    while stack:
        u = stack.pop()
        if u is LEAF:
            continue
        head, args = split_spine(u)
        if head is not LEAF:
            return False
        if len(args) == 2 and args[1] is LEAF:
            stack.append(args[0])
            continue
        if len(args) == 4 and args[1] is LEAF and args[3] is LEAF and args[2] is not LEAF:
            h2, a2 = split_spine(args[2])
            if h2 is LEAF and len(a2) == 2 and a2[1] is LEAF:
                stack.append(args[0])
                stack.append(a2[0])
                continue
        return False
    return True


def in_example_family(t: BinTree) -> bool:
    """Iterate family for the worked example: an application of a member t1
    to a tree with head leaf and arguments (t2, leaf), t2 a member."""
    if t is LEAF:
        return False
    right = t.right
    if right is LEAF:
        return False
    head, args = split_spine(right)
    if head is not LEAF or len(args) != 2 or args[1] is not LEAF:
        return False
    return in_example_argument_family(t.left) and in_example_argument_family(args[0])


def run_term_suite(
    x: TermLike,
    steps: int = 100,
    membership: Callable[[BinTree], bool] | None = None,
    window: int | None = None,
) -> Report:
    """Anti-cycle evidence for an arbitrary term: monotone growth plus,
    when a family predicate is supplied, membership and the leaf/head-arg
    bound of the no-cycle argument, plus the lambda-oracle cross-check."""
    items = list(check_monotone(x, steps, window=window).items)
    if membership is not None:
        items.extend(check_general_condition(x, membership, steps).items)
    trees = list(orbit_trees(x, min(steps, 6)))
    items.append(_oracle_stats_item(x, trees))
    return Report(tuple(items))
