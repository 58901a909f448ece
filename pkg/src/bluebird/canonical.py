"""Canonical forms for B-terms.

Every B-term is equivalent to a unique composition chain

    (B^n1 B) . (B^n2 B) . ... . (B^nk B)      n1 >= n2 >= ... >= nk >= 0

so a non-increasing sequence of degrees [n1, ..., nk] is a complete invariant:
two B-terms are beta-eta equivalent iff their sequences match. DegreeSeq
stores the sequence run-length encoded; canonicalize computes it by structural
rewriting, canonical_via_lambda recomputes it through the lambda oracle so the
two routes can be cross-checked.

The only non-trivial law is the adjacent swap

    (B^m B) . (B^n B)  =  (B^(n+1) B) . (B^m B)      when m < n

which drives an insertion sort: an out-of-place unit bubbles left past every
strictly smaller neighbour, gaining one degree per element passed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bterm as bt
from .errors import ParseError
from .trees import LEAF, BinTree, Node, comb

Runs = tuple[tuple[int, int], ...]


@dataclass(frozen=True, slots=True)
class DegreeSeq:
    """Run-length encoded non-increasing degree sequence.

    runs is ((degree, multiplicity), ...) with strictly decreasing degrees
    and positive multiplicities; value equality is canonical-form equality.
    """

    runs: Runs

    def __post_init__(self) -> None:
        if not self.runs:
            raise ValueError("degree sequence must be nonempty")
        prev = None
        for d, m in self.runs:
            if d < 0 or m < 1:
                raise ValueError(f"bad run ({d}, {m})")
            if prev is not None and d >= prev:
                raise ValueError("run degrees must strictly decrease")
            prev = d

    @staticmethod
    def from_degrees(degrees) -> "DegreeSeq":
        """Build from an explicit non-increasing iterable like [4, 2, 2, 0]."""
        runs: list[tuple[int, int]] = []
        for d in degrees:
            if runs and runs[-1][0] == d:
                runs[-1] = (d, runs[-1][1] + 1)
            else:
                runs.append((d, 1))
        return DegreeSeq(tuple(runs))

    def degrees(self) -> tuple[int, ...]:
        """Expanded sequence; avoid on astronomically large multiplicities."""
        out: list[int] = []
        for d, m in self.runs:
            out.extend([d] * m)
        return tuple(out)

    def __len__(self) -> int:
        return sum(m for _, m in self.runs)

    @property
    def max_degree(self) -> int:
        return self.runs[0][0]

    def is_monomial(self) -> bool:
        """True when the whole form is a single B^n B."""
        return len(self.runs) == 1 and self.runs[0][1] == 1

    def text(self) -> str:
        return "[" + ",".join(str(d) for d in self.degrees()) + "]"

    def rle_text(self) -> str:
        return ",".join(f"{d}*{m}" for d, m in self.runs)

    def __str__(self) -> str:
        return self.text()


def parse_seq(text: str) -> DegreeSeq:
    """Parse either the bracket form "[4,2,2,0]" or the RLE form "4*1,2*2,0*1"."""
    s = text.strip()
    if not s:
        raise ParseError("empty degree sequence", 0)
    try:
        if "*" in s:
            runs = []
            for part in s.split(","):
                d, _, m = part.partition("*")
                runs.append((int(d), int(m)))
            return DegreeSeq(tuple(runs))
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        if not s.strip():
            raise ParseError("empty degree sequence", 0)
        return DegreeSeq.from_degrees(int(p) for p in s.split(","))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"bad degree sequence {text!r}: {exc}", 0) from None


def apply_swap(m: int, n: int) -> tuple[int, int]:
    """The adjacent-swap law on a misordered pair of degrees."""
    assert m < n, "swap only applies when the left degree is smaller"
    return (n + 1, m)


def _insert_run(runs: list[list[int]], d: int, mult: int) -> None:
    """Bubble `mult` units of degree d leftward into sorted runs (in place).

    Each unit passes every strictly smaller element to its left, gaining one
    degree per element passed; identical units land adjacently, so a whole
    run moves in one shot.
    """
    i = len(runs)
    while i > 0 and runs[i - 1][0] < d:
        d += runs[i - 1][1]
        i -= 1
    if i > 0 and runs[i - 1][0] == d:
        runs[i - 1][1] += mult
    else:
        runs.insert(i, [d, mult])


def _merge(left: Runs, right: Runs) -> Runs:
    acc = [list(r) for r in left]
    for d, m in right:
        _insert_run(acc, d, m)
    return tuple((d, m) for d, m in acc)


def _raise(runs: Runs) -> Runs:
    return tuple((d + 1, m) for d, m in runs)


def _poly(e: bt.BTerm) -> Runs:
    _, args = bt.spine(e)
    # B a1 a2 a3 ... contracts to a1 (a2 a3) ...; repeat until arity <= 2
    while len(args) >= 3:
        _, inner = bt.spine(args[0])
        args = inner + [bt.App(args[1], args[2])] + args[3:]
    if not args:
        return ((0, 1),)
    if len(args) == 1:
        return _raise(_poly(args[0]))
    return _merge(_poly(args[0]), _poly(args[1]))


def canonicalize(e: bt.BTerm) -> DegreeSeq:
    """Canonical degree sequence of a B-term, by structural rewriting."""
    return DegreeSeq(_poly(e))


def equivalent_bterms(e1: bt.BTerm, e2: bt.BTerm) -> bool:
    """Beta-eta equivalence via canonical forms."""
    return _poly(e1) == _poly(e2)


def monomial_degree(e: bt.BTerm) -> int | None:
    """Degree n if e is equivalent to B^n B, else None."""
    runs = _poly(e)
    if len(runs) == 1 and runs[0][1] == 1:
        return runs[0][0]
    return None


def seq_to_bterm(seq: DegreeSeq) -> bt.BTerm:
    """A B-term whose canonical form is seq: the right-nested composition
    B (B^n1 B) (B (B^n2 B) (... (B^nk B)))."""
    degs = seq.degrees()
    out = bt.monomial(degs[-1])
    for d in reversed(degs[:-1]):
        out = bt.App(bt.App(bt.B, bt.monomial(d)), out)
    return out


# --- the tree view -------------------------------------------------------
#
# The beta-eta normal form of a B-term is  \x1...xk. x1 e1 ... em  and the
# applicative skeleton of its body is a binary tree over the variables in
# left-to-right order. nodes() reads the degree sequence back off the tree;
# tree_of() rebuilds the tree from the sequence. Both directions are total
# on valid inputs and mutually inverse.

def nodes_at(t: BinTree, start: int) -> list[int]:
    """Internal-node labels of t, right subtree first, when the leftmost leaf
    sits at variable offset `start`. A node's label is the offset of the
    leftmost leaf under it."""
    out: list[int] = []
    stack: list[tuple[BinTree | None, int]] = [(t, start)]
    while stack:
        u, j = stack.pop()
        if u is None:
            out.append(j)
        elif isinstance(u, Node):
            stack.append((None, j))
            stack.append((u.left, j))
            stack.append((u.right, j + u.left.size))
    return out


def nodes(t: BinTree) -> list[int]:
    """Degree sequence of the tree: labels from offset -1, with the head
    spine's -1 markers stripped off the tail."""
    out = nodes_at(t, -1)
    while out and out[-1] == -1:
        out.pop()
    return out


def tree_of(seq: DegreeSeq) -> BinTree:
    """The unique tree whose nodes() reading is seq.

    Builds the head argument list left to right. A unit of degree n either
    deepens the spine of argument n (when it is currently the last argument)
    or fuses arguments n and n+1.
    """
    degs = seq.degrees()
    args: list[BinTree] = [LEAF] * degs[0] + [Node(LEAF, LEAF)]
    for n in degs[1:]:
        if len(args) == n + 1:
            args[n] = Node(args[n], LEAF)
        else:
            args[n : n + 2] = [Node(args[n], args[n + 1])]
    return comb(LEAF, args)


def seq_of_tree(t: BinTree) -> DegreeSeq:
    return DegreeSeq.from_degrees(nodes(t))


# --- independent route through the lambda oracle -------------------------

def canonical_via_lambda(e: bt.BTerm, max_steps: int | None = None) -> DegreeSeq:
    """Canonical degree sequence computed the slow way: translate to lambda
    calculus, normalize, read the tree, read the sequence. Shares no code
    with canonicalize(), so agreement between the two is meaningful."""
    from . import lambda_oracle as lo

    budget = lo.DEFAULT_BUDGET if max_steps is None else max_steps
    nf = lo.normalize(lo.bterm_to_lambda(e), budget)
    return DegreeSeq.from_degrees(nodes(lo.lambda_to_tree(nf)))
