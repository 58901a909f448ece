"""Unlabeled full binary trees.

These are the application shapes of normal forms of B-terms: a normal form
lambda x1...xn. M determines the tree of M with one leaf per variable.
Equality is structural and implemented iteratively so that very deep trees
(long orbits produce left spines thousands of nodes deep) are safe.
"""

from __future__ import annotations

from functools import reduce


class BinTree:
    __slots__ = ()


class _Leaf(BinTree):
    __slots__ = ()
    size = 1

    def __repr__(self) -> str:
        return "x"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Leaf)

    def __hash__(self) -> int:
        return 0x1EAF


LEAF = _Leaf()


class Node(BinTree):
    __slots__ = ("left", "right", "size")

    def __init__(self, left: BinTree, right: BinTree):
        self.left = left
        self.right = right
        self.size = left.size + right.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinTree):
            return NotImplemented
        return tree_equal(self, other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return format_tree(self)


def tree_equal(a: BinTree, b: BinTree) -> bool:
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        x_node = isinstance(x, Node)
        if x_node != isinstance(y, Node):
            return False
        if not x_node:
            continue
        if x.size != y.size:
            return False
        stack.append((x.left, y.left))
        stack.append((x.right, y.right))
    return True


def comb(head: BinTree, args: list[BinTree]) -> BinTree:
    """Left comb: comb(h, [a, b, c]) = <<<h,a>,b>,c>."""
    return reduce(Node, args, head)


def split_spine(t: BinTree) -> tuple[BinTree, list[BinTree]]:
    """Inverse of comb along the left edge; head is the deepest-left subtree."""
    args: list[BinTree] = []
    while isinstance(t, Node):
        args.append(t.right)
        t = t.left
    args.reverse()
    return t, args


def format_tree(t: BinTree) -> str:
    out: list[str] = []
    stack: list[BinTree | str] = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, str):
            out.append(u)
        elif isinstance(u, Node):
            stack += [">", u.right, ",", u.left, "<"]
        else:
            out.append("x")
    return "".join(out)
