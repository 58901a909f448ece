"""Surface syntax for B-terms.

A B-term is a binary application tree whose only leaf is the combinator B.
Text form:

    term := atom+            (application, left associative)
    atom := 'B' | '(' term ')' | 'B^' nat 'B'

``B^n B`` is sugar for the monomial: B applied n times, ending in B, e.g.
``B^2 B`` reads as ``B (B B)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .errors import ParseError


@dataclass(frozen=True, slots=True)
class _BLeaf:
    def __repr__(self) -> str:
        return "B"


B = _BLeaf()


@dataclass(frozen=True, slots=True)
class App:
    fn: "BTerm"
    arg: "BTerm"

    def __repr__(self) -> str:
        return f"App({self.fn!r}, {self.arg!r})"


BTerm = _BLeaf | App


def is_leaf(e: BTerm) -> bool:
    return isinstance(e, _BLeaf)


def size(e: BTerm) -> int:
    """Number of B leaves in e."""
    n = 0
    stack = [e]
    while stack:
        t = stack.pop()
        if isinstance(t, App):
            stack.append(t.fn)
            stack.append(t.arg)
        else:
            n += 1
    return n


def spine(e: BTerm) -> tuple[BTerm, list[BTerm]]:
    """Decompose e = head a1 ... an along the left edge. head is always B."""
    args: list[BTerm] = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fn
    args.reverse()
    return e, args


def from_spine(head: BTerm, args: list[BTerm]) -> BTerm:
    return reduce(App, args, head)


def flat(e: BTerm, k: int) -> BTerm:
    """k-fold flat self application: X^(1) = X, X^(j+1) = X^(j) X."""
    if k < 1:
        raise ValueError(f"flat power must be >= 1, got {k}")
    out = e
    for _ in range(k - 1):
        out = App(out, e)
    return out


def monomial(n: int) -> BTerm:
    """B applied n times ending in B: monomial(0) = B, monomial(2) = B (B B)."""
    if n < 0:
        raise ValueError(f"monomial degree must be >= 0, got {n}")
    out: BTerm = B
    for _ in range(n):
        out = App(B, out)
    return out


def monomial_degree(e: BTerm) -> int | None:
    """Degree n if e is syntactically monomial(n) with n >= 1, else None."""
    n = 0
    while isinstance(e, App) and is_leaf(e.fn):
        n += 1
        e = e.arg
    return n if n >= 1 and is_leaf(e) else None


_TOKEN = re.compile(r"\s*(B\^(\d+)|B(?![\w^])|\(|\))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r}", len(text) - len(rest))
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def parse(text: str) -> BTerm:
    """Parse term text. Raises ParseError with a position on bad input."""
    tokens = _tokenize(text)
    idx = 0

    def peek() -> tuple[str, int] | None:
        return tokens[idx] if idx < len(tokens) else None

    def parse_atom() -> BTerm:
        nonlocal idx
        tok = peek()
        assert tok is not None
        text_, pos = tok
        if text_ == "B":
            idx += 1
            return B
        if text_.startswith("B^"):
            idx += 1
            nxt = peek()
            if nxt is None or nxt[0] != "B":
                raise ParseError("expected 'B' after 'B^n'", pos)
            idx += 1
            return monomial(int(text_[2:]))
        if text_ == "(":
            idx += 1
            inner = parse_term()
            nxt = peek()
            if nxt is None or nxt[0] != ")":
                raise ParseError("unbalanced '('", pos)
            idx += 1
            return inner
        raise ParseError(f"unexpected {text_!r}", pos)

    def parse_term() -> BTerm:
        nonlocal idx
        tok = peek()
        if tok is None or tok[0] == ")":
            raise ParseError("expected a term", tok[1] if tok else len(text))
        out = parse_atom()
        while True:
            tok = peek()
            if tok is None or tok[0] == ")":
                return out
            out = App(out, parse_atom())

    if not tokens:
        raise ParseError("empty input", 0)
    result = parse_term()
    if idx != len(tokens):
        raise ParseError(f"unexpected {tokens[idx][0]!r}", tokens[idx][1])
    return result


def format_bterm(e: BTerm, sugar: bool = False) -> str:
    """Render with minimal parentheses; parse(format_bterm(e)) == e.

    With sugar=True, monomial subterms print as ``B^n B`` (they re-parse as a
    single atom, so they never need parentheses of their own).
    """

    def fmt(t: BTerm, arg_position: bool) -> str:
        if is_leaf(t):
            return "B"
        if sugar:
            n = monomial_degree(t)
            if n is not None:
                return f"B^{n} B"
        body = f"{fmt(t.fn, False)} {fmt(t.arg, True)}"
        return f"({body})" if arg_position else body

    return fmt(e, False)
