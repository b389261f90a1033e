"""Terms of a free double semigroup, kept in flattened (associativity-normal) form.

A term is a leaf, a horizontal run ``H(...)`` or a vertical stack ``V(...)``.
Runs never nest in their own direction and always have at least two children,
so two terms are structurally equal exactly when they are equal modulo
associativity of the two composition laws.

Geometrically a term is a guillotine tiling of the unit square: an H node
splits its rectangle left-to-right, a V node top-to-bottom.  ``layout`` makes
that reading concrete (with exact rational coordinates) and ``border_word``
reads off the labels around the boundary.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Term",
    "Leaf",
    "H",
    "V",
    "TermError",
    "ParseError",
    "hcat",
    "vcat",
    "parse_term",
    "format_term",
    "from_grid",
    "grid_labels",
    "leaf_multiset",
    "leaf_count",
    "leaf_paths",
    "subterm_at",
    "swap_leaves",
    "Rect",
    "layout",
    "border_word",
    "same_cyclic_word",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class TermError(ValueError):
    """Malformed term construction (bad label, ragged grid, empty run...)."""


class ParseError(TermError):
    """Concrete-syntax error; ``offset`` is the byte offset into the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _check_label(name: str) -> str:
    if not isinstance(name, str) or _IDENT.fullmatch(name) is None:
        raise TermError(f"invalid label {name!r}: expected an identifier")
    return name


@dataclass(frozen=True)
class Leaf:
    label: str

    def __post_init__(self):
        _check_label(self.label)


@dataclass(frozen=True)
class H:
    """Horizontal run, children left to right.  Use ``hcat`` to build one."""

    children: tuple["Term", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise TermError("an H node needs at least two children")
        if any(isinstance(c, H) for c in self.children):
            raise TermError("an H node may not contain an H child (flatten first)")


@dataclass(frozen=True)
class V:
    """Vertical stack, children top to bottom.  Use ``vcat`` to build one."""

    children: tuple["Term", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise TermError("a V node needs at least two children")
        if any(isinstance(c, V) for c in self.children):
            raise TermError("a V node may not contain a V child (flatten first)")


Term = Union[Leaf, H, V]


def hcat(parts: Iterable[Term]) -> Term:
    """Horizontal composition: flattens nested runs, unwraps a singleton."""
    flat: list[Term] = []
    for p in parts:
        if isinstance(p, H):
            flat.extend(p.children)
        else:
            flat.append(p)
    if not flat:
        raise TermError("empty horizontal composition")
    if len(flat) == 1:
        return flat[0]
    return H(tuple(flat))


def vcat(parts: Iterable[Term]) -> Term:
    """Vertical composition (top operand first); flattens and unwraps."""
    flat: list[Term] = []
    for p in parts:
        if isinstance(p, V):
            flat.extend(p.children)
        else:
            flat.append(p)
    if not flat:
        raise TermError("empty vertical composition")
    if len(flat) == 1:
        return flat[0]
    return V(tuple(flat))


# ---------------------------------------------------------------------------
# Concrete syntax
#
#   term  := vterm
#   vterm := hterm ('/' hterm)*          -- '/' reads top operand first
#   hterm := atom ('|' atom)*            -- '|' binds tighter than '/'
#   atom  := IDENT | '(' term ')' | grid
#   grid  := '[' row (';' row)* ']'
#   row   := IDENT+                      -- whitespace separated
# ---------------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def byte_offset(self, pos: int | None = None) -> int:
        p = self.pos if pos is None else pos
        return len(self.text[:p].encode("utf-8"))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.byte_offset())
        self.pos += 1

    def ident(self) -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if m is None:
            raise ParseError("expected an identifier", self.byte_offset())
        self.pos = m.end()
        return m.group()


def parse_term(text: str) -> Term:
    """Parse concrete syntax into a flattened term.

    Raises ``ParseError`` (with a byte offset) on bad input, including empty
    input.
    """
    sc = _Scanner(text)
    if sc.peek() == "":
        raise ParseError("empty input", sc.byte_offset())
    t = _parse_vterm(sc)
    if sc.peek() != "":
        raise ParseError("unexpected trailing input", sc.byte_offset())
    return t


def _parse_vterm(sc: _Scanner) -> Term:
    parts = [_parse_hterm(sc)]
    while sc.peek() == "/":
        sc.take("/")
        parts.append(_parse_hterm(sc))
    return vcat(parts)


def _parse_hterm(sc: _Scanner) -> Term:
    parts = [_parse_atom(sc)]
    while sc.peek() == "|":
        sc.take("|")
        parts.append(_parse_atom(sc))
    return hcat(parts)


def _parse_atom(sc: _Scanner) -> Term:
    ch = sc.peek()
    if ch == "(":
        sc.take("(")
        t = _parse_vterm(sc)
        sc.take(")")
        return t
    if ch == "[":
        sc.take("[")
        rows = [_parse_grid_row(sc)]
        while sc.peek() == ";":
            sc.take(";")
            rows.append(_parse_grid_row(sc))
        start = sc.byte_offset()
        sc.take("]")
        try:
            return from_grid(rows)
        except TermError as exc:
            raise ParseError(str(exc), start) from exc
    if not ch or not (ch.isalpha() or ch == "_"):
        raise ParseError("expected an identifier, '(' or '['", sc.byte_offset())
    return Leaf(sc.ident())


def _parse_grid_row(sc: _Scanner) -> list[str]:
    row = [sc.ident()]
    while True:
        ch = sc.peek()
        if ch and (ch.isalpha() or ch == "_"):
            row.append(sc.ident())
        else:
            return row


def format_term(t: Term) -> str:
    """Canonical text for a term; ``parse_term(format_term(t)) == t``.

    Children of the opposite direction are parenthesized, flattened runs are
    printed without grouping.
    """
    if isinstance(t, Leaf):
        return t.label
    if isinstance(t, H):
        return "|".join(
            c.label if isinstance(c, Leaf) else f"({format_term(c)})" for c in t.children
        )
    return "/".join(
        c.label if isinstance(c, Leaf) else f"({format_term(c)})" for c in t.children
    )


# ---------------------------------------------------------------------------
# Grids and leaf bookkeeping
# ---------------------------------------------------------------------------


def from_grid(rows: Sequence[Sequence[str]]) -> Term:
    """Rectangular grid of labels (rows listed top to bottom) as a term.

    A 1x1 grid is a leaf, a single row an H run, a single column a V stack.
    """
    if not rows or any(not r for r in rows):
        raise TermError("grid must have at least one row and one cell per row")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise TermError("ragged grid: all rows must have the same length")
    return vcat(hcat(Leaf(_check_label(name)) for name in row) for row in rows)


def grid_labels(border: Sequence[str], middle: Sequence[str]) -> list[list[str]]:
    """Row-major 4x4 label grid from 12 border labels and 4 middle labels.

    The border fills the outer ring in reading order (top row, the two middle
    row ends, bottom row); the middle four go to the central 2x2 block.
    """
    if len(border) != 12:
        raise TermError("expected exactly 12 border labels")
    if len(middle) != 4:
        raise TermError("expected exactly 4 middle labels")
    e = list(border)
    a, b, c, d = middle
    return [
        [e[0], e[1], e[2], e[3]],
        [e[4], a, b, e[5]],
        [e[6], c, d, e[7]],
        [e[8], e[9], e[10], e[11]],
    ]


def leaf_multiset(t: Term) -> Counter:
    """Multiset of leaf labels (a ``collections.Counter``)."""
    acc: Counter = Counter()
    _collect_leaves(t, acc)
    return acc


def _collect_leaves(t: Term, acc: Counter):
    if isinstance(t, Leaf):
        acc[t.label] += 1
    else:
        for c in t.children:
            _collect_leaves(c, acc)


def leaf_count(t: Term) -> int:
    if isinstance(t, Leaf):
        return 1
    return sum(leaf_count(c) for c in t.children)


def leaf_paths(t: Term) -> Iterator[tuple[tuple[int, ...], str]]:
    """Yield ``(path, label)`` for every leaf, in left-to-right tree order."""
    if isinstance(t, Leaf):
        yield (), t.label
        return
    for i, c in enumerate(t.children):
        for path, label in leaf_paths(c):
            yield (i,) + path, label


def subterm_at(t: Term, path: Sequence[int]) -> Term:
    """The subterm addressed by a path of child indices from the root."""
    node = t
    for i in path:
        if isinstance(node, Leaf) or not 0 <= i < len(node.children):
            raise TermError(f"path {tuple(path)} does not address a subterm")
        node = node.children[i]
    return node


def swap_leaves(t: Term, path_1: Sequence[int], path_2: Sequence[int]) -> Term:
    """The same term with the labels at two leaf positions exchanged."""
    p1, p2 = tuple(path_1), tuple(path_2)
    l1, l2 = subterm_at(t, p1), subterm_at(t, p2)
    if not isinstance(l1, Leaf) or not isinstance(l2, Leaf):
        raise TermError("both paths must address leaves")

    def rebuild(node: Term, path: tuple[int, ...]) -> Term:
        if path == p1:
            return Leaf(l2.label)
        if path == p2:
            return Leaf(l1.label)
        if isinstance(node, Leaf):
            return node
        kids = tuple(rebuild(c, path + (i,)) for i, c in enumerate(node.children))
        return H(kids) if isinstance(node, H) else V(kids)

    return rebuild(t, ())


# ---------------------------------------------------------------------------
# Geometric realization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle inside the unit square, y growing upward."""

    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self):
        if not (0 <= self.x0 < self.x1 <= 1 and 0 <= self.y0 < self.y1 <= 1):
            raise TermError("rectangle must be nondegenerate and inside the unit square")

    @property
    def area(self) -> Fraction:
        return (self.x1 - self.x0) * (self.y1 - self.y0)


def layout(t: Term) -> dict[tuple[int, ...], Rect]:
    """Tile the unit square; maps each leaf path to its rectangle.

    An H node divides width among its children proportionally to their leaf
    counts, left to right; a V node divides height the same way, top to
    bottom.  This makes the tiling deterministic and degeneracy-free.
    """
    out: dict[tuple[int, ...], Rect] = {}
    _layout_into(t, (), Fraction(0), Fraction(0), Fraction(1), Fraction(1), out)
    return out


def _layout_into(t, path, x0, y0, x1, y1, out):
    if isinstance(t, Leaf):
        out[path] = Rect(x0, y0, x1, y1)
        return
    weights = [leaf_count(c) for c in t.children]
    total = sum(weights)
    if isinstance(t, H):
        span = x1 - x0
        left = x0
        for i, (c, w) in enumerate(zip(t.children, weights)):
            right = x1 if i == len(weights) - 1 else left + span * Fraction(w, total)
            _layout_into(c, path + (i,), left, y0, right, y1, out)
            left = right
    else:
        span = y1 - y0
        top = y1
        for i, (c, w) in enumerate(zip(t.children, weights)):
            bottom = y0 if i == len(weights) - 1 else top - span * Fraction(w, total)
            _layout_into(c, path + (i,), x0, bottom, x1, top, out)
            top = bottom


def border_word(t: Term) -> tuple[str, ...]:
    """Labels of the leaves touching the unit-square boundary, read
    counter-clockwise starting from the leaf that contains the bottom-left
    corner.  Each border leaf appears exactly once.
    """
    rects = layout(t)
    labels = {path: label for path, label in leaf_paths(t)}

    bottom = sorted((p for p, r in rects.items() if r.y0 == 0), key=lambda p: rects[p].x0)
    right = sorted((p for p, r in rects.items() if r.x1 == 1), key=lambda p: rects[p].y0)
    top = sorted((p for p, r in rects.items() if r.y1 == 1), key=lambda p: -rects[p].x0)
    left = sorted((p for p, r in rects.items() if r.x0 == 0), key=lambda p: -rects[p].y0)

    seen: set[tuple[int, ...]] = set()
    word: list[str] = []
    for path in bottom + right + top + left:
        if path not in seen:
            seen.add(path)
            word.append(labels[path])
    return tuple(word)


def same_cyclic_word(u: Sequence[str], v: Sequence[str]) -> bool:
    """Whether two label sequences are equal as cyclic words."""
    if len(u) != len(v):
        return False
    if len(u) == 0:
        return True
    u, v = tuple(u), tuple(v)
    return any(v == u[i:] + u[:i] for i in range(len(u)))
