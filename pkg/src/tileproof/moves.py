"""Interchange moves on flattened terms, and replayable proof scripts.

A move applies the interchange identity at one position: two adjacent rows of
a vertical stack, each split into a left and a right part, merge into one row
made of two columns (``kind="row"``); a column move is the mirror image.
Every move is invertible, and a proof script is an ordered list of moves
replayed from a start term, optionally with named checkpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .terms import H, Leaf, Term, V, from_grid, grid_labels, hcat, vcat

__all__ = [
    "ROW",
    "COL",
    "Move",
    "MoveError",
    "BadPath",
    "BadOrientation",
    "BadPair",
    "BadSplit",
    "ReplayError",
    "ProofScript",
    "enumerate_moves",
    "apply_move",
    "invert_move",
    "replay",
    "central_swap_script",
    "CENTRAL_SWAP_CHECKPOINT",
]

ROW = "row"
COL = "col"


class MoveError(ValueError):
    """A move does not apply to the given term."""


class BadPath(MoveError):
    """The path (or pair index) does not address an adjacent child pair."""


class BadOrientation(MoveError):
    """The ambient node has the wrong direction for the move kind."""


class BadPair(MoveError):
    """The addressed children are not both runs of the opposite direction."""


class BadSplit(MoveError):
    """A split position is outside ``1 .. arity-1`` of its child."""


@dataclass(frozen=True)
class Move:
    """One located interchange application.

    ``path`` addresses the ambient node (child indices from the root, 0-based
    in memory); ``index`` is the first of the two adjacent children involved;
    ``split_first``/``split_second`` count how many grandchildren of each
    child go to the left (for ``row``) or top (for ``col``) part.
    """

    kind: str
    path: tuple[int, ...]
    index: int
    split_first: int
    split_second: int

    def __post_init__(self):
        if self.kind not in (ROW, COL):
            raise MoveError(f"unknown move kind {self.kind!r}")


def _node_at(t: Term, path: Sequence[int]) -> Term:
    node = t
    for i in path:
        if isinstance(node, Leaf) or not 0 <= i < len(node.children):
            raise BadPath(f"path {tuple(path)} does not address a node")
        node = node.children[i]
    return node


def _replace_at(t: Term, path: Sequence[int], new: Term) -> Term:
    """Substitute at ``path`` and re-flatten every ancestor on the way up."""
    if not path:
        return new
    i, rest = path[0], path[1:]
    kids = list(t.children)
    kids[i] = _replace_at(kids[i], rest, new)
    return hcat(kids) if isinstance(t, H) else vcat(kids)


def _checked_pieces(t: Term, m: Move):
    """Validate ``m`` against ``t`` and return the ambient node and the four
    interchange operands (first-left, first-right, second-left, second-right,
    reading 'left' as 'top' for column moves)."""
    node = _node_at(t, m.path)
    want_ambient, want_child = (V, H) if m.kind == ROW else (H, V)
    if not isinstance(node, want_ambient):
        raise BadOrientation(
            f"{m.kind} move needs a {'vertical' if m.kind == ROW else 'horizontal'} "
            f"ambient node at path {m.path}"
        )
    if not 0 <= m.index < len(node.children) - 1:
        raise BadPath(f"no adjacent pair at index {m.index} under path {m.path}")
    first, second = node.children[m.index], node.children[m.index + 1]
    if not isinstance(first, want_child) or not isinstance(second, want_child):
        raise BadPair(
            f"children {m.index} and {m.index + 1} must both be "
            f"{'horizontal' if m.kind == ROW else 'vertical'} runs"
        )
    if not 1 <= m.split_first < len(first.children):
        raise BadSplit(f"split_first={m.split_first} out of range for arity {len(first.children)}")
    if not 1 <= m.split_second < len(second.children):
        raise BadSplit(f"split_second={m.split_second} out of range for arity {len(second.children)}")
    join = hcat if m.kind == ROW else vcat
    x = join(first.children[: m.split_first])
    y = join(first.children[m.split_first :])
    z = join(second.children[: m.split_second])
    w = join(second.children[m.split_second :])
    return node, x, y, z, w


def apply_move(t: Term, m: Move) -> Term:
    """Apply one interchange move.

    For a row move the pair ``V(..., xy, zw, ...)`` with ``xy`` split into
    ``x|y`` and ``zw`` into ``z|w`` becomes the single child
    ``(x/z) | (y/w)``; a column move is the mirror image.  The result is
    re-flattened, so the leaf multiset is preserved and the output is again
    in normal form.
    """
    node, x, y, z, w = _checked_pieces(t, m)
    if m.kind == ROW:
        merged = hcat([vcat([x, z]), vcat([y, w])])
    else:
        merged = vcat([hcat([x, z]), hcat([y, w])])
    kids = list(node.children)
    kids[m.index : m.index + 2] = [merged]
    rebuilt = vcat(kids) if m.kind == ROW else hcat(kids)
    return _replace_at(t, m.path, rebuilt)


def invert_move(t: Term, m: Move) -> Move:
    """The move that undoes ``m`` on ``apply_move(t, m)``.

    The inverse has the mirrored kind.  Its coordinates account for the
    re-flattening done by ``apply_move``: if the ambient pair was the node's
    only content the merged child is spliced into the grandparent.
    """
    node, x, y, z, w = _checked_pieces(t, m)
    part_type = V if m.kind == ROW else H
    inv_split_first = len(x.children) if isinstance(x, part_type) else 1
    inv_split_second = len(y.children) if isinstance(y, part_type) else 1
    inv_kind = COL if m.kind == ROW else ROW
    if len(node.children) > 2:
        inv_path = m.path + (m.index,)
        inv_index = 0
    elif m.path:
        inv_path = m.path[:-1]
        inv_index = m.path[-1]
    else:
        inv_path = ()
        inv_index = 0
    return Move(inv_kind, inv_path, inv_index, inv_split_first, inv_split_second)


def enumerate_moves(t: Term) -> list[Move]:
    """Every move applicable to ``t``, without duplicates, ordered by
    (path, index, split_first, split_second)."""
    out: list[Move] = []
    _enumerate_into(t, (), out)
    return out


def _enumerate_into(t: Term, path: tuple[int, ...], out: list[Move]):
    if isinstance(t, Leaf):
        return
    kind, child_type = (ROW, H) if isinstance(t, V) else (COL, V)
    for i in range(len(t.children) - 1):
        first, second = t.children[i], t.children[i + 1]
        if isinstance(first, child_type) and isinstance(second, child_type):
            for s1 in range(1, len(first.children)):
                for s2 in range(1, len(second.children)):
                    out.append(Move(kind, path, i, s1, s2))
    for i, c in enumerate(t.children):
        _enumerate_into(c, path + (i,), out)


# ---------------------------------------------------------------------------
# Proof scripts
# ---------------------------------------------------------------------------


class ReplayError(MoveError):
    """Replay hit an inapplicable move; ``index`` says which one."""

    def __init__(self, index: int, cause: MoveError):
        super().__init__(f"move {index} failed: {cause}")
        self.index = index
        self.cause = cause


@dataclass(frozen=True)
class ProofScript:
    """An equality certificate: a start term plus an ordered move list.

    ``checkpoints`` maps a name to a move-count prefix; the named term is the
    one reached after replaying that many moves.
    """

    start: Term
    moves: tuple[Move, ...] = ()
    checkpoints: Mapping[str, int] = field(default_factory=dict)

    def final(self) -> Term:
        return replay(self)[-1]

    def at_checkpoint(self, name: str) -> Term:
        return replay(self)[self.checkpoints[name]]


def replay(script: ProofScript) -> list[Term]:
    """Replay a script; returns the whole trajectory ``[start, ..., final]``.

    Fails atomically on the first invalid move, raising ``ReplayError`` with
    that move's position.
    """
    trajectory = [script.start]
    for k, m in enumerate(script.moves):
        try:
            trajectory.append(apply_move(trajectory[-1], m))
        except MoveError as exc:
            raise ReplayError(k, exc) from exc
    for name, prefix in script.checkpoints.items():
        if not 0 <= prefix <= len(script.moves):
            raise ReplayError(len(script.moves), MoveError(f"checkpoint {name!r} out of range"))
    return trajectory


# ---------------------------------------------------------------------------
# The canned central-swap certificate
#
# Forty frozen moves realize a twelve-sliding storyline on a 4x4 grid; no
# single move transposes two cells, but the composite does.  The table
# factors into four ten-move blocks, each sliding one middle element from
# the second row into the third (or back): the element leaves its row,
# travels through a column built with the outer rows, and lands next to its
# new neighbors.  Move coordinates are against the flattened term current at
# that point, so the table is meaningful only as a whole;
# ``tests/test_central_swap.py`` re-verifies every claim about it by replay.
# ---------------------------------------------------------------------------

CENTRAL_SWAP_CHECKPOINT = "after-sliding-8"

_CENTRAL_SWAP_MOVES: tuple[tuple[str, tuple[int, ...], int, int, int], ...] = (
    # block 1: middle element d of row 3 climbs into row 2 -> (a,b,d | c)
    ("row", (), 2, 2, 1),
    ("row", (), 1, 3, 1),
    ("col", (1,), 0, 1, 2),
    ("row", (), 0, 1, 3),
    ("col", (0,), 0, 1, 2),
    ("row", (), 0, 1, 4),
    ("row", (), 0, 1, 1),
    ("col", (), 0, 3, 3),
    ("col", (0,), 0, 2, 2),
    ("col", (0,), 0, 1, 1),
    # block 2: a descends past c -> middle block (b,d; a,c), the half-way grid
    ("row", (), 0, 1, 2),
    ("row", (), 0, 1, 1),
    ("row", (), 0, 1, 1),
    ("col", (), 0, 2, 3),
    ("col", (0,), 0, 1, 2),
    ("row", (), 0, 1, 1),
    ("col", (0,), 0, 1, 1),
    ("row", (), 1, 1, 1),
    ("col", (1,), 0, 1, 1),
    ("col", (2,), 0, 1, 1),
    # block 3: d descends to the end of row 3 -> (b | a,c,d)
    ("row", (), 0, 1, 3),
    ("row", (), 0, 1, 3),
    ("row", (), 0, 1, 1),
    ("col", (), 0, 2, 3),
    ("col", (0,), 0, 1, 2),
    ("row", (), 0, 1, 2),
    ("col", (0,), 0, 1, 1),
    ("row", (), 1, 2, 1),
    ("col", (1,), 0, 1, 1),
    ("col", (2,), 0, 1, 1),
    # block 4: a climbs back into row 2 -> middle block (b,a; c,d)
    ("row", (), 2, 1, 1),
    ("row", (), 1, 2, 1),
    ("col", (1,), 0, 1, 2),
    ("row", (), 0, 1, 2),
    ("col", (0,), 0, 1, 2),
    ("row", (), 0, 1, 3),
    ("row", (), 0, 1, 1),
    ("col", (), 0, 3, 3),
    ("col", (0,), 0, 2, 2),
    ("col", (0,), 0, 1, 1),
)

# Waypoints of the twelve-sliding storyline the forty moves realize.  The
# grids after slidings 8 and 12 are exact; 4 and 10 are intermediate row
# readings.
_CENTRAL_SWAP_CHECKPOINTS: dict[str, int] = {
    "after-sliding-4": 10,
    "after-sliding-8": 20,
    "after-sliding-10": 30,
    "after-sliding-12": 40,
}


def central_swap_script(border: Sequence[str], a: str, b: str, c: str, d: str) -> ProofScript:
    """The canned certificate transposing the two top-middle cells of a 4x4
    grid.

    ``border`` gives the twelve outer labels in reading order; the grid starts
    with middle block ``(a, b; c, d)`` and the script ends at the same grid
    with middle ``(b, a; c, d)``.  The checkpoint ``"after-sliding-8"`` marks
    the grid with middle ``(b, d; a, c)`` — the cyclic permutation reached
    halfway.  Labels may repeat; the moves are positional.
    """
    start = from_grid(grid_labels(border, (a, b, c, d)))
    moves = tuple(Move(k, p, i, s1, s2) for (k, p, i, s1, s2) in _CENTRAL_SWAP_MOVES)
    return ProofScript(start=start, moves=moves, checkpoints=dict(_CENTRAL_SWAP_CHECKPOINTS))
