"""File codecs and tiling renderers.

Proof scripts and models travel as JSON documents with a fixed key order, so
encoding is byte-deterministic and ``decode(encode(x)) == x``.  On the wire,
move paths and pair indices are 1-based (the documents are meant for human
eyes); in-memory values are 0-based.

The renderers draw the guillotine tiling of a term: ``render_ascii`` on a
character grid with ``+-|`` walls, ``render_svg`` as a standalone SVG 1.1
document.  Both are pure functions of the term and options.  Labels that
start with an underscore stand for nameless elements; the ``named-only``
visibility leaves their cells blank.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any
from xml.sax.saxutils import escape

from .models import CayleyPair, ClaimsReport
from .moves import Move, ProofScript
from .terms import Term, format_term, layout, leaf_paths, parse_term, ParseError

__all__ = [
    "CodecError",
    "RenderError",
    "CanvasTooSmall",
    "RenderOptions",
    "encode_script",
    "decode_script",
    "encode_model",
    "decode_model",
    "claims_report_json",
    "render_ascii",
    "render_svg",
]


class CodecError(ValueError):
    """Malformed document; ``location`` points at the offending part."""

    def __init__(self, message: str, location: str = ""):
        where = f" at {location}" if location else ""
        super().__init__(f"{message}{where}")
        self.location = location


# ---------------------------------------------------------------------------
# Proof-script codec
# ---------------------------------------------------------------------------


def encode_script(script: ProofScript) -> bytes:
    doc = {
        "start": format_term(script.start),
        "moves": [
            {
                "kind": m.kind,
                "path": [p + 1 for p in m.path],
                "index": m.index + 1,
                "split_first": m.split_first,
                "split_second": m.split_second,
            }
            for m in script.moves
        ],
        "checkpoints": {k: script.checkpoints[k] for k in sorted(script.checkpoints)},
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _load_json(data: bytes) -> Any:
    try:
        return json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise CodecError("document is not UTF-8", f"byte {exc.start}") from exc
    except json.JSONDecodeError as exc:
        raise CodecError(f"malformed JSON: {exc.msg}", f"offset {exc.pos}") from exc


def _expect(cond: bool, message: str, location: str):
    if not cond:
        raise CodecError(message, location)


def _decode_index(value: Any, location: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), "expected an integer", location)
    _expect(value >= 1, "indices are 1-based and must be >= 1", location)
    return value - 1


def decode_script(data: bytes) -> ProofScript:
    doc = _load_json(data)
    _expect(isinstance(doc, dict), "expected a JSON object", "document root")
    _expect("start" in doc, "missing key 'start'", "document root")
    _expect("moves" in doc, "missing key 'moves'", "document root")
    _expect(isinstance(doc["start"], str), "expected a term string", "start")
    try:
        start = parse_term(doc["start"])
    except ParseError as exc:
        raise CodecError(f"bad start term: {exc}", "start") from exc

    raw_moves = doc["moves"]
    _expect(isinstance(raw_moves, list), "expected a list", "moves")
    moves = []
    for k, raw in enumerate(raw_moves):
        loc = f"moves[{k}]"
        _expect(isinstance(raw, dict), "expected an object", loc)
        for key in ("kind", "path", "index", "split_first", "split_second"):
            _expect(key in raw, f"missing key {key!r}", loc)
        kind = raw["kind"]
        _expect(kind in ("row", "col"), f"unknown move kind {kind!r}", f"{loc}.kind")
        _expect(isinstance(raw["path"], list), "expected a list", f"{loc}.path")
        path = tuple(
            _decode_index(p, f"{loc}.path[{i}]") for i, p in enumerate(raw["path"])
        )
        index = _decode_index(raw["index"], f"{loc}.index")
        splits = []
        for key in ("split_first", "split_second"):
            s = raw[key]
            _expect(isinstance(s, int) and not isinstance(s, bool), "expected an integer", f"{loc}.{key}")
            _expect(s >= 1, "splits must be >= 1", f"{loc}.{key}")
            splits.append(s)
        moves.append(Move(kind, path, index, splits[0], splits[1]))

    raw_cp = doc.get("checkpoints", {})
    _expect(isinstance(raw_cp, dict), "expected an object", "checkpoints")
    checkpoints = {}
    for name, prefix in raw_cp.items():
        loc = f"checkpoints[{name!r}]"
        _expect(isinstance(prefix, int) and not isinstance(prefix, bool), "expected an integer", loc)
        _expect(0 <= prefix <= len(moves), "checkpoint index out of range", loc)
        checkpoints[name] = prefix
    return ProofScript(start=start, moves=tuple(moves), checkpoints=checkpoints)


# ---------------------------------------------------------------------------
# Model codec
# ---------------------------------------------------------------------------


def encode_model(m: CayleyPair) -> bytes:
    doc = {
        "n": m.n,
        "h": [list(row) for row in m.table_h],
        "v": [list(row) for row in m.table_v],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _decode_table(raw: Any, n: int, name: str) -> tuple[tuple[int, ...], ...]:
    _expect(isinstance(raw, list) and len(raw) == n, f"expected {n} rows", name)
    table = []
    for x, row in enumerate(raw):
        _expect(isinstance(row, list) and len(row) == n, f"expected {n} entries", f"{name}[{x}]")
        for y, e in enumerate(row):
            _expect(isinstance(e, int) and not isinstance(e, bool), "expected an integer", f"{name}[{x}][{y}]")
            _expect(0 <= e < n, f"entry {e} out of range 0..{n - 1}", f"{name}[{x}][{y}]")
        table.append(tuple(row))
    return tuple(table)


def decode_model(data: bytes) -> CayleyPair:
    doc = _load_json(data)
    _expect(isinstance(doc, dict), "expected a JSON object", "document root")
    for key in ("n", "h", "v"):
        _expect(key in doc, f"missing key {key!r}", "document root")
    n = doc["n"]
    _expect(isinstance(n, int) and not isinstance(n, bool), "expected an integer", "n")
    _expect(n >= 1, "carrier size must be at least 1", "n")
    return CayleyPair(n, _decode_table(doc["h"], n, "h"), _decode_table(doc["v"], n, "v"))


def claims_report_json(report: ClaimsReport) -> bytes:
    doc = {
        "max_order": report.max_order,
        "all_passed": report.all_passed,
        "claims": {
            name: {
                "passed": status.passed,
                "checked": status.checked,
                "counterexample": None
                if status.counterexample is None
                else json.loads(encode_model(status.counterexample)),
            }
            for name, status in sorted(report.claims.items())
        },
        "counts": list(report.counts),
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Renderers
# ---------------------------------------------------------------------------


class RenderError(ValueError):
    pass


class CanvasTooSmall(RenderError):
    """Some leaf cell would be smaller than 3x3 characters."""


@dataclass(frozen=True)
class RenderOptions:
    width: int = 80
    height: int = 40
    label_visibility: str = "all"  # or "named-only"

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise RenderError("width and height must be at least 1")
        if self.label_visibility not in ("all", "named-only"):
            raise RenderError(f"unknown label visibility {self.label_visibility!r}")


def _round_half_up(fr: Fraction) -> int:
    return int(fr + Fraction(1, 2))


def _visible(label: str, opts: RenderOptions) -> bool:
    return opts.label_visibility == "all" or not label.startswith("_")


def render_ascii(t: Term, opts: RenderOptions = RenderOptions()) -> str:
    """Character rendering of the tiling; walls snap to the grid half-up.

    Raises ``CanvasTooSmall`` unless every leaf cell spans at least 3x3
    characters (borders included).
    """
    rects = layout(t)
    labels = dict(leaf_paths(t))
    W, Hh = opts.width, opts.height
    if W < 3 or Hh < 3:
        raise CanvasTooSmall("canvas must be at least 3x3 characters")

    def col(x: Fraction) -> int:
        return _round_half_up(x * (W - 1))

    def row(y: Fraction) -> int:
        return _round_half_up((1 - y) * (Hh - 1))

    grid = [[" "] * W for _ in range(Hh)]

    def put(r: int, c: int, ch: str):
        old = grid[r][c]
        grid[r][c] = ch if old in (" ", ch) else "+"

    boxes = {}
    for path, rect in rects.items():
        c0, c1 = col(rect.x0), col(rect.x1)
        r0, r1 = row(rect.y1), row(rect.y0)
        if c1 - c0 < 2 or r1 - r0 < 2:
            raise CanvasTooSmall(
                f"cell for leaf at {path} is {r1 - r0 + 1}x{c1 - c0 + 1}; needs 3x3"
            )
        boxes[path] = (r0, c0, r1, c1)
        for c in range(c0, c1 + 1):
            put(r0, c, "-")
            put(r1, c, "-")
        for r in range(r0, r1 + 1):
            put(r, c0, "|")
            put(r, c1, "|")
        for r, c in ((r0, c0), (r0, c1), (r1, c0), (r1, c1)):
            grid[r][c] = "+"

    for path, (r0, c0, r1, c1) in boxes.items():
        label = labels[path]
        if not _visible(label, opts):
            continue
        iw = c1 - c0 - 1
        text = label if len(label) <= iw else (label[: iw - 1] + "~" if iw >= 2 else "~")
        r = (r0 + r1) // 2
        c = c0 + 1 + (iw - len(text)) // 2
        for k, ch in enumerate(text):
            grid[r][c + k] = ch

    return "\n".join("".join(line) for line in grid) + "\n"


def _svg_num(fr: Fraction) -> str:
    """Exact decimal with two places, half-up, trailing zeros trimmed."""
    scaled = _round_half_up(fr * 100)
    whole, part = divmod(scaled, 100)
    if part == 0:
        return str(whole)
    return f"{whole}.{part:02d}".rstrip("0")


def render_svg(t: Term, opts: RenderOptions = RenderOptions(width=640, height=640)) -> bytes:
    """Standalone SVG document: one bordered rectangle per leaf plus centered
    labels.  Output bytes are identical across runs for fixed input."""
    rects = layout(t)
    labels = dict(leaf_paths(t))
    W, Hh = Fraction(opts.width), Fraction(opts.height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{opts.width}" height="{opts.height}" '
        f'viewBox="0 0 {opts.width} {opts.height}">',
    ]
    for path, rect in rects.items():
        x = rect.x0 * W
        y = (1 - rect.y1) * Hh
        w = (rect.x1 - rect.x0) * W
        h = (rect.y1 - rect.y0) * Hh
        lines.append(
            f'<rect x="{_svg_num(x)}" y="{_svg_num(y)}" '
            f'width="{_svg_num(w)}" height="{_svg_num(h)}" '
            f'fill="white" stroke="black" stroke-width="1"/>'
        )
        label = labels[path]
        if _visible(label, opts):
            cx = x + w / 2
            cy = y + h / 2
            lines.append(
                f'<text x="{_svg_num(cx)}" y="{_svg_num(cy)}" '
                f'font-family="monospace" font-size="14" '
                f'text-anchor="middle" dominant-baseline="central">'
                f"{escape(label)}</text>"
            )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
