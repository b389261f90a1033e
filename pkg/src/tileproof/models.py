"""Finite double semigroups as pairs of Cayley tables.

A candidate model is a carrier ``0..n-1`` with two multiplication tables.
This module checks the two associativity axioms and the interchange law
exhaustively, computes the structural predicates used by the commutativity
theorems (cancellativity, bicancellable elements, unique inverses, units),
enumerates all labeled models of small order by backtracking, and verifies
the theorems themselves over every enumerated model.

Claim names used throughout:

  EH  unital models: the two units coincide, the operations coincide, and
      both are commutative
  C1  cancellative models are commutative (both operations)
  C2  one bicancellable element already forces commutativity
  L   in inverse models the two inverse operations commute
  P   inverse models are commutative, and A*B * inv(A)*inv(B) * A*B = A*B
      holds in both operations
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

__all__ = [
    "CayleyPair",
    "AxiomReport",
    "AxiomError",
    "MaxOrderError",
    "InverseStructure",
    "CommutativityReport",
    "UnitReport",
    "ClaimStatus",
    "ClaimsReport",
    "CLAIM_NAMES",
    "check_axioms",
    "is_commutative",
    "is_cancellative",
    "has_bicancellable_element",
    "inverse_structure",
    "unit_report",
    "enumerate_models",
    "verify_claims",
    "configured_max_order",
    "k_combinator",
    "xor_pair",
    "MAX_ORDER_ENV",
]

MAX_ORDER_ENV = "TILEPROOF_MAX_ORDER"
_DEFAULT_MAX_ORDER = 3
_HARD_MAX_ORDER = 4

Table = tuple[tuple[int, ...], ...]


class AxiomError(ValueError):
    """An operation that requires a valid double semigroup got a non-model."""


class MaxOrderError(ValueError):
    """Requested order is outside the configured enumeration range."""


@dataclass(frozen=True)
class CayleyPair:
    """A finite carrier with two multiplication tables, row-major:
    ``table_h[x][y]`` is x composed with y horizontally."""

    n: int
    table_h: Table
    table_v: Table

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("carrier size must be at least 1")
        for name, tab in (("h", self.table_h), ("v", self.table_v)):
            if len(tab) != self.n or any(len(row) != self.n for row in tab):
                raise ValueError(f"table_{name} must be {self.n}x{self.n}")

    def h(self, x: int, y: int) -> int:
        return self.table_h[x][y]

    def v(self, x: int, y: int) -> int:
        return self.table_v[x][y]


def k_combinator(n: int = 2) -> CayleyPair:
    """Both operations return their first argument; associative, satisfies
    interchange, not commutative for n >= 2."""
    tab = tuple(tuple(x for _ in range(n)) for x in range(n))
    return CayleyPair(n, tab, tab)


def xor_pair() -> CayleyPair:
    """Addition mod 2 for both operations (an abelian group twice)."""
    tab = ((0, 1), (1, 0))
    return CayleyPair(2, tab, tab)


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    """First lexicographic counterexample per axiom, or None when it holds."""

    assoc_h: Optional[tuple[int, int, int]]
    assoc_v: Optional[tuple[int, int, int]]
    interchange: Optional[tuple[int, int, int, int]]

    @property
    def ok(self) -> bool:
        return self.assoc_h is None and self.assoc_v is None and self.interchange is None


def _first_assoc_failure(tab: Table, n: int) -> Optional[tuple[int, int, int]]:
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if tab[tab[x][y]][z] != tab[x][tab[y][z]]:
                    return (x, y, z)
    return None


def _first_interchange_failure(m: CayleyPair) -> Optional[tuple[int, int, int, int]]:
    h, v, n = m.table_h, m.table_v, m.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for w in range(n):
                    if v[h[x][y]][h[z][w]] != h[v[x][z]][v[y][w]]:
                        return (x, y, z, w)
    return None


def check_axioms(m: CayleyPair) -> AxiomReport:
    """Exhaustively check both associativity laws and the interchange law.

    n^3 triples per associativity check, n^4 quadruples for interchange;
    reports the first counterexample per failed axiom in lexicographic
    order.  Raises ``ValueError`` on out-of-range table entries.
    """
    for name, tab in (("h", m.table_h), ("v", m.table_v)):
        for x, row in enumerate(tab):
            for y, e in enumerate(row):
                if not isinstance(e, int) or not 0 <= e < m.n:
                    raise ValueError(f"table_{name}[{x}][{y}] = {e!r} out of range 0..{m.n - 1}")
    return AxiomReport(
        assoc_h=_first_assoc_failure(m.table_h, m.n),
        assoc_v=_first_assoc_failure(m.table_v, m.n),
        interchange=_first_interchange_failure(m),
    )


@lru_cache(maxsize=None)
def _axioms_ok(m: CayleyPair) -> bool:
    return check_axioms(m).ok


def _require_model(m: CayleyPair):
    if not _axioms_ok(m):
        raise AxiomError("not a double semigroup: " + repr(check_axioms(m)))


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutativityReport:
    comm_h: bool
    comm_v: bool
    ops_coincide: bool


def _table_symmetric(tab: Table, n: int) -> bool:
    return all(tab[x][y] == tab[y][x] for x in range(n) for y in range(x + 1, n))


def is_commutative(m: CayleyPair) -> CommutativityReport:
    """Symmetry of each table and whether the two tables are equal."""
    _require_model(m)
    return CommutativityReport(
        comm_h=_table_symmetric(m.table_h, m.n),
        comm_v=_table_symmetric(m.table_v, m.n),
        ops_coincide=m.table_h == m.table_v,
    )


def _element_cancellable(m: CayleyPair, c: int) -> bool:
    # left and right multiplication by c must be injective, for both tables
    n = m.n
    for tab in (m.table_h, m.table_v):
        if len({tab[c][x] for x in range(n)}) != n:
            return False
        if len({tab[x][c] for x in range(n)}) != n:
            return False
    return True


def is_cancellative(m: CayleyPair) -> bool:
    """Multiplication by every element, on any of the four sides, in either
    operation, is injective."""
    _require_model(m)
    return all(_element_cancellable(m, c) for c in range(m.n))


def _power_closure(tab: Table, c: int) -> set[int]:
    """All positive powers of ``c`` under one operation (left-iterated;
    associativity makes bracketing irrelevant)."""
    powers = set()
    cur = c
    while cur not in powers:
        powers.add(cur)
        cur = tab[cur][c]
    return powers


def has_bicancellable_element(m: CayleyPair) -> Optional[int]:
    """Least element whose powers in both directions (itself included) are
    all cancellable on all four sides; None when there is no such element."""
    _require_model(m)
    for c in range(m.n):
        need = _power_closure(m.table_h, c) | _power_closure(m.table_v, c)
        if all(_element_cancellable(m, u) for u in need):
            return c
    return None


@dataclass(frozen=True)
class InverseStructure:
    """Unique-inverse maps for both operations."""

    inv_h: tuple[int, ...]
    inv_v: tuple[int, ...]


def _unique_inverses(tab: Table, n: int) -> Optional[tuple[int, ...]]:
    out = []
    for x in range(n):
        ys = [
            y
            for y in range(n)
            if tab[tab[x][y]][x] == x and tab[tab[y][x]][y] == y
        ]
        if len(ys) != 1:
            return None
        out.append(ys[0])
    return tuple(out)


def _inverse_variety_axioms_hold(tab: Table, inv: Sequence[int], n: int) -> bool:
    # (x y)^-1 = y^-1 x^-1 and idempotents commute: x x^-1 y y^-1 = y y^-1 x x^-1
    for x in range(n):
        for y in range(n):
            if inv[tab[x][y]] != tab[inv[y]][inv[x]]:
                return False
            e, f = tab[x][inv[x]], tab[y][inv[y]]
            if tab[e][f] != tab[f][e]:
                return False
    return True


def inverse_structure(m: CayleyPair) -> Optional[InverseStructure]:
    """Inverse maps when both operations are inverse semigroups.

    For each operation independently, every element must have exactly one
    semigroup inverse (y with xyx = x and yxy = y).  The computed maps are
    then cross-checked against the variety axioms; a violation there would
    be an implementation bug and is reported as absence.
    """
    _require_model(m)
    inv_h = _unique_inverses(m.table_h, m.n)
    inv_v = _unique_inverses(m.table_v, m.n)
    if inv_h is None or inv_v is None:
        return None
    if not _inverse_variety_axioms_hold(m.table_h, inv_h, m.n):
        return None
    if not _inverse_variety_axioms_hold(m.table_v, inv_v, m.n):
        return None
    return InverseStructure(inv_h=inv_h, inv_v=inv_v)


@dataclass(frozen=True)
class UnitReport:
    unit_h: Optional[int]
    unit_v: Optional[int]


def _two_sided_unit(tab: Table, n: int) -> Optional[int]:
    for e in range(n):
        if all(tab[e][x] == x and tab[x][e] == x for x in range(n)):
            return e
    return None


def unit_report(m: CayleyPair) -> UnitReport:
    """Two-sided units per operation, when they exist."""
    _require_model(m)
    return UnitReport(
        unit_h=_two_sided_unit(m.table_h, m.n),
        unit_v=_two_sided_unit(m.table_v, m.n),
    )


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def configured_max_order() -> int:
    """Enumeration cap: ``TILEPROOF_MAX_ORDER`` env var, default 3, hard 4."""
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return _DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError as exc:
        raise MaxOrderError(f"{MAX_ORDER_ENV} must be an integer, got {raw!r}") from exc
    if not 1 <= value <= _HARD_MAX_ORDER:
        raise MaxOrderError(f"{MAX_ORDER_ENV} must be in 1..{_HARD_MAX_ORDER}, got {value}")
    return value


def _assoc_tables(n: int) -> list[Table]:
    """All associative tables on 0..n-1, lexicographic in row-major order."""
    cells = [(x, y) for x in range(n) for y in range(n)]
    tab = [[-1] * n for _ in range(n)]
    out: list[Table] = []

    def consistent() -> bool:
        # check every triple whose required lookups are all filled in
        for x in range(n):
            for y in range(n):
                xy = tab[x][y]
                if xy < 0:
                    continue
                for z in range(n):
                    yz = tab[y][z]
                    if yz < 0:
                        continue
                    lhs = tab[xy][z]
                    rhs = tab[x][yz]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
        return True

    def fill(k: int):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in tab))
            return
        x, y = cells[k]
        for v in range(n):
            tab[x][y] = v
            if consistent():
                fill(k + 1)
        tab[x][y] = -1

    fill(0)
    return out


def _interchange_consistent(h: Table, v: list[list[int]], n: int) -> bool:
    for x in range(n):
        for y in range(n):
            hxy = h[x][y]
            for z in range(n):
                vxz = v[x][z]
                if vxz < 0:
                    continue
                for w in range(n):
                    lhs = v[hxy][h[z][w]]
                    vyw = v[y][w]
                    if lhs < 0 or vyw < 0:
                        continue
                    if lhs != h[vxz][vyw]:
                        return False
    return True


def _compatible_v_tables(h: Table, n: int) -> Iterator[Table]:
    """Associative v-tables satisfying interchange against a fixed h-table.

    Fills cells in row-major order with incremental associativity and
    interchange pruning, which keeps order 3 fast and order 4 feasible.
    """
    cells = [(x, y) for x in range(n) for y in range(n)]
    tab = [[-1] * n for _ in range(n)]

    def assoc_consistent() -> bool:
        for x in range(n):
            for y in range(n):
                xy = tab[x][y]
                if xy < 0:
                    continue
                for z in range(n):
                    yz = tab[y][z]
                    if yz < 0:
                        continue
                    lhs = tab[xy][z]
                    rhs = tab[x][yz]
                    if lhs >= 0 and rhs >= 0 and lhs != rhs:
                        return False
        return True

    def fill(k: int):
        if k == len(cells):
            yield tuple(tuple(row) for row in tab)
            return
        x, y = cells[k]
        for val in range(n):
            tab[x][y] = val
            if assoc_consistent() and _interchange_consistent(h, tab, n):
                yield from fill(k + 1)
        tab[x][y] = -1

    yield from fill(0)


def _passes_constraints(m: CayleyPair, constraints: frozenset[str]) -> bool:
    if "commutative" in constraints:
        r = is_commutative(m)
        if not (r.comm_h and r.comm_v):
            return False
    if "cancellative" in constraints and not is_cancellative(m):
        return False
    if "inverse" in constraints and inverse_structure(m) is None:
        return False
    if "unital" in constraints:
        u = unit_report(m)
        if u.unit_h is None or u.unit_v is None:
            return False
    return True


_CONSTRAINTS = ("commutative", "cancellative", "inverse", "unital")


def enumerate_models(
    n: int,
    constraints: Sequence[str] = (),
    max_order: Optional[int] = None,
) -> Iterator[CayleyPair]:
    """Yield every labeled double semigroup of order ``n``, lexicographic in
    (h-table, v-table) row-major order, filtered by the given constraint
    names.  No isomorphism reduction.  ``max_order`` overrides the
    environment-configured cap (this is the explicit opt-in for order 4).
    """
    bad = set(constraints) - set(_CONSTRAINTS)
    if bad:
        raise ValueError(f"unknown constraints: {sorted(bad)}")
    cap = configured_max_order() if max_order is None else max_order
    if not 1 <= cap <= _HARD_MAX_ORDER:
        raise MaxOrderError(f"max_order must be in 1..{_HARD_MAX_ORDER}")
    if not 1 <= n <= cap:
        raise MaxOrderError(f"order {n} outside configured range 1..{cap}")
    wanted = frozenset(constraints)
    assoc = _assoc_tables(n)
    for h in assoc:
        for v in _compatible_v_tables(h, n):
            m = CayleyPair(n, h, v)
            if _passes_constraints(m, wanted):
                yield m


# ---------------------------------------------------------------------------
# Claim verification
# ---------------------------------------------------------------------------

CLAIM_NAMES = ("EH", "C1", "C2", "L", "P")


@dataclass(frozen=True)
class ClaimStatus:
    passed: bool
    checked: int
    counterexample: Optional[CayleyPair] = None


@dataclass(frozen=True)
class ClaimsReport:
    max_order: int
    claims: dict[str, ClaimStatus]
    counts: tuple[dict, ...]

    @property
    def all_passed(self) -> bool:
        return all(s.passed for s in self.claims.values())


def _claim_failures(m: CayleyPair) -> dict[str, bool]:
    """Which claims apply to this model and whether each one holds on it."""
    comm = is_commutative(m)
    both_comm = comm.comm_h and comm.comm_v
    units = unit_report(m)
    inv = inverse_structure(m)
    results: dict[str, Optional[bool]] = {name: None for name in CLAIM_NAMES}

    if units.unit_h is not None and units.unit_v is not None:
        results["EH"] = (
            units.unit_h == units.unit_v and comm.ops_coincide and both_comm
        )
    if is_cancellative(m):
        results["C1"] = both_comm
    if has_bicancellable_element(m) is not None:
        results["C2"] = both_comm
    if inv is not None:
        results["L"] = all(
            inv.inv_v[inv.inv_h[x]] == inv.inv_h[inv.inv_v[x]] for x in range(m.n)
        )
        results["P"] = both_comm and _sandwich_identity(m.table_h, inv.inv_h, m.n) and (
            _sandwich_identity(m.table_v, inv.inv_v, m.n)
        )
    return results


def _sandwich_identity(tab: Table, inv: Sequence[int], n: int) -> bool:
    # A*B * inv(A)*inv(B) * A*B == A*B for all A, B
    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            lhs = tab[tab[tab[tab[ab][inv[a]]][inv[b]]][a]][b]
            if lhs != ab:
                return False
    return True


def verify_claims(n_max: int, max_order: Optional[int] = None) -> ClaimsReport:
    """Check every claim against every labeled model of order 1..n_max.

    All five claims are theorems, so any counterexample indicates an
    implementation bug; the report still carries it for diagnosis.
    """
    cap = configured_max_order() if max_order is None else max_order
    if not 1 <= n_max <= cap:
        raise MaxOrderError(f"n_max {n_max} outside configured range 1..{cap}")
    checked = {name: 0 for name in CLAIM_NAMES}
    failed: dict[str, Optional[CayleyPair]] = {name: None for name in CLAIM_NAMES}
    counts = []
    for n in range(1, n_max + 1):
        tally = {
            "order": n,
            "double_semigroups": 0,
            "unital": 0,
            "cancellative": 0,
            "inverse": 0,
            "bicancellable": 0,
        }
        for m in enumerate_models(n, max_order=cap):
            tally["double_semigroups"] += 1
            u = unit_report(m)
            if u.unit_h is not None and u.unit_v is not None:
                tally["unital"] += 1
            if is_cancellative(m):
                tally["cancellative"] += 1
            if inverse_structure(m) is not None:
                tally["inverse"] += 1
            if has_bicancellable_element(m) is not None:
                tally["bicancellable"] += 1
            for name, holds in _claim_failures(m).items():
                if holds is None:
                    continue
                checked[name] += 1
                if not holds and failed[name] is None:
                    failed[name] = m
        counts.append(tally)
    claims = {
        name: ClaimStatus(
            passed=failed[name] is None,
            checked=checked[name],
            counterexample=failed[name],
        )
        for name in CLAIM_NAMES
    }
    return ClaimsReport(max_order=n_max, claims=claims, counts=tuple(counts))
