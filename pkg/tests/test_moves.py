import random

import pytest
from hypothesis import given, strategies as st

from tileproof.moves import (
    COL,
    ROW,
    BadOrientation,
    BadPair,
    BadPath,
    BadSplit,
    Move,
    ProofScript,
    ReplayError,
    apply_move,
    enumerate_moves,
    invert_move,
    replay,
)
from tileproof.terms import (
    Leaf,
    border_word,
    layout,
    leaf_multiset,
    parse_term,
    same_cyclic_word,
)
from conftest import random_term
from oracles import matcher_neighbors


def t(text):
    return parse_term(text)


class TestEnumerate:
    def test_leaf_has_no_moves(self):
        assert enumerate_moves(Leaf("a")) == []

    def test_2x2_has_exactly_one_move(self):
        # hand enumeration: one V node, one adjacent H pair, splits 1,1
        moves = enumerate_moves(t("(a|b)/(c|d)"))
        assert moves == [Move(ROW, (), 0, 1, 1)]

    def test_3_by_2_has_exactly_two_moves(self):
        # hand enumeration: split_first ranges over {1, 2}
        moves = enumerate_moves(t("(a|b|c)/(d|e)"))
        assert moves == [Move(ROW, (), 0, 1, 1), Move(ROW, (), 0, 2, 1)]

    def test_order_is_path_index_splits(self, rng):
        for _ in range(100):
            term = random_term(rng, max_leaves=10)
            moves = enumerate_moves(term)
            keys = [(m.path, m.index, m.split_first, m.split_second) for m in moves]
            assert keys == sorted(keys)
            assert len(set(moves)) == len(moves)


class TestApply:
    def test_2x2_interchange(self):
        term = t("(a|b)/(c|d)")
        [m] = enumerate_moves(term)
        assert apply_move(term, m) == t("(a/c)|(b/d)")

    def test_uneven_split(self):
        # x=a|b, y=c, z=d, w=e
        term = t("(a|b|c)/(d|e)")
        got = apply_move(term, Move(ROW, (), 0, 2, 1))
        assert got == t("((a|b)/d)|(c/e)")

    def test_error_kinds_are_distinct(self):
        with pytest.raises(BadPath):
            apply_move(Leaf("a"), Move(ROW, (0,), 0, 1, 1))
        with pytest.raises(BadOrientation):
            apply_move(t("(a/b)|(c/d)"), Move(ROW, (), 0, 1, 1))
        with pytest.raises(BadPair):
            apply_move(t("a/(c|d)"), Move(ROW, (), 0, 1, 1))
        with pytest.raises(BadSplit):
            apply_move(t("(a|b)/(c|d)"), Move(ROW, (), 0, 2, 1))
        with pytest.raises(BadPath):
            apply_move(t("(a|b)/(c|d)"), Move(ROW, (), 1, 1, 1))

    def test_deep_path_and_collapse(self):
        # ambient V has exactly two children: the merged child splices upward
        term = t("m|((a|b)/(c|d))|n")
        got = apply_move(term, Move(ROW, (1,), 0, 1, 1))
        assert got == t("m|(a/c)|(b/d)|n")

    def test_multiset_preserved(self, rng):
        for _ in range(300):
            term = random_term(rng, max_leaves=10)
            for m in enumerate_moves(term):
                assert leaf_multiset(apply_move(term, m)) == leaf_multiset(term)


class TestInvert:
    def test_2x2_round_trip(self):
        term = t("(a|b)/(c|d)")
        [m] = enumerate_moves(term)
        inv = invert_move(term, m)
        assert inv.kind == COL
        merged = apply_move(term, m)
        assert [inv] == enumerate_moves(merged)
        assert apply_move(merged, inv) == term

    def test_kinds_mirror(self, rng):
        for _ in range(100):
            term = random_term(rng, max_leaves=8)
            for m in enumerate_moves(term):
                inv = invert_move(term, m)
                assert {m.kind, inv.kind} == {ROW, COL}

    @given(st.integers(0, 10**9))
    def test_involution(self, seed):
        term = random_term(random.Random(seed), max_leaves=10)
        for m in enumerate_moves(term):
            stepped = apply_move(term, m)
            assert apply_move(stepped, invert_move(term, m)) == term


class TestCompleteness:
    @given(st.integers(0, 10**9))
    def test_one_step_reachability_matches_matcher(self, seed):
        # brute-force interchange matcher as the independent oracle
        term = random_term(random.Random(seed), max_leaves=6)
        via_moves = {apply_move(term, m) for m in enumerate_moves(term)}
        assert via_moves == matcher_neighbors(term)

    def test_matcher_agrees_on_bigger_terms_too(self, rng):
        for _ in range(50):
            term = random_term(rng, max_leaves=9)
            via_moves = {apply_move(term, m) for m in enumerate_moves(term)}
            assert via_moves == matcher_neighbors(term)


def bfs_closure(term):
    seen = {term}
    frontier = [term]
    while frontier:
        nxt = []
        for s in frontier:
            for m in enumerate_moves(s):
                u = apply_move(s, m)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


class TestBorderInvariant:
    def test_2x2_closure_has_two_elements(self):
        closure = bfs_closure(t("(a|b)/(c|d)"))
        assert closure == {t("(a|b)/(c|d)"), t("(a/c)|(b/d)")}

    @pytest.mark.parametrize("start", ["(a|b)/(c|d)", "(a|b)/(c|d|e)"])
    def test_moves_preserve_border_word_when_all_leaves_touch(self, start):
        reference = border_word(t(start))

        def all_on_border(term):
            lay = layout(term)
            return all(
                r.x0 == 0 or r.y0 == 0 or r.x1 == 1 or r.y1 == 1 for r in lay.values()
            )

        for term in bfs_closure(t(start)):
            assert all_on_border(term)
            for m in enumerate_moves(term):
                stepped = apply_move(term, m)
                assert all_on_border(stepped)
                assert same_cyclic_word(border_word(stepped), reference)


class TestReplay:
    def test_empty_script(self):
        term = t("(a|b)/(c|d)")
        assert replay(ProofScript(start=term)) == [term]

    def test_trajectory(self):
        term = t("(a|b)/(c|d)")
        script = ProofScript(start=term, moves=(Move(ROW, (), 0, 1, 1), Move(COL, (), 0, 1, 1)))
        traj = replay(script)
        assert traj == [term, t("(a/c)|(b/d)"), term]

    def test_corrupted_split_reports_index(self):
        term = t("(a|b|c)/(d|e)")
        script = ProofScript(
            start=term,
            moves=(Move(ROW, (), 0, 1, 1), Move(ROW, (), 0, 5, 1)),
        )
        with pytest.raises(ReplayError) as exc:
            replay(script)
        assert exc.value.index == 1
