import itertools
import os
import random

import pytest

from tileproof.models import (
    AxiomError,
    CayleyPair,
    MaxOrderError,
    check_axioms,
    enumerate_models,
    has_bicancellable_element,
    inverse_structure,
    is_cancellative,
    is_commutative,
    k_combinator,
    unit_report,
    verify_claims,
    xor_pair,
)
from oracles import naive_double_semigroup

# frozen regression values, cross-checked below where a naive scan is feasible
LABELED_DOUBLE_SEMIGROUPS = {1: 1, 2: 46, 3: 2293}

MIX = CayleyPair(2, ((0, 0), (1, 1)), ((0, 1), (1, 0)))  # (first projection, xor)


class TestCheckAxioms:
    def test_k_combinator_passes(self):
        assert check_axioms(k_combinator()).ok

    def test_xor_pair_passes(self):
        assert check_axioms(xor_pair()).ok

    def test_first_assoc_witness_is_lexicographic(self):
        # naive scan: (1,0,1) is the first of the failing triples for this
        # table ((1*0)*1 = 1 but 1*(0*1) = 0); (1,1,1) fails too but later
        tab = ((0, 1), (0, 0))
        fails = [
            (x, y, z)
            for x in range(2)
            for y in range(2)
            for z in range(2)
            if tab[tab[x][y]][z] != tab[x][tab[y][z]]
        ]
        assert fails == [(1, 0, 1), (1, 1, 1)]
        report = check_axioms(CayleyPair(2, tab, ((0, 0), (0, 0))))
        assert report.assoc_h == (1, 0, 1)
        assert report.assoc_v is None

    def test_interchange_witness(self):
        # AND and OR are both associative but fail interchange at (0,1,1,0)
        and_t = ((0, 0), (0, 1))
        or_t = ((0, 1), (1, 1))
        report = check_axioms(CayleyPair(2, and_t, or_t))
        assert report.assoc_h is None and report.assoc_v is None
        assert report.interchange is not None
        x, y, z, w = report.interchange
        assert or_t[and_t[x][y]][and_t[z][w]] != and_t[or_t[x][z]][or_t[y][w]]

    def test_out_of_range_entry_rejected(self):
        with pytest.raises(ValueError):
            check_axioms(CayleyPair(2, ((0, 2), (0, 0)), ((0, 0), (0, 0))))

    def test_agrees_with_naive_oracle_on_random_tables(self):
        rng = random.Random(99)
        for _ in range(1000):
            n = rng.randint(1, 3)
            h = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
            v = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
            assert check_axioms(CayleyPair(n, h, v)).ok == naive_double_semigroup(h, v, n)


class TestPredicates:
    def test_k_combinator_not_commutative(self):
        r = is_commutative(k_combinator())
        assert not r.comm_h and not r.comm_v

    def test_xor_fully_commutative(self):
        r = is_commutative(xor_pair())
        assert r.comm_h and r.comm_v and r.ops_coincide

    def test_mixed_pair(self):
        # the independent loop oracle confirms this pair really is a model
        assert naive_double_semigroup(MIX.table_h, MIX.table_v, 2)
        assert check_axioms(MIX).ok
        r = is_commutative(MIX)
        assert (r.comm_h, r.comm_v, r.ops_coincide) == (False, True, False)

    def test_cancellative(self):
        assert is_cancellative(xor_pair())
        assert not is_cancellative(k_combinator())
        assert not is_cancellative(MIX)

    def test_bicancellable(self):
        assert has_bicancellable_element(xor_pair()) == 0
        assert has_bicancellable_element(k_combinator()) is None
        trivial = CayleyPair(1, ((0,),), ((0,),))
        assert has_bicancellable_element(trivial) == 0

    def test_inverse_structure(self):
        inv = inverse_structure(xor_pair())
        assert inv is not None and inv.inv_h == (0, 1) and inv.inv_v == (0, 1)
        # in the first-projection model every y satisfies xyx=x and yxy=y,
        # so inverses are not unique
        assert inverse_structure(k_combinator()) is None
        trivial = CayleyPair(1, ((0,),), ((0,),))
        assert inverse_structure(trivial) is not None

    def test_units(self):
        u = unit_report(xor_pair())
        assert u.unit_h == 0 and u.unit_v == 0
        k = unit_report(k_combinator())
        assert k.unit_h is None and k.unit_v is None

    def test_predicates_require_a_model(self):
        broken = CayleyPair(2, ((0, 1), (0, 0)), ((0, 0), (0, 0)))
        with pytest.raises(AxiomError):
            is_commutative(broken)
        with pytest.raises(AxiomError):
            inverse_structure(broken)


class TestEnumeration:
    def test_order_1_has_exactly_one_model(self):
        assert list(enumerate_models(1)) == [CayleyPair(1, ((0,),), ((0,),))]

    def test_order_2_count_matches_naive_full_scan(self):
        # the frozen regression value, recomputed by scanning all 256 pairs
        tables = [
            tuple(tuple(bits[2 * i : 2 * i + 2]) for i in range(2))
            for bits in itertools.product(range(2), repeat=4)
        ]
        naive = sum(1 for h in tables for v in tables if naive_double_semigroup(h, v, 2))
        assert naive == LABELED_DOUBLE_SEMIGROUPS[2]
        models = list(enumerate_models(2))
        assert len(models) == LABELED_DOUBLE_SEMIGROUPS[2]
        assert len(set(models)) == len(models)

    def test_order_3_regression_count_and_post_hoc_validity(self):
        models = list(enumerate_models(3, max_order=3))
        assert len(models) == LABELED_DOUBLE_SEMIGROUPS[3]
        assert all(check_axioms(m).ok for m in models)

    def test_stream_is_lexicographic_and_valid(self):
        models = list(enumerate_models(2))
        keys = [(m.table_h, m.table_v) for m in models]
        assert keys == sorted(keys)
        assert all(check_axioms(m).ok for m in models)

    def test_k_combinator_is_enumerated(self):
        assert k_combinator() in set(enumerate_models(2))

    def test_constraints(self):
        unital = list(enumerate_models(2, ("unital",)))
        assert xor_pair() in unital
        for m in unital:
            u = unit_report(m)
            assert u.unit_h is not None and u.unit_v == u.unit_h
        cancellative = set(enumerate_models(2, ("cancellative",)))
        assert cancellative == {m for m in enumerate_models(2) if is_cancellative(m)}
        with pytest.raises(ValueError):
            list(enumerate_models(2, ("shiny",)))

    def test_order_range_enforced(self):
        with pytest.raises(MaxOrderError):
            list(enumerate_models(4))  # default cap is 3
        with pytest.raises(MaxOrderError):
            list(enumerate_models(0))

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("TILEPROOF_MAX_ORDER", "2")
        with pytest.raises(MaxOrderError):
            list(enumerate_models(3))
        monkeypatch.setenv("TILEPROOF_MAX_ORDER", "banana")
        with pytest.raises(MaxOrderError):
            list(enumerate_models(2))


class TestClaims:
    @pytest.mark.skipif(
        os.environ.get("TILEPROOF_MAX_ORDER") != "4",
        reason="order-4 scan takes minutes; set TILEPROOF_MAX_ORDER=4 to opt in",
    )
    def test_all_claims_pass_at_order_4(self):
        report = verify_claims(4)
        assert report.all_passed
        assert report.counts[-1]["double_semigroups"] == 247428  # frozen regression value

    def test_all_claims_pass_at_order_2(self):
        report = verify_claims(2)
        assert report.all_passed
        assert report.counts[-1]["double_semigroups"] == LABELED_DOUBLE_SEMIGROUPS[2]
        # every claim actually fired on some model
        assert all(s.checked > 0 for s in report.claims.values())

    def test_mutant_interchange_violator_is_not_a_counterexample(self):
        # AND/OR fails interchange, so the claim checker refuses it upstream
        mutant = CayleyPair(2, ((0, 0), (0, 1)), ((0, 1), (1, 1)))
        assert not check_axioms(mutant).ok
        with pytest.raises(AxiomError):
            is_commutative(mutant)

    def test_unital_models_have_coinciding_units(self):
        for m in enumerate_models(2, ("unital",)):
            u = unit_report(m)
            assert u.unit_h == u.unit_v

    def test_inverse_maps_are_involutions(self):
        for n in (1, 2, 3):
            for m in enumerate_models(n, ("inverse",)):
                inv = inverse_structure(m)
                assert all(inv.inv_h[inv.inv_h[x]] == x for x in range(m.n))
                assert all(inv.inv_v[inv.inv_v[x]] == x for x in range(m.n))
