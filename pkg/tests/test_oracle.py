import random

import pytest

from _support import F2, G1, Z2, random_word
from evenartin.oracle import (
    INCONCLUSIVE,
    PROVEN_TRIVIAL,
    BfsBudget,
    bfs_trivial,
    exhaustive_equality,
    raag_normal_form,
)
from evenartin.presentation import CoxeterGraph
from evenartin.words import Letter, artin_relator, exponent_sums, free_reduce, inverse, parse_word

W = parse_word


class TestBfs:
    def test_relator_in_one_step(self):
        r = artin_relator(G1, "x", "z")
        assert bfs_trivial(G1, r, BfsBudget(max_length=len(r) + 8, max_depth=1)) == PROVEN_TRIVIAL

    def test_generator_is_inconclusive(self):
        assert bfs_trivial(G1, W("a"), BfsBudget(max_length=10, max_states=5000)) == INCONCLUSIVE

    def test_golden_relation(self):
        w = W("z x z x") + inverse(W("x z x z"))
        assert bfs_trivial(G1, w) == PROVEN_TRIVIAL

    def test_conjugated_relators(self):
        w = W("a") + artin_relator(G1, "a", "x") + W("a^-1 z") + inverse(artin_relator(G1, "x", "z")) + W("z^-1")
        assert bfs_trivial(G1, w) == PROVEN_TRIVIAL

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            BfsBudget(max_length=0)
        with pytest.raises(ValueError):
            BfsBudget(max_length=4, max_depth=-1)

    def test_default_budget(self):
        assert BfsBudget.default_for(W("a b c")) == BfsBudget(14, 8, 2_000_000)


class TestRaag:
    def test_examples(self):
        assert raag_normal_form(Z2, W("a b a^-1")) == W("b")
        assert raag_normal_form(Z2, W("b a")) == W("a b")
        assert raag_normal_form(F2, W("a b")) == W("a b")

    def test_rejects_other_labels(self):
        with pytest.raises(ValueError):
            raag_normal_form(G1, W("a"))

    def test_abelian_case_is_exponent_vector(self):
        g = CoxeterGraph.build("abc", [("a", "b", 2), ("b", "c", 2), ("a", "c", 2)])
        rng = random.Random(0)
        for _ in range(100):
            w = random_word(rng, "abc", 12)
            sums = exponent_sums(w)
            want = tuple(Letter(v, 1 if sums.get(v, 0) > 0 else -1) for v in "abc" for _ in range(abs(sums.get(v, 0))))
            assert raag_normal_form(g, w) == want

    def test_free_case_is_free_reduction(self):
        rng = random.Random(1)
        for _ in range(100):
            w = random_word(rng, "ab", 12)
            assert raag_normal_form(F2, w) == free_reduce(w)


class TestExhaustive:
    def test_z2(self):
        rep = exhaustive_equality(Z2, 4)
        assert rep.violations == []
        by_vector = {}
        for words in rep.partition.values():
            for w in words:
                s = exponent_sums(w)
                by_vector.setdefault((s.get("a", 0), s.get("b", 0)), []).append(w)
        assert rep.blocks() == {frozenset(ws) for ws in by_vector.values()}

    def test_f2(self):
        rep = exhaustive_equality(F2, 4)
        assert rep.violations == []
        by_reduction = {}
        for words in rep.partition.values():
            for w in words:
                by_reduction.setdefault(free_reduce(w), []).append(w)
        assert rep.blocks() == {frozenset(ws) for ws in by_reduction.values()}

    def test_gamma1(self):
        rep = exhaustive_equality(G1, 4)
        assert rep.violations == []
        assert rep.bfs_proved > 0

    def test_caps(self):
        with pytest.raises(ValueError):
            exhaustive_equality(G1, 7)
        with pytest.raises(ValueError):
            exhaustive_equality(CoxeterGraph.build("abcd", []), 2)
