import pytest
from hypothesis import given
from hypothesis import strategies as st

from _support import G1
from evenartin.presentation import CoxeterGraph
from evenartin.splitter import words_equal
from evenartin.words import (
    Letter,
    WordParseError,
    artin_relator,
    conj_identity,
    exponent_sums,
    expand_conjugates,
    format_word,
    free_reduce,
    inverse,
    parse_word,
    pi_word,
    relators,
    retract,
)

W = parse_word
letters = st.builds(Letter, st.sampled_from("abc"), st.sampled_from((1, -1)))
words = st.lists(letters, max_size=12).map(tuple)


class TestParseFormat:
    def test_powers(self):
        assert W("a b^-1 c^3") == (Letter("a"), Letter("b", -1)) + (Letter("c"),) * 3
        assert W("a^-2") == (Letter("a", -1),) * 2

    def test_identity(self):
        assert W("") == W("1") == ()
        assert format_word(()) == "1"

    def test_grouping(self):
        assert format_word(W("a a b^-1 b^-1 a")) == "a^2 b^-2 a"

    @pytest.mark.parametrize("text, column", [("a ^2", 3), ("a b^0", 3), ("a b^", 3), ("a 2x", 3)])
    def test_errors(self, text, column):
        with pytest.raises(WordParseError) as info:
            parse_word(text)
        assert info.value.column == column

    @given(words)
    def test_round_trip(self, w):
        assert parse_word(format_word(w)) == w


class TestFreeReduce:
    def test_examples(self):
        assert free_reduce(W("a a^-1 b")) == W("b")
        assert free_reduce(()) == ()
        assert free_reduce(W("a b b^-1 a^-1")) == ()

    @given(words)
    def test_idempotent_and_inverse(self, w):
        r = free_reduce(w)
        assert free_reduce(r) == r
        assert all(not (x.gen == y.gen and x.sign == -y.sign) for x, y in zip(r, r[1:]))
        assert free_reduce(w + inverse(w)) == ()

    @given(words, words)
    def test_exponent_sums_additive(self, u, v):
        su, sv, suv = exponent_sums(u), exponent_sums(v), exponent_sums(u + v)
        for g in "abc":
            assert suv.get(g, 0) == su.get(g, 0) + sv.get(g, 0)


class TestRelators:
    def test_pi_word(self):
        assert pi_word(4, "s", "t") == W("s t s t")
        assert pi_word(2, "s", "t") == W("s t")
        assert pi_word(6, "s", "t") == W("s t s t s t")
        with pytest.raises(ValueError):
            pi_word(3, "s", "t")
        with pytest.raises(ValueError):
            pi_word(4, "s", "s")

    def test_artin_relator(self):
        g4 = CoxeterGraph.build("st", [("s", "t", 4)])
        g2 = CoxeterGraph.build("st", [("s", "t", 2)])
        # free reduction of Pi(s,t) Pi(t,s)^-1 leaves nothing to cancel
        assert artin_relator(g4, "s", "t") == W("s t s t s^-1 t^-1 s^-1 t^-1")
        assert artin_relator(g2, "s", "t") == W("s t s^-1 t^-1")
        with pytest.raises(ValueError):
            artin_relator(CoxeterGraph.build("st", []), "s", "t")

    def test_relators_balanced(self):
        for r in relators(G1):
            assert all(v == 0 for v in exponent_sums(r).values())


class TestRetract:
    def test_examples(self):
        assert retract(G1, {"a"}, W("z a z^-1 a")) == W("a a")
        w = W("z a a^-1 x")
        assert retract(G1, G1.vertices, w) == free_reduce(w)
        assert retract(G1, (), W("z a x")) == ()

    @given(words, words)
    def test_homomorphism_on_free_words(self, u, v):
        keep = {"a", "b"}
        assert retract(None, keep, u + v) == free_reduce(retract(None, keep, u) + retract(None, keep, v))


class TestConjugateIdentities:
    def test_patterns(self):
        assert conj_identity(2, "negative") == (((-1, 1),), ((0, -1), (1, 1), (0, 1)))
        assert conj_identity(2, "power") == (((2, 1),), ((1, 1), (0, 1), (1, -1)))
        assert conj_identity(3, "power") == (((3, 1),), ((2, 1), (1, 1), (0, 1), (1, -1), (2, -1)))
        with pytest.raises(ValueError):
            conj_identity(0, "power")

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("side", ["negative", "power"])
    def test_identities_hold_in_dihedral_group(self, k, side):
        g = CoxeterGraph.build("st", [("s", "t", 2 * k)])
        lhs, rhs = conj_identity(k, side)
        assert words_equal(g, expand_conjugates(lhs, "s", "t"), expand_conjugates(rhs, "s", "t"))

    def test_identity_fails_for_wrong_label(self):
        g = CoxeterGraph.build("st", [("s", "t", 6)])
        lhs, rhs = conj_identity(2, "power")
        assert not words_equal(g, expand_conjugates(lhs, "s", "t"), expand_conjugates(rhs, "s", "t"))
