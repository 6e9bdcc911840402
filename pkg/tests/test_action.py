import random

import pytest

from _support import G1, GRAPHS, PATH, insert_relators, random_word
from evenartin.action import (
    BasisKey,
    act,
    act_generator,
    act_T0_generator,
    dot_u,
    format_free,
    free_inverse,
    free_product,
)
from evenartin.coset_forms import ALNormalForm, normalize_AL
from evenartin.presentation import decompose_at
from evenartin.splitter import SemidirectElement, canonical_word, normal_form, phi, psi, words_equal
from evenartin.words import Letter, inverse, parse_word

W = parse_word
DD = decompose_at(G1, "z")


def key(dd, h="", u=""):
    return BasisKey(normalize_AL(dd, W(h)), canonical_word(dd.gamma1, W(u)))


def b(dd, h="", u="", e=1):
    return ((key(dd, h, u), e),)


class TestFreeWords:
    def test_product_reduces(self):
        k1, k2 = key(DD), key(DD, "x")
        assert free_product(((k1, 1), (k2, 1)), ((k2, -1),)) == ((k1, 1),)
        w = ((k1, 1), (k2, -1))
        assert free_product(w, free_inverse(w)) == ()

    def test_format(self):
        assert format_free(()) == "1"
        assert format_free(((key(DD, "x"), 1), (key(DD), -1))) == "b[x|1]^1 b[1|1]^-1"


class TestT0Action:
    def test_generic(self):
        assert act_T0_generator(DD, ALNormalForm(()), Letter("x")) == b(DD, "x")

    def test_exceptional_positive(self):
        got = act_T0_generator(DD, normalize_AL(DD, W("x")), Letter("x"))
        assert got == b(DD, "x") + b(DD) + b(DD, "x", e=-1)

    def test_exceptional_negative(self):
        got = act_T0_generator(DD, ALNormalForm(()), Letter("x", -1))
        assert got == b(DD, e=-1) + b(DD, "x") + b(DD)

    def test_rejects_non_T0(self):
        with pytest.raises(ValueError):
            act_T0_generator(DD, normalize_AL(DD, W("a x")), Letter("x"))

    def test_hexagonal_exceptional_lengths(self):
        g = GRAPHS["star"]
        dd = decompose_at(g, "a")
        c2 = normalize_AL(dd, W("c c"))
        assert len(act_T0_generator(dd, c2, Letter("c"))) == 5
        assert len(act_T0_generator(dd, ALNormalForm(()), Letter("c", -1))) == 5


class TestDot:
    PATH_DD = decompose_at(PATH, "a")

    def test_examples(self):
        dd = self.PATH_DD
        c = canonical_word(dd.gamma1, W("c"))
        assert dot_u(dd, b(dd, "b"), c) == b(dd, "b", "c")
        assert dot_u(dd, b(dd, "b"), ()) == b(dd, "b")
        assert dot_u(dd, b(dd, "b", "c^-1"), c) == b(dd, "b")

    def test_rejects_non_kernel(self):
        with pytest.raises(ValueError):
            dot_u(self.PATH_DD, b(self.PATH_DD, "b"), W("b"))


class TestGeneratorAction:
    def test_outside_link(self):
        dd = decompose_at(PATH, "a")
        assert act_generator(dd, key(dd, "b"), Letter("c")) == b(dd, "b", "c")

    def test_commuting_link_letter(self):
        assert act_generator(DD, key(DD, "x"), Letter("a")) == b(DD, "x")

    def test_word_action(self):
        assert act(DD, b(DD), ()) == b(DD)
        assert act(DD, b(DD), W("x x")) == act(DD, b(DD, "x"), W("x")) == b(DD, "x") + b(DD) + b(DD, "x", e=-1)


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_action_composes_and_matches_conjugation(name):
    g = GRAPHS[name]
    rng = random.Random(name)
    for z in g.vertices:
        dd = decompose_at(g, z)
        gens = dd.gamma1.vertices
        if not gens:
            continue
        for _ in range(15):
            omega = psi(g, random_word(rng, g.vertices, 8), z=z).omega
            g1, g2 = random_word(rng, gens, 5), random_word(rng, gens, 5)
            once = act(dd, omega, g1 + g2)
            assert act(dd, act(dd, omega, g1), g2) == once
            assert act(dd, once, inverse(g1 + g2)) == omega
            assert act(dd, omega, insert_relators(rng, dd.gamma1, g1, 2)) == act(dd, omega, g1)
            # phi(omega * g) = g^-1 phi(omega) g
            one = normal_form(dd.gamma1, ())
            lhs = phi(g, SemidirectElement(z, one, once))
            rhs = inverse(g1 + g2) + phi(g, SemidirectElement(z, one, omega)) + g1 + g2
            assert words_equal(g, lhs, rhs)
