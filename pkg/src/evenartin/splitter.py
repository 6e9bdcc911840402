"""The splitting ``A_Gamma = F x| A_1`` and the canonical forms built from it.

Fix the least vertex ``z``.  Every element of ``A_Gamma`` is written once as
``(g1, omega)`` with ``g1`` in ``A_1`` (the group on the other vertices,
canonicalized the same way, recursively) and ``omega`` a reduced word in
the free group ``F``.  Multiplication in the semidirect product is
``(g1, w1)(g2, w2) = (g1 g2, (w1 * g2) w2)`` and the isomorphism back to
``A_Gamma`` sends ``(g, omega)`` to ``g phi(omega)`` with
``phi(b_h) = h^-1 z h``.

The heavy lifting happens in :class:`Level`, one per (graph, vertex):
elements, basis keys and normal forms of the link group are interned as
small integers, and right/left multiplication by a generator is memoized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .action import BasisKey, FreeWord, format_free, free_inverse, free_product, t0_action
from .coset_forms import ALGroup
from .presentation import CoxeterGraph, decompose_at, require_even_fc
from .words import Letter, Word, format_word, free_reduce, inverse, retract


@dataclass(frozen=True)
class CanonicalForm:
    """Recursive normal form; ``z is None`` only for the empty graph."""

    z: str | None = None
    g1: CanonicalForm | None = None
    omega: FreeWord = ()

    def is_trivial(self) -> bool:
        return self.z is None or (not self.omega and self.g1.is_trivial())

    def word(self) -> Word:
        if self.z is None:
            return ()
        return free_reduce(self.g1.word() + _phi_free(self.z, self.omega))

    def __str__(self):
        if self.z is None:
            return "()"
        return f"({self.g1} ; {format_free(self.omega)})"


@dataclass(frozen=True)
class SemidirectElement:
    """A pair ``(g1, omega)`` of ``A_1 x| F`` for the splitting at ``z``."""

    z: str
    g1: CanonicalForm
    omega: FreeWord = ()

    def __str__(self):
        return f"({format_word(self.g1.word())} ; {format_free(self.omega)})"


@dataclass(frozen=True)
class PolyfreeTower:
    """``stages[i] = (z_i, rank)``; ``rank`` is ``math.inf`` for countably infinite rank."""

    stages: tuple[tuple[str, float], ...]

    def __str__(self):
        return "\n".join(f"{z} {'infinite' if r == math.inf else r}" for z, r in self.stages)


def _phi_free(z: str, omega) -> Word:
    out: list[Letter] = []
    for key, e in omega:
        h = key.word()
        out.extend(inverse(h) + (Letter(z, e),) + h)
    return tuple(out)


class Level:
    """Canonical-form engine for one graph, split at one vertex."""

    def __init__(self, graph: CoxeterGraph, z: str | None = None):
        self.graph = graph
        self.letters = graph.vertex_set
        self._elems: list = []
        self._ids: dict = {}
        self._mul: dict = {}
        self._lmul: dict = {}
        self._words: dict[int, Word] = {}
        if not graph.vertices:
            self.z = None
            self.identity = self._intern(None)
            return
        self.z = graph.vertices[0] if z is None else z
        self.dd = dd = decompose_at(graph, self.z)
        self.link = dd.link.vertex_set
        self.sub = level(dd.gamma1)
        self.al = ALGroup(dd, level(dd.L1))
        self._keys: list[tuple[int, int]] = []
        self._key_ids: dict[tuple[int, int], int] = {}
        self._act: dict = {}
        self.key_one = self._key(self.al.identity, self.sub.identity)
        self.identity = self._intern((self.sub.identity, ()))

    def _intern(self, struct) -> int:
        i = self._ids.get(struct)
        if i is None:
            i = self._ids[struct] = len(self._elems)
            self._elems.append(struct)
        return i

    def _key(self, h0: int, u: int) -> int:
        k = self._key_ids.get((h0, u))
        if k is None:
            k = self._key_ids[(h0, u)] = len(self._keys)
            self._keys.append((h0, u))
        return k

    def struct(self, e: int):
        return self._elems[e]

    # -- group operations ---------------------------------------------------

    def mul(self, e: int, letter: Letter) -> int:
        hit = self._mul.get((e, letter))
        if hit is not None:
            return hit
        if letter.gen not in self.letters:
            raise ValueError(f"unknown generator {letter.gen}")
        g1, om = self._elems[e]
        if letter.gen == self.z:
            out = self._intern((g1, free_product(om, ((self.key_one, letter.sign),))))
        else:
            out = self._intern((self.sub.mul(g1, letter), self.act(om, letter)))
        self._mul[(e, letter)] = out
        return out

    def mul_word(self, e: int, w: Word) -> int:
        for letter in w:
            e = self.mul(e, letter)
        return e

    def normalize(self, w: Word) -> int:
        return self.mul_word(self.identity, w)

    def lmul(self, letter: Letter, e: int) -> int:
        hit = self._lmul.get((letter, e))
        if hit is not None:
            return hit
        if letter.gen not in self.letters:
            raise ValueError(f"unknown generator {letter.gen}")
        g1, om = self._elems[e]
        if letter.gen == self.z:
            conj = self.act_word(((self.key_one, letter.sign),), self.sub.word(g1))
            out = self._intern((g1, free_product(conj, om)))
        else:
            out = self._intern((self.sub.lmul(letter, g1), om))
        self._lmul[(letter, e)] = out
        return out

    def lmul_word(self, w: Word, e: int) -> int:
        for letter in reversed(w):
            e = self.lmul(letter, e)
        return e

    def word(self, e: int) -> Word:
        w = self._words.get(e)
        if w is None:
            if self.z is None:
                w = ()
            else:
                g1, om = self._elems[e]
                out = list(self.sub.word(g1))
                for k, sign in om:
                    h = self.key_word(k)
                    out.extend(inverse(h))
                    out.append(Letter(self.z, sign))
                    out.extend(h)
                w = free_reduce(out)
            self._words[e] = w
        return w

    def key_word(self, k: int) -> Word:
        h0, u = self._keys[k]
        return self.al.word(h0) + self.sub.word(u)

    def in_kernel(self, u: int) -> bool:
        """Is ``u`` (an element of ``A_1``) killed by the retraction onto the link?"""
        return self.al.normalize(retract(None, self.link, self.sub.word(u))) == self.al.identity

    # -- the action of A_1 on F -------------------------------------------

    def act_key(self, k: int, letter: Letter) -> FreeWord:
        hit = self._act.get((k, letter))
        if hit is not None:
            return hit
        h0, u = self._keys[k]
        sub = self.sub
        if letter.gen not in self.link:
            out = ((self._key(h0, sub.mul(u, letter)), 1),)
        else:
            conj = sub.lmul(letter.inv(), sub.mul(u, letter))
            out = tuple((self._key(h, conj), e) for h, e in t0_action(self.al, h0, letter))
        self._act[(k, letter)] = out
        return out

    def act(self, om: FreeWord, letter: Letter) -> FreeWord:
        parts = []
        for k, e in om:
            img = self.act_key(k, letter)
            parts.append(img if e == 1 else free_inverse(img))
        return free_product(*parts)

    def act_word(self, om: FreeWord, w: Word) -> FreeWord:
        for letter in w:
            om = self.act(om, letter)
        return om

    # -- conversion ---------------------------------------------------------

    def export(self, e: int) -> CanonicalForm:
        if self.z is None:
            return CanonicalForm()
        g1, om = self._elems[e]
        return CanonicalForm(self.z, self.sub.export(g1), self.export_free(om))

    def export_key(self, k: int) -> BasisKey:
        h0, u = self._keys[k]
        return BasisKey(self.al.export(h0), self.sub.word(u))

    def export_free(self, om: FreeWord) -> FreeWord:
        return tuple((self.export_key(k), e) for k, e in om)

    def import_key(self, key: BasisKey) -> int:
        h0 = self.al.import_form(key.h0)
        if not self.al.in_T0(h0):
            raise ValueError(f"{key.h0} is not in T0")
        u = self.sub.normalize(tuple(key.u))
        if self.sub.word(u) != tuple(key.u):
            raise ValueError(f"{format_word(key.u)} is not a canonical word")
        if not self.in_kernel(u):
            raise ValueError(f"{format_word(key.u)} is not in the kernel of the retraction onto the link")
        return self._key(h0, u)

    def import_free(self, om: FreeWord) -> FreeWord:
        return free_product(tuple((self.import_key(k), e) for k, e in om))

    def import_form(self, cf: CanonicalForm) -> int:
        if self.z is None:
            if cf.z is not None:
                raise ValueError("form does not belong to the empty graph")
            return self.identity
        if cf.z != self.z:
            raise ValueError(f"form is split at {cf.z}, expected {self.z}")
        return self._intern((self.sub.import_form(cf.g1), self.import_free(cf.omega)))


@lru_cache(maxsize=None)
def _level(graph: CoxeterGraph, z: str | None) -> Level:
    return Level(graph, z)


def level(graph: CoxeterGraph, z: str | None = None) -> Level:
    if z is not None and graph.vertices and z == graph.vertices[0]:
        z = None
    return _level(graph, z)


def _checked_level(graph, z=None) -> Level:
    require_even_fc(graph)
    if z is not None and z not in graph.vertex_set:
        raise ValueError(f"unknown vertex {z}")
    return level(graph, z)


def _check_letters(graph, w):
    for letter in w:
        if letter.gen not in graph.vertex_set:
            raise ValueError(f"unknown generator {letter.gen}")


# -- public operations ------------------------------------------------------

def psi(graph: CoxeterGraph, w: Word, z: str | None = None) -> SemidirectElement:
    """Image of ``w`` in ``A_1 x| F`` for the splitting at ``z`` (default: least vertex)."""
    lvl = _checked_level(graph, z)
    if lvl.z is None:
        raise ValueError("the empty graph has no splitting")
    _check_letters(graph, w)
    g1, om = lvl.struct(lvl.normalize(tuple(w)))
    return SemidirectElement(lvl.z, lvl.sub.export(g1), lvl.export_free(om))


def phi(graph: CoxeterGraph, e: SemidirectElement) -> Word:
    return free_reduce(e.g1.word() + _phi_free(e.z, e.omega))


def semidirect_multiply(graph: CoxeterGraph, a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    """``(g1, w1)(g2, w2) = (g1 g2, (w1 * g2) w2)``."""
    if a.z != b.z:
        raise ValueError("factors come from different splittings")
    lvl = _checked_level(graph, a.z)
    g2 = b.g1.word()
    g = lvl.sub.mul_word(lvl.sub.import_form(a.g1), g2)
    om = free_product(lvl.act_word(lvl.import_free(a.omega), g2), lvl.import_free(b.omega))
    return SemidirectElement(lvl.z, lvl.sub.export(g), lvl.export_free(om))


def normal_form(graph: CoxeterGraph, w: Word) -> CanonicalForm:
    lvl = _checked_level(graph)
    _check_letters(graph, w)
    return lvl.export(lvl.normalize(tuple(w)))


def canonical_word(graph: CoxeterGraph, w: Word) -> Word:
    lvl = _checked_level(graph)
    _check_letters(graph, w)
    return lvl.word(lvl.normalize(tuple(w)))


def is_trivial(graph: CoxeterGraph, w: Word) -> bool:
    lvl = _checked_level(graph)
    _check_letters(graph, w)
    return lvl.normalize(tuple(w)) == lvl.identity


def words_equal(graph: CoxeterGraph, w1: Word, w2: Word) -> bool:
    lvl = _checked_level(graph)
    _check_letters(graph, tuple(w1) + tuple(w2))
    return lvl.normalize(tuple(w1)) == lvl.normalize(tuple(w2))


def stage_rank(graph: CoxeterGraph, z: str) -> float:
    """Rank of the free kernel when splitting at ``z``.

    ``T = T0 Ker(pi_L)``.  ``Ker(pi_L)`` is trivial iff every other vertex
    lies in the link; ``T0`` is ``{1}`` without HNN letters, ``{x^j : j <
    k_x}`` for a single HNN letter commuting with all of ``L1``, and
    infinite otherwise.
    """
    dd = decompose_at(graph, z)
    if dd.gamma1.vertex_set != dd.link.vertex_set:
        return math.inf
    xs = dd.hnn_letters
    if not xs:
        return 1
    if len(xs) == 1 and dd.star_subgraphs[xs[0]].vertex_set == dd.L1.vertex_set:
        return dd.half_labels[xs[0]]
    return math.inf


def polyfree_tower(graph: CoxeterGraph) -> PolyfreeTower:
    require_even_fc(graph)
    stages = []
    g = graph
    while g.vertices:
        z = g.vertices[0]
        stages.append((z, stage_rank(g, z)))
        g = decompose_at(g, z).gamma1
    return PolyfreeTower(tuple(stages))
