"""Normal forms in the link group ``A_L`` and the transversal ``T0``.

``A_L`` is an HNN extension of ``A_L1`` by the letters ``x_1 .. x_n`` of
``L - L1``; ``x_i`` commutes with the parabolic subgroup on ``S_i``.  A
normal form is ``w0 x^e w1 ... x^e wm`` where each ``w_j`` (``j >= 1``) is
killed by the retraction onto ``S`` of the letter before it.  Segments are
canonical words of ``A_L1`` as produced by :mod:`evenartin.splitter`.

``T0`` is the set of elements whose normal form has ``w0 = 1``, starts with
a positive HNN letter, and does not open with ``k_x`` copies of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

from . import britton
from .britton import BrittonForm, HnnInstance, StableLetter
from .presentation import DecompositionData
from .words import Letter, Word, format_word, inverse, retract


@dataclass(frozen=True)
class ALNormalForm:
    head: Word
    tail: tuple[tuple[str, int, Word], ...] = ()

    def word(self) -> Word:
        out = list(self.head)
        for x, e, w in self.tail:
            out.append(Letter(x, e))
            out.extend(w)
        return tuple(out)

    def __len__(self):
        return len(self.word())

    def __str__(self):
        return format_word(self.word())

    @classmethod
    def from_word(cls, w: Word, hnn_letters) -> ALNormalForm:
        """Cut a flat word at its HNN letters (no normalization)."""
        hnn = set(hnn_letters)
        head: list[Letter] = []
        tail: list[tuple[str, int, list]] = []
        for letter in w:
            if letter.gen in hnn:
                tail.append((letter.gen, letter.sign, []))
            elif tail:
                tail[-1][2].append(letter)
            else:
                head.append(letter)
        return cls(tuple(head), tuple((x, e, tuple(s)) for x, e, s in tail))


class ALGroup:
    """Interned normal forms of ``A_L`` over a base engine for ``A_L1``.

    Elements are small integers; ``0`` is the identity.  ``base`` must offer
    ``identity``, ``mul_word``, ``lmul_word``, ``word`` and ``normalize``.
    """

    def __init__(self, dd: DecompositionData, base):
        self.dd = dd
        self.base = base
        self.hnn = dd.hnn_letters
        self.k = dd.half_labels
        self.stars = {x: dd.star_subgraphs[x].vertex_set for x in self.hnn}
        self.instance = HnnInstance(
            identity=base.identity,
            multiply=base.mul_word,
            base_generators=dd.L1.vertex_set,
            stable={x: StableLetter(partial(self._split, x)) for x in self.hnn},
            to_word=base.word,
        )
        self._forms: list[BrittonForm] = []
        self._ids: dict[BrittonForm, int] = {}
        self._mul: dict = {}
        self._words: dict[int, Word] = {}
        self._splits: dict = {}
        self.action_cache: dict = {}
        self.identity = self.intern(britton.identity_form(self.instance))
        self.letters = frozenset(dd.link.vertices)

    def intern(self, form: BrittonForm) -> int:
        i = self._ids.get(form)
        if i is None:
            i = self._ids[form] = len(self._forms)
            self._forms.append(form)
        return i

    def form(self, f: int) -> BrittonForm:
        return self._forms[f]

    def _split(self, x, g, sign):
        key = (x, g)
        hit = self._splits.get(key)
        if hit is None:
            base = self.base
            a = base.normalize(retract(None, self.stars[x], base.word(g)))
            if a == base.identity:
                hit = ((), g)
            else:
                aw = base.word(a)
                hit = (aw, base.lmul_word(inverse(aw), g))
            self._splits[key] = hit
        return hit

    def mul(self, f: int, letter: Letter) -> int:
        key = (f, letter)
        out = self._mul.get(key)
        if out is None:
            if letter.gen not in self.letters:
                raise ValueError(f"letter {letter.gen} is not a vertex of the link")
            out = self.intern(britton.append(self.instance, self._forms[f], letter))
            self._mul[key] = out
        return out

    def mul_word(self, f: int, w: Word) -> int:
        for letter in w:
            f = self.mul(f, letter)
        return f

    def normalize(self, w: Word) -> int:
        return self.mul_word(self.identity, w)

    def word(self, f: int) -> Word:
        w = self._words.get(f)
        if w is None:
            w = self._words[f] = britton.form_word(self.instance, self._forms[f])
        return w

    def power(self, x: str, j: int) -> int:
        return self.normalize((Letter(x, 1),) * j)

    # -- T0 ---------------------------------------------------------------

    def strip_head(self, f: int) -> int:
        form = self._forms[f]
        if form.head == self.base.identity:
            return f
        return self.intern(BrittonForm(self.base.identity, form.tail))

    def leading_run(self, f: int) -> int:
        tail = self._forms[f].tail
        if not tail:
            return 0
        x = tail[0][0]
        n = 0
        for t, e, w in tail:
            if t != x or e != 1:
                break
            n += 1
            if w != self.base.identity:
                break
        return n

    def in_T0(self, f: int) -> bool:
        form = self._forms[f]
        if form.head != self.base.identity:
            return False
        if not form.tail:
            return True
        x, e, _ = form.tail[0]
        return e == 1 and self.leading_run(f) < self.k[x]

    def u(self, f: int) -> int | None:
        """T0 part of an element of ``A_L1 T0``, or ``None`` outside it."""
        h = self.strip_head(f)
        return h if self.in_T0(h) else None

    def supp(self, f: int) -> frozenset[str]:
        return frozenset(t for t, _, _ in self._forms[f].tail)

    # -- conversion ---------------------------------------------------------

    def export(self, f: int) -> ALNormalForm:
        form = self._forms[f]
        w = self.base.word
        return ALNormalForm(w(form.head), tuple((x, e, w(s)) for x, e, s in form.tail))

    def import_form(self, nf: ALNormalForm) -> int:
        f = self.normalize(nf.word())
        if self.export(f) != nf:
            raise ValueError(f"{nf} is not an A_L normal form")
        return f


def _al(dd: DecompositionData) -> ALGroup:
    from .splitter import level

    return level(dd.graph, dd.z).al


def normalize_AL(dd: DecompositionData, w: Word) -> ALNormalForm:
    al = _al(dd)
    return al.export(al.normalize(tuple(w)))


def normalize_AL_tower(dd: DecompositionData, w: Word) -> ALNormalForm:
    """Same normal form, built as ``n`` nested single-letter HNN extensions.

    Level ``i`` has base ``A_{X_(i-1)}`` whose elements are the level
    ``i - 1`` forms; the transversal for ``x_i`` is read off the head
    segment only.  Kept independent of :class:`ALGroup` for cross-checks.
    """
    base = _al(dd).base
    for letter in w:
        if letter.gen not in dd.link.vertex_set:
            raise ValueError(f"letter {letter.gen} is not a vertex of the link")
    identity, multiply, to_word = base.identity, base.mul_word, base.word
    generators = set(dd.L1.vertex_set)
    for x in dd.hnn_letters:
        star = dd.star_subgraphs[x].vertex_set

        def split(g, sign, star=star):
            a = base.normalize(retract(None, star, base.word(_innermost(g))))
            if a == base.identity:
                return (), g
            aw = base.word(a)
            return aw, _replace_innermost(g, base.lmul_word(inverse(aw), _innermost(g)))

        inst = HnnInstance(identity, multiply, frozenset(generators), {x: StableLetter(split)}, to_word)
        generators.add(x)
        identity = britton.identity_form(inst)
        multiply = partial(_fold_append, inst)
        to_word = partial(britton.form_word, inst)
    return ALNormalForm.from_word(to_word(multiply(identity, tuple(w))), dd.hnn_letters)


def _fold_append(inst, g, w):
    for letter in w:
        g = britton.append(inst, g, letter)
    return g


def _innermost(g):
    while isinstance(g, BrittonForm):
        g = g.head
    return g


def _replace_innermost(g, new):
    if isinstance(g, BrittonForm):
        return BrittonForm(_replace_innermost(g.head, new), g.tail)
    return new


def in_T0(dd: DecompositionData, f: ALNormalForm) -> bool:
    al = _al(dd)
    return al.in_T0(al.import_form(f))


def split_L1_T0(dd: DecompositionData, f: ALNormalForm) -> tuple[Word, ALNormalForm] | None:
    """``(g, h)`` with ``f = g h``, ``g`` in ``A_L1`` and ``h`` in ``T0``; ``None`` if no such split."""
    al = _al(dd)
    h = al.u(al.import_form(f))
    if h is None:
        return None
    return f.head, al.export(h)


def u_of(dd: DecompositionData, f: ALNormalForm) -> ALNormalForm:
    got = split_L1_T0(dd, f)
    if got is None:
        raise ValueError(f"{f} is not in A_L1 T0")
    return got[1]


def supp(h: ALNormalForm) -> frozenset[str]:
    return frozenset(x for x, _, _ in h.tail)


def right_multiply(dd: DecompositionData, h: ALNormalForm, s: Letter) -> tuple[int, ALNormalForm | None]:
    """Case analysis for ``h s^e`` with ``h`` in ``T0``.

    Returns ``(case, u)``: case 1 gives the conjugate ``s^-e h s^e``, case 4
    gives ``h s^e``, cases 2 and 3 leave ``A_L1 T0`` and give ``None``.
    """
    gen, e = s
    if gen in dd.L1.vertex_set:
        if all(gen in dd.star_subgraphs[x].vertex_set for x in supp(h)):
            return 1, normalize_AL(dd, (s.inv(),) + h.word() + (s,))
        return 4, normalize_AL(dd, h.word() + (s,))
    if gen not in dd.link.vertex_set:
        raise ValueError(f"{gen} is not a vertex of the link")
    k = dd.half_labels[gen]
    if e == 1 and h == ALNormalForm((), ((gen, 1, ()),) * (k - 1)):
        return 2, None
    if e == -1 and h == ALNormalForm(()):
        return 3, None
    return 4, normalize_AL(dd, h.word() + (s,))
