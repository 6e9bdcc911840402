"""Normal forms in HNN extensions.

The engine is generic over the base group: it only sees base elements
through the oracles of an :class:`HnnInstance`.  Several stable letters over
one base are allowed (a multiple HNN extension), which covers the single
stable letter case and the tower ``A_L1 *_{S_1} ... *_{S_n}`` in one pass.

Coset convention: a base element ``g`` sitting right after ``t^e`` is split
as ``g = a * r`` with ``a`` in the associated subgroup and ``r`` in the
transversal.  ``a`` is then pushed left across ``t^e``, using
``t a = phi^-1(a) t`` and ``t^-1 a = phi(a) t^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Mapping, NamedTuple

from .words import Letter, Word, format_word


class StableLetter(NamedTuple):
    """Oracles attached to one stable letter ``t``.

    ``split(g, sign)`` returns ``(a_word, r)`` with ``g = a * r``; ``a_word``
    is a word over base letters for the subgroup part (associated to ``t``
    when ``sign == -1``, to ``phi(A)`` when ``sign == +1``).  ``phi(a_word,
    sign)`` rewrites it for the other side of ``t^sign``; ``None`` means
    the identity isomorphism.
    """

    split: Callable[[Any, int], tuple[Word, Any]]
    phi: Callable[[Word, int], Word] | None = None


@dataclass(frozen=True)
class HnnInstance:
    identity: Hashable
    multiply: Callable[[Any, Word], Any]
    base_generators: frozenset[str]
    stable: Mapping[str, StableLetter] = field(default_factory=dict)
    to_word: Callable[[Any], Word] | None = None

    def normalize_base(self, w: Word):
        return self.multiply(self.identity, w)

    def in_subgroup(self, t: str, sign: int, g) -> bool:
        return self.stable[t].split(g, sign)[1] == self.identity


class BrittonForm(NamedTuple):
    """``head t_1^e_1 w_1 ... t_m^e_m w_m`` stored as ``(head, ((t, e, w), ...))``."""

    head: Any
    tail: tuple = ()

    def stable_letters(self):
        return tuple(Letter(t, e) for t, e, _ in self.tail)


def identity_form(inst: HnnInstance) -> BrittonForm:
    return BrittonForm(inst.identity, ())


def append(inst: HnnInstance, form: BrittonForm, letter: Letter) -> BrittonForm:
    """Right-multiply a normal form by one letter."""
    gen, sign = letter
    tail = list(form.tail)
    if gen in inst.stable:
        if tail:
            t, e, w = tail[-1]
            if t == gen and e == -sign and w == inst.identity:
                tail.pop()
                return BrittonForm(form.head, tuple(tail))
        tail.append((gen, sign, inst.identity))
        return BrittonForm(form.head, tuple(tail))
    if gen not in inst.base_generators:
        raise ValueError(f"letter {gen} is neither a base generator nor a stable letter")
    if not tail:
        return BrittonForm(inst.multiply(form.head, (letter,)), ())
    push: Word = (letter,)
    head = form.head
    j = len(tail) - 1
    while push:
        t, e, w = tail[j]
        a, r = inst.stable[t].split(inst.multiply(w, push), e)
        tail[j] = (t, e, r)
        phi = inst.stable[t].phi
        push = phi(a, e) if (phi and a) else a
        j -= 1
        if j < 0:
            if push:
                head = inst.multiply(head, push)
            break
    return BrittonForm(head, tuple(tail))


def britton_normalize(inst: HnnInstance, w: Word) -> BrittonForm:
    form = identity_form(inst)
    for letter in w:
        form = append(inst, form, letter)
    return form


def form_word(inst: HnnInstance, form: BrittonForm) -> Word:
    if inst.to_word is None:
        raise ValueError("instance has no to_word oracle")
    out = list(inst.to_word(form.head))
    for t, e, w in form.tail:
        out.append(Letter(t, e))
        out.extend(inst.to_word(w))
    return tuple(out)


def format_form(inst: HnnInstance, form: BrittonForm) -> str:
    return format_word(form_word(inst, form))


def check_form(inst: HnnInstance, form: BrittonForm) -> None:
    """Assert the transversal and no-pinch conditions."""
    prev = None
    for t, e, w in form.tail:
        a, r = inst.stable[t].split(w, e)
        if a or r != w:
            raise AssertionError(f"segment after {t}^{e} is not a transversal element")
        if prev is not None and prev[0] == t and prev[1] == -e and prev[2] == inst.identity:
            raise AssertionError(f"pinch {t}^{-e} {t}^{e}")
        prev = (t, e, w)
