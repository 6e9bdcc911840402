"""The free group ``F`` on ``{b_h : h in T}`` and the right action of ``A_1``.

``T = T0 * Ker(pi_L)``, so a basis element is keyed by a pair ``(h0, u)``.
Only keys that actually occur are ever built.  Inside the engine a free
word is a tuple of ``(key_id, sign)``; at the public surface it is a tuple
of ``(BasisKey, sign)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coset_forms import ALGroup, ALNormalForm
from .presentation import DecompositionData
from .words import Letter, Word, format_word


@dataclass(frozen=True)
class BasisKey:
    """``h0`` in ``T0`` and ``u`` in ``Ker(pi_L)``, the latter as its canonical word."""

    h0: ALNormalForm = ALNormalForm(())
    u: Word = ()

    def word(self) -> Word:
        return self.h0.word() + tuple(self.u)

    def __str__(self):
        return f"b[{self.h0}|{format_word(self.u)}]"


FreeWord = tuple  # tuple[tuple[key, int], ...]


def free_inverse(w: FreeWord) -> FreeWord:
    return tuple((k, -e) for k, e in reversed(w))


def free_product(*parts: FreeWord) -> FreeWord:
    stack: list = []
    for part in parts:
        for k, e in part:
            if stack and stack[-1][0] == k and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((k, e))
    return tuple(stack)


def format_free(w: FreeWord) -> str:
    return " ".join(f"{k}^{e}" for k, e in w) if w else "1"


def t0_action(al: ALGroup, h: int, letter: Letter) -> FreeWord:
    """``b_h * s^e`` for ``h`` in ``T0``, as a free word over ``T0`` ids.

    Generic case: the single basis element keyed by ``u(h s^e)``.  The two
    exceptional shapes ``x^(k-1) * x`` and ``1 * x^-1`` leave ``A_L1 T0``
    and map to conjugating products of length ``2k - 1``.
    """
    cache = al.action_cache
    key = (h, letter)
    out = cache.get(key)
    if out is not None:
        return out
    u = al.u(al.mul(h, letter))
    if u is not None:
        out = ((u, 1),)
    else:
        x, e = letter
        k = al.k.get(x, 1)
        pw = [al.power(x, j) for j in range(k)]
        if x in al.hnn and e == 1 and h == pw[k - 1]:
            out = (tuple((pw[j], 1) for j in range(k - 1, 0, -1)) + ((pw[0], 1),)
                   + tuple((pw[j], -1) for j in range(1, k)))
        elif x in al.hnn and e == -1 and h == al.identity:
            out = (((pw[0], -1),) + tuple((pw[j], -1) for j in range(1, k - 1)) + ((pw[k - 1], 1),)
                   + tuple((pw[j], 1) for j in range(k - 2, 0, -1)) + ((pw[0], 1),))
        else:
            raise AssertionError(f"h s^e left A_L1 T0 outside the exceptional cases (s = {letter})")
    cache[key] = out
    return out


# -- public surface ------------------------------------------------------------

def _level(dd: DecompositionData):
    from .splitter import level

    return level(dd.graph, dd.z)


def dot_u(dd: DecompositionData, omega: FreeWord, u: Word) -> FreeWord:
    """``omega . u``: right-multiply the ``Ker(pi_L)`` part of every key by ``u``."""
    lvl = _level(dd)
    uid = lvl.sub.normalize(tuple(u))
    if not lvl.in_kernel(uid):
        raise ValueError(f"{format_word(u)} is not in the kernel of the retraction onto the link")
    uw = lvl.sub.word(uid)
    out = []
    for k, e in omega:
        out.append((BasisKey(k.h0, lvl.sub.word(lvl.sub.normalize(tuple(k.u) + uw))), e))
    return free_product(tuple(out))


def act_T0_generator(dd: DecompositionData, h: ALNormalForm, s: Letter) -> FreeWord:
    lvl = _level(dd)
    hid = lvl.al.import_form(h)
    if not lvl.al.in_T0(hid):
        raise ValueError(f"{h} is not in T0")
    return tuple((BasisKey(lvl.al.export(g)), e) for g, e in t0_action(lvl.al, hid, s))


def act_generator(dd: DecompositionData, key: BasisKey, s: Letter) -> FreeWord:
    lvl = _level(dd)
    return lvl.export_free(lvl.act(((lvl.import_key(key), 1),), s))


def act(dd: DecompositionData, omega: FreeWord, g: Word) -> FreeWord:
    lvl = _level(dd)
    return lvl.export_free(lvl.act_word(lvl.import_free(omega), tuple(g)))
