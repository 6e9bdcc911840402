"""Words over signed generators.

A word is a plain tuple of :class:`Letter`.  Nothing is reduced implicitly.
Conjugation is ``b^a = a^-1 b a`` everywhere in this package.
"""

from __future__ import annotations

import re
from itertools import groupby
from typing import Iterable, NamedTuple

from .presentation import CoxeterGraph


class Letter(NamedTuple):
    gen: str
    sign: int = 1

    def inv(self) -> Letter:
        return Letter(self.gen, -self.sign)

    def __str__(self):
        return self.gen if self.sign == 1 else f"{self.gen}^-1"


Word = tuple  # tuple[Letter, ...]

_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?[0-9]+))?\Z")


class WordParseError(ValueError):
    def __init__(self, message, column):
        self.column = column
        super().__init__(f"column {column}: {message}")


def parse_word(text: str) -> Word:
    """Parse ``a b^-1 c^3``; ``1`` and the empty string denote the identity."""
    out: list[Letter] = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if tok == "1":
            continue
        t = _TOKEN.match(tok)
        if not t:
            raise WordParseError(f"bad token {tok!r}", m.start() + 1)
        exp = int(t.group(2)) if t.group(2) is not None else 1
        if exp == 0:
            raise WordParseError(f"zero exponent in {tok!r}", m.start() + 1)
        sign = 1 if exp > 0 else -1
        out.extend([Letter(t.group(1), sign)] * abs(exp))
    return tuple(out)


def format_word(w: Iterable[Letter]) -> str:
    parts = []
    for letter, run in groupby(w):
        n = len(list(run)) * letter.sign
        parts.append(letter.gen if n == 1 else f"{letter.gen}^{n}")
    return " ".join(parts) if parts else "1"


def inverse(w: Word) -> Word:
    return tuple(Letter(g, -e) for g, e in reversed(w))


def free_reduce(w: Iterable[Letter]) -> Word:
    stack: list[Letter] = []
    for letter in w:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def exponent_sums(w: Word) -> dict[str, int]:
    out: dict[str, int] = {}
    for g, e in w:
        out[g] = out.get(g, 0) + e
    return out


def pi_word(m: int, s: str, t: str) -> Word:
    """The alternating word ``s t s t ...`` of even length ``m``."""
    if m < 2 or m % 2:
        raise ValueError(f"label must be even and >= 2, got {m}")
    if s == t:
        raise ValueError("pi_word needs two distinct letters")
    return (Letter(s), Letter(t)) * (m // 2)


def artin_relator(graph: CoxeterGraph, s: str, t: str) -> Word:
    m = graph.label(s, t)
    if m is None:
        raise ValueError(f"{s} and {t} are not linked")
    return free_reduce(pi_word(m, s, t) + inverse(pi_word(m, t, s)))


def relators(graph: CoxeterGraph) -> list[Word]:
    return [artin_relator(graph, s, t) for s, t, _ in graph.edges]


def retract(graph: CoxeterGraph | None, keep: Iterable[str], w: Word) -> Word:
    """Delete letters outside ``keep`` and freely reduce.

    For even graphs this realizes the retraction onto the parabolic subgroup
    on ``keep``; the graph argument only documents the ambient group.
    """
    keep = frozenset(keep)
    return free_reduce(letter for letter in w if letter.gen in keep)


def conj_identity(k: int, side: str) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
    """Both sides of the conjugate form of ``(ts)^k = (st)^k``.

    A pair ``(i, e)`` stands for ``(t^(s^i))^e``.  ``side="negative"`` gives
    the expansion of ``t^(s^-1)``, ``side="power"`` that of ``t^(s^k)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if side == "negative":
        rhs = ([(0, -1)] + [(i, -1) for i in range(1, k - 1)] + [(k - 1, 1)]
               + [(i, 1) for i in range(k - 2, 0, -1)] + [(0, 1)])
        return ((-1, 1),), tuple(rhs)
    if side == "power":
        rhs = ([(i, 1) for i in range(k - 1, 0, -1)] + [(0, 1)]
               + [(i, -1) for i in range(1, k)])
        return ((k, 1),), tuple(rhs)
    raise ValueError(f"side must be 'negative' or 'power', got {side!r}")


def expand_conjugates(pattern, s: str, t: str) -> Word:
    """Substitute ``t^(s^i) -> s^-i t s^i`` into a pattern from :func:`conj_identity`."""
    out: list[Letter] = []
    for i, e in pattern:
        a = (Letter(s, 1 if i > 0 else -1),) * abs(i)
        out.extend(inverse(a) + (Letter(t, e),) + a)
    return free_reduce(out)
