"""Brute-force cross-checks that share no machinery with the splitter.

* :func:`bfs_trivial` searches relator rewrites for a path to the empty word.
* :func:`raag_normal_form` is the shuffle normal form of a right-angled group.
* :func:`exhaustive_equality` partitions every short word by the engine's
  normal form and checks the partition against both of the above.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .presentation import CoxeterGraph, validate
from .words import Letter, Word, free_reduce, format_word, inverse, relators

PROVEN_TRIVIAL = "proven-trivial"
INCONCLUSIVE = "inconclusive"
MAX_ORACLE_VERTICES = 3
MAX_ORACLE_BOUND = 6


@dataclass(frozen=True)
class BfsBudget:
    max_length: int
    max_depth: int = 8
    max_states: int = 2_000_000

    def __post_init__(self):
        if min(self.max_length, self.max_depth, self.max_states) <= 0:
            raise ValueError("budget limits must be positive")

    @classmethod
    def default_for(cls, w: Word) -> BfsBudget:
        return cls(max_length=2 * len(w) + 8)


def _rewrite_rules(graph: CoxeterGraph, code) -> dict[tuple, list[tuple]]:
    """``p -> q^-1`` for every cyclic rotation ``p q`` of every relator and its inverse."""
    rules: dict[tuple, set] = {}
    for r in relators(graph):
        for rel in (r, inverse(r)):
            enc = tuple(code[x] for x in rel)
            n = len(enc)
            for i in range(n):
                rho = enc[i:] + enc[:i]
                for j in range(1, n + 1):
                    p, q = rho[:j], rho[j:]
                    rules.setdefault(p, set()).add(tuple(-c for c in reversed(q)))
    return {p: sorted(qs) for p, qs in rules.items()}


def _reduce(w):
    out: list[int] = []
    for c in w:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def bfs_trivial(graph: CoxeterGraph, w: Word, budget: BfsBudget | None = None) -> str:
    """``PROVEN_TRIVIAL`` if rewriting reaches the empty word, else ``INCONCLUSIVE``.

    Never claims that a word is nontrivial.
    """
    validate(graph)
    budget = budget or BfsBudget.default_for(w)
    index = {v: i + 1 for i, v in enumerate(graph.vertices)}
    for letter in w:
        if letter.gen not in index:
            raise ValueError(f"unknown generator {letter.gen}")
    code = {}
    for v, i in index.items():
        code[Letter(v, 1)] = i
        code[Letter(v, -1)] = -i
    start = _reduce(code[x] for x in w)
    if not start:
        return PROVEN_TRIVIAL
    rules = _rewrite_rules(graph, code)
    lengths = sorted({len(p) for p in rules})
    seen = {start}
    frontier = deque([start])
    for _ in range(budget.max_depth):
        nxt: deque = deque()
        while frontier:
            cur = frontier.popleft()
            n = len(cur)
            for i in range(n):
                for ln in lengths:
                    if i + ln > n:
                        break
                    reps = rules.get(cur[i:i + ln])
                    if not reps:
                        continue
                    for q in reps:
                        new = _reduce(cur[:i] + q + cur[i + ln:])
                        if not new:
                            return PROVEN_TRIVIAL
                        if len(new) > budget.max_length or new in seen:
                            continue
                        seen.add(new)
                        if len(seen) >= budget.max_states:
                            return INCONCLUSIVE
                        nxt.append(new)
        if not nxt:
            break
        frontier = nxt
    return INCONCLUSIVE


def raag_normal_form(graph: CoxeterGraph, w: Word) -> Word:
    """Shuffle normal form for labels in ``{2, infinity}``.

    Cancels ``s^e .. s^-e`` pairs separated only by letters commuting with
    ``s``, then takes the lexicographically least commutation-equivalent
    word, letters ordered by vertex with ``s`` before ``s^-1``.
    """
    validate(graph)
    if any(m != 2 for _, _, m in graph.edges):
        raise ValueError("raag_normal_form needs every label to be 2 or infinity")
    order = {v: i for i, v in enumerate(graph.vertices)}
    for letter in w:
        if letter.gen not in order:
            raise ValueError(f"unknown generator {letter.gen}")

    def commute(a, b):
        return a == b or graph.label(a, b) == 2

    word = list(free_reduce(w))
    changed = True
    while changed:
        changed = False
        for i, x in enumerate(word):
            for j in range(i + 1, len(word)):
                y = word[j]
                if y.gen == x.gen and y.sign == -x.sign:
                    del word[j], word[i]
                    changed = True
                    break
                if not commute(x.gen, y.gen):
                    break
            if changed:
                break

    out = []
    while word:
        best = None
        for j, y in enumerate(word):
            if all(commute(y.gen, word[i].gen) and word[i].gen != y.gen for i in range(j)):
                rank = (order[y.gen], -y.sign)
                if best is None or rank < best[0]:
                    best = (rank, j)
        out.append(word.pop(best[1]))
    return tuple(out)


@dataclass
class EqualityReport:
    words: int = 0
    partition: dict = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    bfs_proved: int = 0
    bfs_soundness_checked: int = 0

    @property
    def classes(self) -> int:
        return len(self.partition)

    def blocks(self) -> set[frozenset]:
        return {frozenset(ws) for ws in self.partition.values()}


def all_words(graph: CoxeterGraph, length: int):
    letters = [Letter(v, e) for v in graph.vertices for e in (1, -1)]
    for n in range(length + 1):
        yield from itertools.product(letters, repeat=n)


def exhaustive_equality(graph: CoxeterGraph, length_bound: int,
                        soundness_length: int = 4, soundness_states: int = 200) -> EqualityReport:
    """Partition every word of length at most ``length_bound`` by normal form.

    Checks that the partition is a congruence within the bound, that every
    identity-class word is proven trivial by :func:`bfs_trivial`, and that
    a small-budget BFS never proves a reduced non-identity word of length
    at most ``soundness_length`` trivial.
    """
    from .splitter import canonical_word

    validate(graph)
    if len(graph) > MAX_ORACLE_VERTICES:
        raise ValueError(f"exhaustive_equality takes at most {MAX_ORACLE_VERTICES} vertices")
    if not 0 <= length_bound <= MAX_ORACLE_BOUND:
        raise ValueError(f"length bound must lie in 0..{MAX_ORACLE_BOUND}")
    report = EqualityReport()
    cls: dict[Word, Word] = {}
    for w in all_words(graph, length_bound):
        key = canonical_word(graph, w)
        cls[w] = key
        report.partition.setdefault(key, []).append(w)
    report.words = len(cls)
    identity = canonical_word(graph, ())
    letters = [Letter(v, e) for v in graph.vertices for e in (1, -1)]
    right: dict = {}
    left: dict = {}
    for w, key in cls.items():
        if len(w) >= length_bound:
            continue
        for s in letters:
            for table, prod, side in ((right, w + (s,), "right"), (left, (s,) + w, "left")):
                got = cls[prod]
                want = table.setdefault((key, s), got)
                if got != want:
                    report.violations.append(
                        f"{side} multiplication by {s} splits the class of {format_word(w)}")
    for w in report.partition.get(identity, []):
        if free_reduce(w) and w == free_reduce(w):
            if bfs_trivial(graph, w) != PROVEN_TRIVIAL:
                report.violations.append(f"bfs could not prove {format_word(w)} trivial")
            else:
                report.bfs_proved += 1
    for w, key in cls.items():
        if key != identity and len(w) <= soundness_length and w == free_reduce(w):
            budget = BfsBudget(max_length=2 * len(w) + 8, max_states=soundness_states)
            report.bfs_soundness_checked += 1
            if bfs_trivial(graph, w, budget) == PROVEN_TRIVIAL:
                report.violations.append(f"bfs proved non-identity word {format_word(w)} trivial")
    return report
