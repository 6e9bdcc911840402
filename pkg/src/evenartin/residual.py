"""Amalgam splittings and finite-quotient witnesses.

When ``m(s, t) = infinity`` the group is the amalgam of the parabolics on
``S - {s}`` and ``S - {t}`` over ``S - {s, t}``, and both factors retract
onto the common one.  :func:`separate` produces, for one nontrivial element,
a homomorphism to a finite group that does not kill it.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass

from .presentation import CoxeterGraph, full_subgraph, require_even_fc, validate
from .splitter import is_trivial
from .words import Letter, Word, exponent_sums, free_reduce, inverse, relators, retract

NOT_FOUND = "not-found"
TRIVIAL_INPUT = "trivial-input"
DEFAULT_DEGREE_CAP = 7


@dataclass(frozen=True)
class AmalgamSplit:
    s: str
    t: str
    X: frozenset[str]
    Y: frozenset[str]
    Z: frozenset[str]


def amalgam_split(graph: CoxeterGraph) -> AmalgamSplit | None:
    """Split at the least unlinked pair; ``None`` for a complete graph."""
    validate(graph)
    for s, t in itertools.combinations(graph.vertices, 2):
        if not graph.linked(s, t):
            S = graph.vertex_set
            return AmalgamSplit(s, t, S - {s}, S - {t}, S - {s, t})
    return None


def _random_word(rng, gens, length):
    return tuple(Letter(rng.choice(gens), rng.choice((1, -1))) for _ in range(length))


def check_split_retractions(graph: CoxeterGraph, split: AmalgamSplit, samples: int = 100,
                            seed: int = 0, max_length: int = 10) -> bool:
    """Sample-check that both factors retract onto the common parabolic.

    Raises ``AssertionError`` naming the first violating sample.
    """
    require_even_fc(graph)
    if graph.linked(split.s, split.t) or split.X & split.Y != split.Z or split.X | split.Y != graph.vertex_set:
        raise ValueError("not an amalgam splitting of this graph")
    rng = random.Random(seed)
    gz = full_subgraph(graph, split.Z)
    zgens = sorted(split.Z)
    for side in (split.X, split.Y):
        gside = full_subgraph(graph, side)
        for r in relators(gside):
            if not is_trivial(gz, retract(graph, split.Z, r)):
                raise AssertionError(f"relator {r} does not retract to the identity")
        gens = sorted(side)
        for _ in range(samples):
            if zgens:
                wz = _random_word(rng, zgens, rng.randint(0, max_length))
                if retract(graph, split.Z, wz) != free_reduce(wz):
                    raise AssertionError(f"Z-word {wz} is moved by the retraction")
            w = _random_word(rng, gens, rng.randint(0, max_length))
            p = retract(graph, split.Z, w)
            if retract(graph, split.Z, p) != p:
                raise AssertionError(f"retraction is not idempotent on {w}")
            kernel_part = w + inverse(p)
            if not is_trivial(gz, retract(graph, split.Z, kernel_part)):
                raise AssertionError(f"{w} does not factor as kernel times A_Z")
    return True


# -- finite witnesses ------------------------------------------------------

@dataclass(frozen=True)
class FiniteWitness:
    """``kind`` is ``"Z"`` (cyclic of ``order``) or ``"S"`` (symmetric of degree ``order``).

    Cyclic images are residues; permutation images are tuples ``p`` with
    ``i -> p[i]``, composed left to right.
    """

    kind: str
    order: int
    assignment: tuple[tuple[str, object], ...]
    image: object

    @property
    def target(self) -> str:
        return f"Z/{self.order}" if self.kind == "Z" else f"S{self.order}"

    def _fmt(self, v) -> str:
        return str(v) if self.kind == "Z" else cycle_notation(v)

    def __str__(self):
        lines = [f"target: {self.target}"]
        lines += [f"gen {g} -> {self._fmt(v)}" for g, v in self.assignment]
        lines.append(f"image -> {self._fmt(self.image)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "assignment": {g: self._fmt(v) for g, v in self.assignment},
            "image": self._fmt(self.image),
        }


def cycle_notation(p: tuple[int, ...]) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


def _compose(p, q):
    return tuple(q[i] for i in p)


def _invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _evaluate(w: Word, images: dict, d: int):
    inv = {g: _invert(p) for g, p in images.items()}
    acc = tuple(range(d))
    for g, e in w:
        acc = _compose(acc, images[g] if e == 1 else inv[g])
    return acc


def _relation_holds(p, q, k):
    pq = _compose(p, q)
    qp = _compose(q, p)
    a, b = pq, qp
    for _ in range(k - 1):
        a = _compose(a, pq)
        b = _compose(b, qp)
    return a == b


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _class_representative(parts, d):
    p = list(range(d))
    start = 0
    for size in parts:
        for i in range(size):
            p[start + i] = start + (i + 1) % size
        start += size
    return tuple(p)


def degree_cap() -> int:
    return int(os.environ.get("ARTIN_MAX_DEGREE", DEFAULT_DEGREE_CAP))


def separate(graph: CoxeterGraph, w: Word, max_degree: int = 5):
    """A finite quotient in which ``w`` survives.

    Returns a :class:`FiniteWitness`, :data:`TRIVIAL_INPUT` when ``w`` is the
    identity, or :data:`NOT_FOUND` when no permutation representation of
    degree at most ``max_degree`` separates it.
    """
    require_even_fc(graph)
    if max_degree > degree_cap():
        raise ValueError(f"max degree {max_degree} exceeds the configured cap {degree_cap()}")
    w = tuple(w)
    if is_trivial(graph, w):
        return TRIVIAL_INPUT
    sums = exponent_sums(w)
    for g in graph.vertices:
        e = sums.get(g, 0)
        if e:
            n = abs(e) + 1
            assignment = tuple((v, 1 if v == g else 0) for v in graph.vertices)
            return FiniteWitness("Z", n, assignment, e % n)
    # generators outside the support go to the identity (retraction onto the support)
    support = [v for v in graph.vertices if v in sums]
    for d in range(2, max_degree + 1):
        found = _search_degree(graph, w, support, d)
        if found is not None:
            assignment = tuple((v, found.get(v, tuple(range(d)))) for v in graph.vertices)
            return FiniteWitness("S", d, assignment, _evaluate(w, found, d))
    return NOT_FOUND


def _search_degree(graph, w, support, d):
    perms = list(itertools.permutations(range(d)))
    ident = tuple(range(d))
    # one representative per cycle type, fewest moved points first
    firsts = [_class_representative(parts, d) for parts in reversed(list(_partitions(d)))]
    images: dict[str, tuple] = {}

    def constraints_ok(g):
        p = images[g]
        for h, q in images.items():
            if h == g:
                continue
            m = graph.label(g, h)
            if m is not None and not _relation_holds(p, q, m // 2):
                return False
        return True

    def extend(i):
        if i == len(support):
            return dict(images) if _evaluate(w, images, d) != ident else None
        g = support[i]
        for p in firsts if i == 0 else perms:
            images[g] = p
            if constraints_ok(g):
                hit = extend(i + 1)
                if hit is not None:
                    return hit
            del images[g]
        return None

    return extend(0)


def verify_witness(graph: CoxeterGraph, w: Word, witness: FiniteWitness) -> bool:
    """Every defining relation holds in the target and ``w`` maps off the identity."""
    images = dict(witness.assignment)
    if witness.kind == "Z":
        n = witness.order

        def ev(word):
            return sum(images[g] * e for g, e in word) % n

        return all(ev(r) == 0 for r in relators(graph)) and ev(w) == witness.image != 0
    d = witness.order
    ident = tuple(range(d))
    ok = all(_evaluate(r, images, d) == ident for r in relators(graph))
    img = _evaluate(w, images, d)
    return ok and img == witness.image and img != ident
