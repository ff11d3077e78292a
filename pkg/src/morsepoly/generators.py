"""Seeded generators for random complexes and discrete Morse functions.

Both generators are pure functions of their arguments: the same seed and
parameters always produce the same output, so sweeps over seed ranges are
reproducible and failures can be replayed from the seed alone.

gen_morse builds a base function from a cover matching: matched pairs share
a value (the single allowed non-increase), unmatched covers strictly
increase.  Matched pairs are vertex-disjoint, so along any two consecutive
covers at least one step rises by a full unit while a matched step loses at
most one half; base functions therefore have no troubled elements.  To make
the normalization pipeline earn its keep, a seeded round of single-value
perturbations follows, each kept only if the function remains a valid
discrete Morse function; these create duplicated values and troubled
patterns while preserving validity.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from .complexes import ComplexSpec
from .errors import EmptyPoset
from .morse import MorseFunction, validate_morse
from .poset import ElementId, Poset


def gen_complex(seed: int, n_vertices: int, dimension: int, density: float) -> ComplexSpec:
    """Random simplicial complex given by random maximal simplices.

    ``density`` in [0, 1] scales how many candidate simplices (of size up to
    dimension+1) are drawn; density 0 yields the vertex-only complex.  Every
    vertex appears, isolated ones as singleton maximal simplices.
    """
    if n_vertices < 1:
        raise ValueError("n_vertices must be at least 1")
    if dimension < 0:
        raise ValueError("dimension must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    vertices = [str(i + 1) for i in range(n_vertices)]
    chosen: set[tuple[str, ...]] = set()
    size_cap = min(dimension + 1, n_vertices)
    if density > 0 and size_cap >= 2:
        draws = max(1, round(density * comb(n_vertices, size_cap)))
        for _ in range(draws):
            size = rng.randint(2, size_cap)
            chosen.add(tuple(sorted(rng.sample(vertices, size))))
    covered = {v for simplex in chosen for v in simplex}
    for v in vertices:
        if v not in covered:
            chosen.add((v,))
    maximal = tuple(sorted(chosen, key=lambda s: (len(s), s)))
    return ComplexSpec(kind="simplicial", maximal_simplices=maximal)


def _contracted_is_acyclic(poset: Poset, node: dict[ElementId, ElementId]) -> bool:
    """Cycle test on the cover digraph after merging matched pairs."""
    edges: dict[ElementId, set[ElementId]] = {}
    for u, v in poset.covers:
        nu, nv = node[u], node[v]
        if nu != nv:
            edges.setdefault(nu, set()).add(nv)
    state: dict[ElementId, int] = {}  # 1 = on stack, 2 = done

    def visit(n: ElementId) -> bool:
        state[n] = 1
        for m in edges.get(n, ()):
            mark = state.get(m)
            if mark == 1:
                return False
            if mark is None and not visit(m):
                return False
        state[n] = 2
        return True

    return all(state.get(n, 0) == 2 or visit(n) for n in sorted(set(node.values())))


def _sample_matching(poset: Poset, rng: random.Random) -> list[tuple[ElementId, ElementId]]:
    """Vertex-disjoint cover pairs whose contraction leaves the digraph acyclic."""
    covers = sorted(poset.covers)
    rng.shuffle(covers)
    node = {e: e for e in poset.elements}
    matching: list[tuple[ElementId, ElementId]] = []
    taken: set[ElementId] = set()
    for a, b in covers:
        if a in taken or b in taken:
            continue
        if rng.random() < 0.35:
            continue
        trial = dict(node)
        rep = min(a, b)
        trial[a] = trial[b] = rep
        if _contracted_is_acyclic(poset, trial):
            node = trial
            matching.append((a, b))
            taken.add(a)
            taken.add(b)
    return matching


def _base_values(
    poset: Poset,
    matching: list[tuple[ElementId, ElementId]],
    rng: random.Random,
) -> dict[ElementId, Fraction]:
    """Values from topological positions of the matched-pair contraction."""
    node = {e: e for e in poset.elements}
    for a, b in matching:
        rep = min(a, b)
        node[a] = node[b] = rep
    nodes = sorted(set(node.values()))
    edges: dict[ElementId, set[ElementId]] = {n: set() for n in nodes}
    indeg: dict[ElementId, int] = {n: 0 for n in nodes}
    for u, v in sorted(poset.covers):
        nu, nv = node[u], node[v]
        if nu != nv and nv not in edges[nu]:
            edges[nu].add(nv)
            indeg[nv] += 1
    ready = sorted(n for n in nodes if indeg[n] == 0)
    position: dict[ElementId, int] = {}
    counter = 0
    while ready:
        n = ready.pop(rng.randrange(len(ready)))
        position[n] = counter
        counter += 1
        for m in sorted(edges[n]):
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    values = {e: Fraction(position[node[e]]) for e in poset.elements}
    # Turn some matched equalities into strict decreases across the cover.
    for a, b in matching:
        if rng.random() < 0.5:
            values[a] += Fraction(1, 2)
    return values


def gen_morse(seed: int, poset: Poset) -> MorseFunction:
    """Random valid discrete Morse function on the poset, deterministic per seed."""
    if len(poset) == 0:
        raise EmptyPoset("cannot generate a function on an empty poset")
    rng = random.Random(seed)
    matching = _sample_matching(poset, rng)
    values = _base_values(poset, matching, rng)

    elements = sorted(poset.elements)
    n = len(elements)
    for _ in range(4 * n):
        e = rng.choice(elements)
        old = values[e]
        above = sorted(poset.strict_up_set(e))
        roll = rng.random()
        if roll < 0.4 and above:
            # Pull e's value up to (or past) something above it: this is what
            # seeds troubled patterns for the normalization sweeps to remove.
            target = values[rng.choice(above)] + rng.choice((Fraction(0), Fraction(1, 3)))
        elif roll < 0.7:
            target = values[rng.choice(elements)]
        else:
            target = Fraction(rng.randint(-n, 2 * n), rng.randint(1, 4))
        values[e] = target
        if not validate_morse(poset, MorseFunction(dict(values))).valid:
            values[e] = old

    result = MorseFunction(dict(values))
    if not validate_morse(poset, result).valid:
        raise AssertionError("generator produced an invalid function; implementation bug")
    return result
