"""Shared fixtures: the small named posets used throughout the suite."""

from __future__ import annotations

import pytest

from morsepoly import (
    CellSpec,
    ComplexSpec,
    MorseFunction,
    build_poset,
    face_poset_cellular,
    face_poset_simplicial,
)


@pytest.fixture
def edge_poset():
    """One abstract edge: two vertices a, b under a top cell e."""
    return build_poset(["a", "b", "e"], [("a", "e"), ("b", "e")])


@pytest.fixture
def chain_poset():
    """The total order 0 < 1 < 2 (not 2-wide)."""
    return build_poset(["0", "1", "2"], [("0", "1"), ("1", "2")])


@pytest.fixture
def chain_morse():
    """f(x) = 2 - x on the chain poset: valid but violating exclusivity."""
    return MorseFunction.from_values({"0": 2, "1": 1, "2": 0})


@pytest.fixture
def triangle():
    """Face poset of a solid triangle: 3 vertices, 3 edges, 1 face."""
    return face_poset_simplicial(
        ComplexSpec(kind="simplicial", maximal_simplices=(("1", "2", "3"),))
    )


@pytest.fixture
def segment():
    """Face poset of a single segment {1, 2}."""
    return face_poset_simplicial(
        ComplexSpec(kind="simplicial", maximal_simplices=(("1", "2"),))
    )


def build_two_cycles_spec() -> ComplexSpec:
    """A 2-cell m whose declared boundary is two disjoint 4-cycles.

    The resulting poset passes all three structural checks, yet it is not the
    face poset of a regular cell complex: the order complex of m's strict
    boundary is disconnected, not a sphere.
    """
    cells = []
    for c in (1, 2):
        for i in range(4):
            cells.append(CellSpec(id=f"v{c}{i}", dim=0, boundary=()))
        for i in range(4):
            cells.append(
                CellSpec(id=f"e{c}{i}", dim=1, boundary=(f"v{c}{i}", f"v{c}{(i + 1) % 4}"))
            )
    boundary = tuple(f"e{c}{i}" for c in (1, 2) for i in range(4)) + tuple(
        f"v{c}{i}" for c in (1, 2) for i in range(4)
    )
    cells.append(CellSpec(id="m", dim=2, boundary=boundary))
    return ComplexSpec(kind="cellular", cells=tuple(cells))


@pytest.fixture
def two_cycles():
    return face_poset_cellular(build_two_cycles_spec())


@pytest.fixture
def parity_conflict_poset():
    """c receives parity 1 via a and 0 via d, so no parity rank exists."""
    return build_poset(["a", "b", "c", "d"], [("a", "c"), ("b", "d"), ("d", "c")])


@pytest.fixture
def double_edge_poset():
    """a under two middles x, x2 under one top y (2-wide, not a face poset)."""
    return build_poset(
        ["a", "x", "x2", "y"],
        [("a", "x"), ("a", "x2"), ("x", "y"), ("x2", "y")],
    )
