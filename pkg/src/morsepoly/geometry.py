"""Exact rational embedding of the order complex, and the geometric index.

The order complex of a k-element poset is realized in k-dimensional space by
a single-pass construction: with elements p1..pk in identifier order, the
last element sits at g(pk) on the first axis, and every other pi sits at
g(pi) on the first axis plus the (i+1)-th standard basis vector.  The
difference vectors then carry distinct basis directions, so the k points are
affinely independent and span a (k-1)-simplex, while the first coordinate of
every vertex equals its function value exactly.

Projection onto the first coordinate axis is the fixed height function.  The
geometric index of a vertex counts, with sign (-1)^dimension, the simplices
of its closed star whose projection is maximal at that vertex.  Because the
first coordinates reproduce g, this is an independent re-computation of the
combinatorial chain-sum index, and :func:`cross_check` compares the two
elementwise.  All coordinates are exact rationals; no floating point exists
anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .chain_index import combinatorial_index
from .errors import EmptyPoset, MissingValue, NotGeneral, UnknownElement
from .morse import MorseFunction
from .poset import ElementId, Poset, order_complex


@dataclass(frozen=True)
class Embedding:
    """Vertex coordinates in k-space; the projection axis is coordinate 0."""

    dimension: int
    coordinates: Mapping[ElementId, tuple[Fraction, ...]]

    def height(self, element: ElementId) -> Fraction:
        return self.coordinates[element][0]


@dataclass(frozen=True)
class GeometricComplex:
    """Order-complex simplices attached to embedded vertex coordinates."""

    embedding: Embedding
    simplices: frozenset[frozenset[ElementId]]

    def simplex_coordinates(
        self, simplex: frozenset[ElementId]
    ) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.embedding.coordinates[v] for v in sorted(simplex))


@dataclass(frozen=True)
class CrossCheckReport:
    ok: bool
    # (element, geometric index, combinatorial index) for every disagreement.
    mismatches: tuple[tuple[ElementId, int, int], ...]
    # Geometric index of every element, for reporting.
    indices: Mapping[ElementId, int]

    @property
    def first_mismatch(self) -> tuple[ElementId, int, int] | None:
        return self.mismatches[0] if self.mismatches else None

    def __bool__(self) -> bool:
        return self.ok


def embed_vertices(poset: Poset, g: MorseFunction) -> Embedding:
    """Place the poset's elements in k-space with first coordinates g."""
    ids = poset.sorted_elements
    k = len(ids)
    if k == 0:
        raise EmptyPoset("cannot embed an empty poset")
    missing = sorted(set(ids) - set(g.values))
    if missing:
        raise MissingValue(f"function has no value for {missing}")
    coordinates: dict[ElementId, tuple[Fraction, ...]] = {}
    zero = Fraction(0)
    for i, e in enumerate(ids):
        vec = [zero] * k
        vec[0] = Fraction(g[e])
        if i < k - 1:
            vec[i + 1] = Fraction(1)
        coordinates[e] = tuple(vec)
    return Embedding(dimension=k, coordinates=coordinates)


def realize_complex(poset: Poset, embedding: Embedding) -> GeometricComplex:
    """Attach the order-complex simplices to an embedding.

    Raises NotGeneral if two comparable elements share a first coordinate:
    such a pair spans an edge of the complex on which the height function
    cannot separate the endpoints.
    """
    for e in poset.elements:
        if e not in embedding.coordinates:
            raise UnknownElement(f"embedding has no coordinates for {e!r}")
    for a in sorted(poset.elements):
        for b in sorted(poset.strict_up_set(a)):
            if embedding.height(a) == embedding.height(b):
                raise NotGeneral((a, b))
    return GeometricComplex(embedding=embedding, simplices=order_complex(poset).simplices)


def geometric_index(complex_: GeometricComplex, b: ElementId) -> int:
    """Signed count of closed-star simplices whose height peaks at b.

    The vertex itself contributes +1 in dimension 0.  Computed purely from
    the embedded coordinates.
    """
    if b not in complex_.embedding.coordinates:
        raise UnknownElement(f"unknown vertex {b!r}")
    height = complex_.embedding.height
    peak = height(b)
    total = 0
    for simplex in complex_.simplices:
        if b not in simplex:
            continue
        if all(height(v) < peak for v in simplex if v != b):
            total += (-1) ** (len(simplex) - 1)
    return total


def cross_check(poset: Poset, g: MorseFunction) -> CrossCheckReport:
    """Compare geometric and combinatorial indices for every element.

    The two computations share only the function g: one walks embedded
    star coordinates, the other enumerates chains in the poset.
    """
    geometric = realize_complex(poset, embed_vertices(poset, g))
    mismatches = []
    indices = {}
    for b in sorted(poset.elements):
        geo = geometric_index(geometric, b)
        comb = combinatorial_index(poset, g, b)
        indices[b] = geo
        if geo != comb:
            mismatches.append((b, geo, comb))
    return CrossCheckReport(ok=not mismatches, mismatches=tuple(mismatches), indices=indices)


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix over the rationals by exact Gaussian elimination."""
    matrix = [list(row) for row in rows]
    if not matrix:
        return 0
    n_cols = len(matrix[0])
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        lead = matrix[row][col]
        for r in range(row + 1, len(matrix)):
            if matrix[r][col] != 0:
                factor = matrix[r][col] / lead
                for c in range(col, n_cols):
                    matrix[r][c] -= factor * matrix[row][c]
        rank += 1
        row += 1
        if row == len(matrix):
            break
    return rank


def difference_matrix(embedding: Embedding) -> list[list[Fraction]]:
    """k x (k-1) matrix whose columns are the point differences to the last point."""
    ids = sorted(embedding.coordinates)
    base = embedding.coordinates[ids[-1]]
    columns = [
        [embedding.coordinates[e][r] - base[r] for r in range(embedding.dimension)]
        for e in ids[:-1]
    ]
    # Transpose columns into rows of a k x (k-1) matrix.
    return [[col[r] for col in columns] for r in range(embedding.dimension)]


def spans_full_simplex(embedding: Embedding) -> bool:
    """True iff the embedded points are affinely independent."""
    k = embedding.dimension
    if k == 1:
        return True
    return matrix_rank(difference_matrix(embedding)) == k - 1
