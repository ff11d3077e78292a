"""Signed chain sums and the combinatorial critical-point index.

For an element b of a poset, the index of b with respect to a function g
(injective on comparable pairs) is the alternating sum of (-1)^length over
all chains that contain b and on which g attains its maximum at b.  On a
2-wide, parity-graded, downward Eulerian poset this index equals
(-1)^parity(b) when b is critical and 0 when b is ordinary; the verifier in
this module machine-checks that equation elementwise, along with the global
identity sum-of-indices = chi of the order complex and the critical-cell
count identity N0 - N1 = chi.

The three chain-sum operations compute, by direct enumeration, the signed
chain counts the index argument rests on: the sum over chains through the
top of a closed down-set, and the two vanishing sums attached to a cover
pair.  Enumeration is the source of truth; a memoized recursion is provided
as a faster equivalent path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    HypothesisViolated,
    Mismatch,
    NonGeneralFunction,
    NotACover,
)
from .morse import (
    Classification,
    MorseFunction,
    classify,
    normalize,
    require_valid,
)
from .poset import (
    ElementId,
    ParityRank,
    Poset,
    compute_parity_rank,
    enumerate_chains,
    euler_characteristic,
    is_downward_eulerian,
    is_two_wide,
    order_complex,
)


@dataclass(frozen=True)
class IndexEntry:
    element: ElementId
    computed: int
    predicted: int
    critical: bool


@dataclass(frozen=True)
class IndexReport:
    """Per-element indices plus the global totals they must satisfy."""

    entries: tuple[IndexEntry, ...]
    total: int
    chi: int
    n_even: int
    n_odd: int


@dataclass(frozen=True)
class MorseCounts:
    n_even: int
    n_odd: int
    chi: int


def check_hypotheses(poset: Poset) -> ParityRank:
    """Verify 2-wide + parity-graded + downward Eulerian; return the parity."""
    wide = is_two_wide(poset)
    if not wide:
        raise HypothesisViolated("not 2-wide", wide.witness)
    mu = compute_parity_rank(poset)
    if not isinstance(mu, ParityRank):
        raise HypothesisViolated(
            "no parity rank function",
            f"element {mu.element!r} receives {mu.values[0]} via {mu.via[0]!r} "
            f"and {mu.values[1]} via {mu.via[1]!r}",
        )
    eulerian = is_downward_eulerian(poset, mu)
    if not eulerian:
        raise HypothesisViolated("not downward Eulerian", eulerian.violations)
    return mu


def _chains_through_top(poset: Poset, b: ElementId):
    """Chains of the closed down-set of b that contain b."""
    poset.require(b)
    return [c for c in enumerate_chains(poset, poset.closed_down_set(b)) if b in c]


def chain_sum_top(poset: Poset, mu: ParityRank, b: ElementId) -> int:
    """Signed count of chains below-or-at b containing b.

    Under the structural hypotheses this equals (-1)^mu(b); the parity is
    accepted so callers state the identity being exercised, but the sum
    itself depends only on the poset.
    """
    del mu
    return sum((-1) ** c.length for c in _chains_through_top(poset, b))


def chain_sum_excluding(poset: Poset, mu: ParityRank, a: ElementId, b: ElementId) -> int:
    """Signed count of chains below-or-at b containing b but avoiding a.

    Requires a covered by b; the sum vanishes under the structural hypotheses.
    """
    del mu
    if (a, b) not in poset.covers:
        raise NotACover(f"({a!r}, {b!r}) is not a cover pair")
    return sum((-1) ** c.length for c in _chains_through_top(poset, b) if a not in c)


def chain_sum_lower(poset: Poset, mu: ParityRank, a: ElementId, b: ElementId) -> int:
    """Signed count of chains below-or-at b containing a, for a covered by b.

    Vanishes under the structural hypotheses.
    """
    del mu
    if (a, b) not in poset.covers:
        raise NotACover(f"({a!r}, {b!r}) is not a cover pair")
    return sum(
        (-1) ** c.length
        for c in enumerate_chains(poset, poset.closed_down_set(b))
        if a in c
    )


def chain_sum_top_recursive(poset: Poset, b: ElementId) -> int:
    """Memoized equivalent of chain_sum_top: w(b) = 1 - sum of w over {x < b}."""
    poset.require(b)
    memo: dict[ElementId, int] = {}

    def w(e: ElementId) -> int:
        if e not in memo:
            memo[e] = 0  # cycle guard; unreachable on a valid poset
            memo[e] = 1 - sum(w(x) for x in sorted(poset.strict_down_set(e)))
        return memo[e]

    return w(b)


def _require_general(poset: Poset, g: MorseFunction) -> None:
    for a in sorted(poset.elements):
        for b in sorted(poset.strict_up_set(a)):
            if g[a] == g[b]:
                raise NonGeneralFunction((a, b))


def combinatorial_index(poset: Poset, g: MorseFunction, b: ElementId) -> int:
    """Signed count of chains containing b on which g is maximal at b.

    Requires g to take distinct values on comparable pairs; equal values
    would make "maximal at b" ambiguous, so they are refused rather than
    tie-broken.
    """
    poset.require(b)
    _require_general(poset, g)
    support = {c for c in poset.strict_down_set(b) if g[c] < g[b]}
    support |= {c for c in poset.strict_up_set(b) if g[c] < g[b]}
    support.add(b)
    return sum((-1) ** c.length for c in enumerate_chains(poset, support) if b in c)


def predicted_index(classification: Classification, mu: ParityRank, b: ElementId) -> int:
    """(-1)^parity for critical elements, 0 for ordinary ones."""
    if b not in classification.verdicts:
        raise KeyError(f"element {b!r} not classified")
    if classification.is_critical(b):
        return (-1) ** mu.values[b]
    return 0


def verify_representation(poset: Poset, f: MorseFunction) -> IndexReport:
    """End-to-end combinatorial check of the index equation.

    Verifies the structural hypotheses, normalizes f, computes the chain-sum
    index of every element, and asserts it equals the parity prediction
    elementwise, that the indices sum to chi of the order complex, and that
    the critical-count difference N0 - N1 equals chi.  Any failed equation
    raises Mismatch, which indicates a bug rather than bad input.
    """
    mu = check_hypotheses(poset)
    require_valid(poset, f)
    classification = classify(poset, f)
    g = normalize(poset, f)

    entries = []
    for b in sorted(poset.elements):
        computed = combinatorial_index(poset, g, b)
        predicted = predicted_index(classification, mu, b)
        if computed != predicted:
            raise Mismatch(b, computed, predicted)
        entries.append(
            IndexEntry(
                element=b,
                computed=computed,
                predicted=predicted,
                critical=classification.is_critical(b),
            )
        )

    chi = euler_characteristic(order_complex(poset))
    total = sum(e.computed for e in entries)
    if total != chi:
        raise Mismatch(None, total, chi, what="index total vs Euler characteristic")
    n_even = sum(1 for e in entries if e.critical and mu.values[e.element] == 0)
    n_odd = sum(1 for e in entries if e.critical and mu.values[e.element] == 1)
    if n_even - n_odd != chi:
        raise Mismatch(None, n_even - n_odd, chi, what="critical count difference")
    return IndexReport(entries=tuple(entries), total=total, chi=chi, n_even=n_even, n_odd=n_odd)


def morse_counts(poset: Poset, f: MorseFunction, mu: ParityRank | None = None) -> MorseCounts:
    """Critical-element counts by parity; asserts N0 - N1 = chi.

    The parity is recomputed (and the hypotheses checked) when not supplied.
    """
    checked_mu = check_hypotheses(poset)
    if mu is not None and mu.values != checked_mu.values:
        raise HypothesisViolated("parity rank function does not match the poset")
    classification = classify(poset, f)
    critical = classification.critical_set()
    n_even = sum(1 for e in critical if checked_mu.values[e] == 0)
    n_odd = sum(1 for e in critical if checked_mu.values[e] == 1)
    chi = euler_characteristic(order_complex(poset))
    if n_even - n_odd != chi:
        raise Mismatch(None, n_even - n_odd, chi, what="critical count difference")
    return MorseCounts(n_even=n_even, n_odd=n_odd, chi=chi)
