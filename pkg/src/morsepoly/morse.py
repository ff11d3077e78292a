"""Discrete Morse functions on posets: validation, classification, repair.

A function f on a poset is a discrete Morse function when every element has
at most one lower cover a with f(a) >= f(b) and at most one upper cover c
with f(b) >= f(c).  An element with no such neighbor in either direction is
critical; otherwise it is ordinary.  All values are exact rationals; no
comparison in this module ever touches floating point.

The normalization pipeline (:func:`normalize`) rewrites a valid function on
a 2-wide poset into one with the same critical set that is additionally
injective, monotone-extendable (whenever z < x < y < w with covers x < y and
g(x) < g(y), also g(z) < g(y) and g(x) < g(w)), and free of all four
"troubled" obstruction patterns.  It runs five sweeps over a fixed linear
extension, each changing at most one value per element; every intermediate
stage is retained in a trace so each step can be audited.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    InvalidMorseFunction,
    MissingValue,
    NotTwoWide,
    UnknownElement,
)
from .poset import (
    ElementId,
    Poset,
    RankFunction,
    compute_rank_function,
    is_two_wide,
)

BELOW = "below"
ABOVE = "above"


def _coerce_rational(value: object) -> Fraction:
    """Exact conversion; floats are refused to keep all comparisons exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"refusing non-exact value {value!r} (use int, str, or Fraction)")


@dataclass(frozen=True)
class MorseFunction:
    """Total map from poset elements to exact rational values."""

    values: Mapping[ElementId, Fraction]

    @classmethod
    def from_values(cls, values: Mapping[ElementId, object]) -> "MorseFunction":
        return cls({str(k): _coerce_rational(v) for k, v in values.items()})

    def __getitem__(self, element: ElementId) -> Fraction:
        return self.values[element]

    def __contains__(self, element: ElementId) -> bool:
        return element in self.values

    def is_injective(self) -> bool:
        return len(set(self.values.values())) == len(self.values)

    def sorted_items(self) -> list[tuple[ElementId, Fraction]]:
        return sorted(self.values.items())


@dataclass(frozen=True)
class MorseVerdict:
    """Outcome of validate_morse; lists one offending element on failure."""

    valid: bool
    element: ElementId | None = None
    # Each witness is (neighbor, direction): the neighbor is a cover of the
    # element on the given side whose value breaks strict monotonicity.
    witnesses: tuple[tuple[ElementId, str], ...] = ()

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class Classification:
    """Critical/ordinary verdict per element, with one witness per ordinary one."""

    verdicts: Mapping[ElementId, str]  # "critical" | "ordinary"
    witnesses: Mapping[ElementId, tuple[ElementId, str]]

    def critical_set(self) -> frozenset[ElementId]:
        return frozenset(e for e, v in self.verdicts.items() if v == "critical")

    def is_critical(self, element: ElementId) -> bool:
        return self.verdicts[element] == "critical"


@dataclass(frozen=True)
class TroubleFlags:
    """Witnesses for the four obstruction patterns at one element.

    ``up`` holds (x, y) with element < x < y (cover), f(x) < f(y) <= f(element);
    ``short_up`` additionally has element covered by x.  ``down`` holds (z, w)
    with w < z < element (cover on the left), f(element) <= f(w) < f(z);
    ``short_down`` additionally has z covered by element.
    """

    short_up: tuple[ElementId, ElementId] | None = None
    up: tuple[ElementId, ElementId] | None = None
    short_down: tuple[ElementId, ElementId] | None = None
    down: tuple[ElementId, ElementId] | None = None

    def any(self) -> bool:
        return any((self.short_up, self.up, self.short_down, self.down))


@dataclass(frozen=True)
class TroubleReport:
    flags: Mapping[ElementId, TroubleFlags]

    def clean(self) -> bool:
        return not self.flags

    def troubled_elements(self) -> tuple[ElementId, ...]:
        return tuple(sorted(self.flags))


@dataclass(frozen=True)
class ExclusivityReport:
    """Elements with non-increasing covers in both directions, if any."""

    two_wide: bool
    offenders: tuple[tuple[ElementId, ElementId, ElementId], ...]  # (element, below, above)


@dataclass(frozen=True)
class Modification:
    stage: str
    element: ElementId
    old: Fraction
    new: Fraction


@dataclass(frozen=True)
class NormalizationTrace:
    """All intermediate functions produced by the normalization pipeline."""

    order: tuple[ElementId, ...]
    start: MorseFunction
    after_up_sweep: MorseFunction
    after_down_sweep: MorseFunction
    result: MorseFunction
    modifications: tuple[Modification, ...]


def _require_total(poset: Poset, f: MorseFunction) -> None:
    missing = sorted(set(poset.elements) - set(f.values))
    if missing:
        raise MissingValue(f"function has no value for {missing}")
    extra = sorted(set(f.values) - set(poset.elements))
    if extra:
        raise UnknownElement(f"function assigns values to non-elements {extra}")


def _violations(poset: Poset, values: Mapping[ElementId, Fraction], b: ElementId):
    below = [a for a in poset.lower_covers(b) if values[a] >= values[b]]
    above = [c for c in poset.upper_covers(b) if values[b] >= values[c]]
    return below, above


def validate_morse(poset: Poset, f: MorseFunction) -> MorseVerdict:
    """Check the at-most-one-non-increasing-cover condition on each side."""
    _require_total(poset, f)
    for b in sorted(poset.elements):
        below, above = _violations(poset, f.values, b)
        if len(below) > 1:
            return MorseVerdict(False, b, tuple((a, BELOW) for a in below))
        if len(above) > 1:
            return MorseVerdict(False, b, tuple((c, ABOVE) for c in above))
    return MorseVerdict(True)


def require_valid(poset: Poset, f: MorseFunction) -> None:
    """Raise InvalidMorseFunction unless f passes validate_morse."""
    verdict = validate_morse(poset, f)
    if not verdict:
        raise InvalidMorseFunction(
            f"not a discrete Morse function: element {verdict.element!r} has "
            f"non-increasing covers {verdict.witnesses}"
        )


def classify(poset: Poset, f: MorseFunction) -> Classification:
    """Critical/ordinary verdicts with one recorded witness per ordinary element.

    When an element has violating neighbors on both sides (possible only on
    posets that are not 2-wide) the below-side witness is recorded.
    """
    require_valid(poset, f)
    verdicts: dict[ElementId, str] = {}
    witnesses: dict[ElementId, tuple[ElementId, str]] = {}
    for b in sorted(poset.elements):
        below, above = _violations(poset, f.values, b)
        if below:
            verdicts[b] = "ordinary"
            witnesses[b] = (below[0], BELOW)
        elif above:
            verdicts[b] = "ordinary"
            witnesses[b] = (above[0], ABOVE)
        else:
            verdicts[b] = "critical"
    return Classification(verdicts=verdicts, witnesses=witnesses)


def check_exclusivity(poset: Poset, f: MorseFunction) -> ExclusivityReport:
    """Report elements violating in both directions.

    On a 2-wide poset such an element cannot exist for a valid discrete Morse
    function; finding one there means this library is broken, so it raises.
    On other posets the offenders are returned as a demonstration.
    """
    require_valid(poset, f)
    offenders = []
    for b in sorted(poset.elements):
        below, above = _violations(poset, f.values, b)
        if below and above:
            offenders.append((b, below[0], above[0]))
    two_wide = bool(is_two_wide(poset))
    if two_wide and offenders:
        raise AssertionError(
            f"exclusivity broken on a 2-wide poset at {offenders[0][0]!r}; "
            f"this is an implementation bug"
        )
    return ExclusivityReport(two_wide=two_wide, offenders=tuple(offenders))


def find_troubled(poset: Poset, f: MorseFunction) -> TroubleReport:
    """Locate all four obstruction patterns, with one witness per flag."""
    require_valid(poset, f)
    values = f.values
    short_up: dict[ElementId, tuple[ElementId, ElementId]] = {}
    up: dict[ElementId, tuple[ElementId, ElementId]] = {}
    short_down: dict[ElementId, tuple[ElementId, ElementId]] = {}
    down: dict[ElementId, tuple[ElementId, ElementId]] = {}

    for x, y in sorted(poset.covers):
        if values[x] >= values[y]:
            continue
        # Elements a < x with f(y) <= f(a) see the rising cover (x, y) above them.
        for a in sorted(poset.strict_down_set(x)):
            if values[y] <= values[a]:
                up.setdefault(a, (x, y))
                if (a, x) in poset.covers:
                    short_up.setdefault(a, (x, y))
        # Elements a > y with f(a) <= f(x) see it below them.
        for a in sorted(poset.strict_up_set(y)):
            if values[a] <= values[x]:
                down.setdefault(a, (y, x))
                if (y, a) in poset.covers:
                    short_down.setdefault(a, (y, x))

    flagged = sorted(set(short_up) | set(up) | set(short_down) | set(down))
    flags = {
        a: TroubleFlags(
            short_up=short_up.get(a),
            up=up.get(a),
            short_down=short_down.get(a),
            down=down.get(a),
        )
        for a in flagged
    }
    return TroubleReport(flags=flags)


def linear_extension(poset: Poset) -> tuple[ElementId, ...]:
    """Deterministic topological order: by rank when graded, then identifier."""
    rank = compute_rank_function(poset)
    if isinstance(rank, RankFunction):
        def key(e: ElementId) -> tuple[int, ElementId]:
            return rank.values[e], e
    else:
        def key(e: ElementId) -> tuple[int, ElementId]:
            return 0, e
    indeg = {e: len(poset.lower_covers(e)) for e in poset.elements}
    ready = [(key(e), e) for e in poset.elements if indeg[e] == 0]
    heapq.heapify(ready)
    order: list[ElementId] = []
    while ready:
        _, e = heapq.heappop(ready)
        order.append(e)
        for t in poset.upper_covers(e):
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(ready, (key(t), t))
    return tuple(order)


def _midpoint(lo: Fraction, hi: Fraction) -> Fraction:
    if not lo < hi:
        raise AssertionError(f"empty adjustment interval ({lo}, {hi}); implementation bug")
    return (lo + hi) / 2


def _short_up_witness(poset, values, e):
    """A pair (x, y) with e covered by x covered by y and f(x) < f(y) <= f(e)."""
    for x in poset.upper_covers(e):
        if values[x] >= values[e]:
            continue
        for y in poset.upper_covers(x):
            if values[x] < values[y] <= values[e]:
                return x, y
    return None


def _short_down_witness(poset, values, u):
    """A pair (z, w) with w covered by z covered by u and f(u) <= f(w) < f(z)."""
    for z in poset.lower_covers(u):
        if values[z] <= values[u]:
            continue
        for w in poset.lower_covers(z):
            if values[u] <= values[w] < values[z]:
                return z, w
    return None


class _Pipeline:
    """Mutable state for one normalization run."""

    def __init__(self, poset: Poset, f: MorseFunction, check: bool):
        self.poset = poset
        self.values: dict[ElementId, Fraction] = dict(f.values)
        self.check = check
        self.critical = classify(poset, f).critical_set()
        self.modifications: list[Modification] = []

    def snapshot(self) -> MorseFunction:
        return MorseFunction(dict(self.values))

    def set_value(self, stage: str, element: ElementId, new: Fraction) -> None:
        old = self.values[element]
        self.values[element] = new
        self.modifications.append(Modification(stage, element, old, new))
        if self.check:
            current = self.snapshot()
            verdict = validate_morse(self.poset, current)
            if not verdict:
                raise AssertionError(
                    f"stage {stage} broke the Morse condition at {verdict.element!r} "
                    f"when moving {element!r} from {old} to {new}"
                )
            now_critical = classify(self.poset, current).critical_set()
            if now_critical != self.critical:
                changed = sorted(now_critical ^ self.critical)
                raise AssertionError(
                    f"stage {stage} changed the critical set at {changed} "
                    f"when moving {element!r} from {old} to {new}"
                )

    def up_sweep(self, order: tuple[ElementId, ...]) -> None:
        """Remove short-up obstructions, sweeping the linear extension upward.

        At a flagged element e with witness pair (x, y), the unique
        non-increasing upper cover is x; e's value drops into the open
        interval between f(x) and the least value above x.  Everything
        strictly below e already sits under f(x), so no new violation and no
        new short-up obstruction can appear at already-processed elements.
        """
        poset, values = self.poset, self.values
        for e in order:
            witness = _short_up_witness(poset, values, e)
            if witness is None:
                continue
            x, _ = witness
            if self.check:
                bad = [d for d in poset.lower_covers(e) if values[d] >= values[x]]
                if bad:
                    raise AssertionError(
                        f"lower cover {bad[0]!r} of {e!r} not below f({x!r}); "
                        f"up sweep precondition failed, implementation bug"
                    )
            bound = min(values[b] for b in poset.upper_covers(x))
            self.set_value("up_sweep", e, _midpoint(values[x], bound))

    def down_sweep(self, order: tuple[ElementId, ...]) -> None:
        """Remove short-down obstructions, sweeping the linear extension downward.

        Mirror image of the up sweep, with one extra guard: the raised value
        must also stay below f(i) for every i two covers above u along a
        rising cover (u < j < i with f(j) < f(i)), which is exactly what
        prevents u from becoming short-up obstructed by the raise.

        On a 2-wide poset this stage finds no work once the up sweep has run:
        a short-down obstruction at u via w < z < u forces, through the
        alternative middle d and validity at u, a short-up obstruction at w.
        The sweep stays as a checked stage rather than relying on that fact.
        """
        poset, values = self.poset, self.values
        for u in reversed(order):
            witness = _short_down_witness(poset, values, u)
            if witness is None:
                continue
            z, _ = witness
            lo = max(values[h] for h in poset.lower_covers(z))
            cap = [values[z]]
            for j in poset.upper_covers(u):
                for i in poset.upper_covers(j):
                    if values[j] < values[i]:
                        cap.append(values[i])
            self.set_value("down_sweep", u, _midpoint(lo, min(cap)))

    def spread_sweep(self, order: tuple[ElementId, ...]) -> None:
        """Make all values distinct without reordering any strict comparison.

        Each duplicated value is nudged up to the midpoint between it and the
        next strictly larger value in the image (or +1 past the maximum), so
        no existing value lands between the old and new ones.
        """
        values = self.values
        for e in order:
            current = values[e]
            shared = sum(1 for v in values.values() if v == current)
            if shared == 1:
                continue
            larger = [v for v in values.values() if v > current]
            new = _midpoint(current, min(larger)) if larger else current + 1
            self.set_value("spread_sweep", e, new)


def normalize_trace(poset: Poset, f: MorseFunction, check: bool = True) -> NormalizationTrace:
    """Run the full normalization pipeline, keeping every intermediate stage.

    Requires a valid discrete Morse function on a 2-wide poset.  With
    ``check`` enabled (the default) every single-value modification is
    re-validated and re-classified, so a contract violation fails loudly at
    the exact step that caused it.
    """
    verdict = is_two_wide(poset)
    if not verdict:
        raise NotTwoWide(verdict.witness)
    require_valid(poset, f)

    state = _Pipeline(poset, f, check)
    start = state.snapshot()
    order = linear_extension(poset)

    state.up_sweep(order)
    after_up = state.snapshot()
    report = find_troubled(poset, after_up)
    bad_up = [e for e, fl in sorted(report.flags.items()) if fl.up or fl.short_up]
    if bad_up:
        raise AssertionError(
            f"up sweep left upward-obstructed elements {bad_up}; implementation bug"
        )

    state.down_sweep(order)
    after_down = state.snapshot()
    report = find_troubled(poset, after_down)
    if not report.clean():
        raise AssertionError(
            f"down sweep left obstructed elements {report.troubled_elements()}; "
            f"implementation bug"
        )

    state.spread_sweep(order)
    result = state.snapshot()
    if not result.is_injective():
        raise AssertionError("spread sweep failed to separate all values")
    if not find_troubled(poset, result).clean():
        raise AssertionError("spread sweep reintroduced an obstruction")
    if classify(poset, result).critical_set() != state.critical:
        raise AssertionError("normalization changed the critical set")

    return NormalizationTrace(
        order=order,
        start=start,
        after_up_sweep=after_up,
        after_down_sweep=after_down,
        result=result,
        modifications=tuple(state.modifications),
    )


def normalize(poset: Poset, f: MorseFunction, check: bool = True) -> MorseFunction:
    """Equivalent injective, obstruction-free discrete Morse function.

    The result has exactly the same critical set as the input, assigns a
    distinct value to every element, and satisfies the monotone-extension
    property: for z < x < y < w with x covered by y and g(x) < g(y), both
    g(z) < g(y) and g(x) < g(w).
    """
    return normalize_trace(poset, f, check=check).result


def monotone_extension_holds(poset: Poset, g: MorseFunction) -> bool:
    """Exhaustive monotone-extension check.

    For every cover x < y with g(x) < g(y): every z < x satisfies
    g(z) < g(y), and every w > y satisfies g(x) < g(w).  This is the
    two-sided form; it implies the four-element (z, x, y, w) statement.
    """
    values = g.values
    for x, y in sorted(poset.covers):
        if values[x] >= values[y]:
            continue
        for z in poset.strict_down_set(x):
            if values[z] >= values[y]:
                return False
        for w in poset.strict_up_set(y):
            if values[x] >= values[w]:
                return False
    return True
