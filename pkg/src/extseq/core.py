"""Decidable Boolean algebra of finitely presented subsets of a tail-space universe.

A universe consists of finitely many named finite points plus finitely many
tails, each tail a disjoint copy of the naturals.  A subset is presented by
its finite part together with, per tail, an eventual flag and a finite flip
set; the tail point (t, m) belongs iff eventual(t) XOR (m in flips(t)).
Subsets whose trace on some tail is neither finite nor cofinite are not
representable, which keeps every operation total and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PresentationError, UniverseMismatch


@dataclass(frozen=True, slots=True)
class FinitePoint:
    """A named point of the finite part."""

    id: str

    def __repr__(self) -> str:
        return f"pt({self.id})"


@dataclass(frozen=True, slots=True)
class TailPoint:
    """The index-th point of the named tail."""

    tail: str
    index: int

    def __repr__(self) -> str:
        return f"tp({self.tail},{self.index})"


PointRef = FinitePoint | TailPoint


@dataclass(frozen=True, slots=True)
class Universe:
    points: tuple[str, ...]
    tails: tuple[str, ...]

    def has_point(self, x: str) -> bool:
        return x in self.points

    def has_tail(self, t: str) -> bool:
        return t in self.tails

    def check_ref(self, p: PointRef) -> None:
        if isinstance(p, FinitePoint):
            if not self.has_point(p.id):
                raise PresentationError(f"unknown finite point {p.id!r}")
        elif isinstance(p, TailPoint):
            if not self.has_tail(p.tail):
                raise PresentationError(f"unknown tail {p.tail!r}")
            if p.index < 0:
                raise PresentationError(f"negative tail index {p.index}")
        else:
            raise PresentationError(f"not a point reference: {p!r}")


def make_universe(points: Iterable[str], tails: Iterable[str]) -> Universe:
    pts = tuple(sorted(set(points)))
    tls = tuple(sorted(set(tails)))
    clash = set(pts) & set(tls)
    if clash:
        raise PresentationError(f"point/tail namespaces overlap: {sorted(clash)}")
    return Universe(pts, tls)


@dataclass(frozen=True, slots=True)
class EvSet:
    """Canonical presentation: finite part sorted, one row per tail, flips sorted."""

    universe: Universe
    finite: tuple[str, ...]
    rows: tuple[tuple[str, bool, tuple[int, ...]], ...]

    def eventual_on(self, tail: str) -> bool:
        for t, ev, _ in self.rows:
            if t == tail:
                return ev
        raise PresentationError(f"unknown tail {tail!r}")

    def flips_on(self, tail: str) -> tuple[int, ...]:
        for t, _, fl in self.rows:
            if t == tail:
                return fl
        raise PresentationError(f"unknown tail {tail!r}")

    def member(self, p: PointRef) -> bool:
        self.universe.check_ref(p)
        if isinstance(p, FinitePoint):
            return p.id in self.finite
        return self.eventual_on(p.tail) != (p.index in self.flips_on(p.tail))

    def is_cofinite_on(self, tail: str) -> bool:
        """True iff all but finitely many points of the tail belong."""
        return self.eventual_on(tail)

    def tail_members(self, tail: str, upto: int) -> list[int]:
        ev = self.eventual_on(tail)
        fl = self.flips_on(tail)
        return [m for m in range(upto) if ev != (m in fl)]

    def __or__(self, other: "EvSet") -> "EvSet":
        return ev_union(self, other)

    def __and__(self, other: "EvSet") -> "EvSet":
        return ev_intersect(self, other)

    def __invert__(self) -> "EvSet":
        return ev_complement(self)

    def __repr__(self) -> str:
        tails = ", ".join(
            f"{t}:{'cof' if ev else 'fin'}{list(fl) if fl else ''}" for t, ev, fl in self.rows
        )
        return f"EvSet({list(self.finite)}; {tails})"


def ev_set(
    universe: Universe,
    finite: Iterable[str] = (),
    eventual: Mapping[str, bool] | bool = False,
    flips: Mapping[str, Iterable[int]] | None = None,
) -> EvSet:
    """Build a canonical EvSet; unknown ids and negative indices are rejected."""
    fin = tuple(sorted(set(finite)))
    for x in fin:
        if not universe.has_point(x):
            raise PresentationError(f"unknown finite point {x!r}")
    ev_map: Mapping[str, bool]
    if isinstance(eventual, bool):
        ev_map = {t: eventual for t in universe.tails}
    else:
        ev_map = eventual
        for t in ev_map:
            if not universe.has_tail(t):
                raise PresentationError(f"unknown tail {t!r}")
    flips = flips or {}
    for t in flips:
        if not universe.has_tail(t):
            raise PresentationError(f"unknown tail {t!r}")
    rows = []
    for t in universe.tails:
        fl = tuple(sorted(set(flips.get(t, ()))))
        if fl and fl[0] < 0:
            raise PresentationError(f"negative flip index on tail {t!r}")
        rows.append((t, bool(ev_map.get(t, False)), fl))
    return EvSet(universe, fin, tuple(rows))


def empty_set(universe: Universe) -> EvSet:
    return ev_set(universe)


def full_set(universe: Universe) -> EvSet:
    return ev_set(universe, universe.points, eventual=True)


def from_points(universe: Universe, points: Iterable[PointRef]) -> EvSet:
    """The finite set holding exactly the given points."""
    fin: set[str] = set()
    flips: dict[str, set[int]] = {}
    for p in points:
        universe.check_ref(p)
        if isinstance(p, FinitePoint):
            fin.add(p.id)
        else:
            flips.setdefault(p.tail, set()).add(p.index)
    return ev_set(universe, fin, eventual=False, flips=flips)


def tail_from(universe: Universe, tail: str, start: int = 0) -> EvSet:
    """All points (tail, m) with m >= start."""
    if not universe.has_tail(tail):
        raise PresentationError(f"unknown tail {tail!r}")
    return ev_set(universe, (), eventual={tail: True}, flips={tail: range(start)})


def _check_same_universe(a: EvSet, b: EvSet) -> None:
    if a.universe != b.universe:
        raise UniverseMismatch("EvSets over different universes")


def _combine(a: EvSet, b: EvSet, op) -> EvSet:
    _check_same_universe(a, b)
    fin = tuple(sorted(x for x in a.universe.points if op(x in a.finite, x in b.finite)))
    rows = []
    for (t, ea, fa), (_, eb, fb) in zip(a.rows, b.rows):
        ev = op(ea, eb)
        # Outside both flip sets the pointwise value equals op(ea, eb).
        fl = tuple(
            sorted(
                m
                for m in set(fa) | set(fb)
                if op(ea != (m in fa), eb != (m in fb)) != ev
            )
        )
        rows.append((t, ev, fl))
    return EvSet(a.universe, fin, tuple(rows))


def ev_union(a: EvSet, b: EvSet) -> EvSet:
    return _combine(a, b, lambda p, q: p or q)


def ev_intersect(a: EvSet, b: EvSet) -> EvSet:
    return _combine(a, b, lambda p, q: p and q)


def ev_complement(a: EvSet) -> EvSet:
    fin = tuple(sorted(set(a.universe.points) - set(a.finite)))
    rows = tuple((t, not ev, fl) for t, ev, fl in a.rows)
    return EvSet(a.universe, fin, rows)


def ev_difference(a: EvSet, b: EvSet) -> EvSet:
    return ev_intersect(a, ev_complement(b))


def is_subset(a: EvSet, b: EvSet) -> bool:
    return ev_intersect(a, b) == a


def is_empty(a: EvSet) -> bool:
    return not a.finite and all(not ev and not fl for _, ev, fl in a.rows)


def is_finite(a: EvSet) -> bool:
    """True iff the set has finitely many members (no cofinite tail trace)."""
    return all(not ev for _, ev, _ in a.rows)


def finite_members(a: EvSet) -> list[PointRef]:
    """All members of a finite EvSet."""
    if not is_finite(a):
        raise PresentationError("set has a cofinite tail trace")
    out: list[PointRef] = [FinitePoint(x) for x in a.finite]
    for t, _, fl in a.rows:
        out.extend(TailPoint(t, m) for m in fl)
    return out
