"""Parking process on linear and circular one-way streets.

Spots and cars are numbered from 1.  A car drives to its preferred spot and
takes the first free spot at or after it; on a linear street it leaves if it
passes the last spot, on a circular street the search wraps to spot 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from circpark.errors import InvalidInput


@dataclass(frozen=True, slots=True)
class PrefTuple:
    """Preferences of ``n`` cars on a street with ``m`` spots."""

    prefs: tuple[int, ...]
    m: int

    def __post_init__(self):
        prefs = tuple(self.prefs)
        object.__setattr__(self, "prefs", prefs)
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise InvalidInput(f"street length must be a positive integer, got {self.m!r}")
        if not prefs:
            raise InvalidInput("a preference tuple needs at least one car")
        for i, e in enumerate(prefs, 1):
            if isinstance(e, bool) or not isinstance(e, int) or not 1 <= e <= self.m:
                raise InvalidInput(f"preference of car {i} is {e!r}, outside 1..{self.m}")

    @classmethod
    def _trusted(cls, prefs: tuple[int, ...], m: int) -> PrefTuple:
        # Skips validation; only for values produced by this package's own maps.
        obj = object.__new__(cls)
        object.__setattr__(obj, "prefs", prefs)
        object.__setattr__(obj, "m", m)
        return obj

    @property
    def n(self) -> int:
        return len(self.prefs)

    def __len__(self):
        return len(self.prefs)

    def __iter__(self):
        return iter(self.prefs)

    def __getitem__(self, i):
        return self.prefs[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.prefs)) + ")"


@dataclass(frozen=True, slots=True)
class ParkingOutcome:
    """Where every car ended up.

    ``assignment[i]`` is the spot taken by car ``i + 1``, or ``None`` if that
    car left the street without parking.  ``unoccupied`` lists the free spots
    in ascending order.
    """

    assignment: tuple[Optional[int], ...]
    unoccupied: tuple[int, ...]
    m: int
    circular: bool

    @property
    def failed(self) -> tuple[int, ...]:
        """1-indexed numbers of the cars that could not park."""
        return tuple(i for i, s in enumerate(self.assignment, 1) if s is None)

    @property
    def all_parked(self) -> bool:
        return all(s is not None for s in self.assignment)

    @property
    def hole(self) -> int:
        """The single free spot; defined only when exactly one spot is free."""
        if len(self.unoccupied) != 1:
            raise InvalidInput(f"expected exactly one free spot, found {len(self.unoccupied)}")
        return self.unoccupied[0]


def _park(prefs: Sequence[int], m: int, circular: bool) -> tuple[list, list[int]]:
    """Run the parking process; returns (assignment, successor table).

    ``nxt`` is a union-find successor table: following it from spot ``s``
    reaches the first free spot at or after ``s``, or the sentinel ``m + 1``.
    """
    nxt = list(range(m + 2))
    sentinel = m + 1
    assignment: list[Optional[int]] = []
    append = assignment.append
    for p in prefs:
        s = p
        while nxt[s] != s:
            nxt[s] = s = nxt[nxt[s]]
        if s == sentinel:
            if not circular:
                append(None)
                continue
            s = 1
            while nxt[s] != s:
                nxt[s] = s = nxt[nxt[s]]
            if s == sentinel:
                # A circular search that probes all m spots without success.
                raise RuntimeError(f"circular search exhausted all {m} spots")
        append(s)
        nxt[s] = s + 1
    return assignment, nxt


def _free_spots(nxt: list[int], m: int) -> tuple[int, ...]:
    return tuple(s for s in range(1, m + 1) if nxt[s] == s)


def _circular_hole(prefs: Sequence[int], m: int) -> int:
    """Free spot after ``m - 1`` cars park on a circular street of ``m`` spots.

    Same process as :func:`_park` without recording assignments.
    """
    if len(prefs) != m - 1:
        raise InvalidInput(f"{len(prefs)} cars on {m} spots leave more than one hole")
    nxt = list(range(m + 2))
    sentinel = m + 1
    for p in prefs:
        s = p
        while nxt[s] != s:
            nxt[s] = s = nxt[nxt[s]]
        if s == sentinel:
            s = 1
            while nxt[s] != s:
                nxt[s] = s = nxt[nxt[s]]
            if s == sentinel:
                raise RuntimeError(f"circular search exhausted all {m} spots")
        nxt[s] = s + 1
    # n distinct spots are taken, so exactly one remains.
    s = 1
    while nxt[s] != s:
        s = nxt[s]
    if s == sentinel:
        raise RuntimeError(f"no free spot left on a street of {m}")
    return s


def park_linear(alpha: PrefTuple) -> ParkingOutcome:
    """Park the cars of ``alpha`` on a linear street of ``alpha.m`` spots.

    >>> park_linear(PrefTuple((2, 2, 2), 3))
    ParkingOutcome(assignment=(2, 3, None), unoccupied=(1,), m=3, circular=False)
    """
    _check(alpha)
    assignment, nxt = _park(alpha.prefs, alpha.m, False)
    return ParkingOutcome(tuple(assignment), _free_spots(nxt, alpha.m), alpha.m, False)


def park_circular(alpha: PrefTuple) -> ParkingOutcome:
    """Park the cars of ``alpha`` on a circular street of ``alpha.m >= n`` spots."""
    _check(alpha)
    if alpha.m < alpha.n:
        raise InvalidInput(f"circular street needs at least {alpha.n} spots, got {alpha.m}")
    assignment, nxt = _park(alpha.prefs, alpha.m, True)
    return ParkingOutcome(tuple(assignment), _free_spots(nxt, alpha.m), alpha.m, True)


def is_parking_function_sim(alpha: PrefTuple) -> bool:
    """Membership in PF_n decided by running the linear parking process."""
    _require_square(alpha)
    assignment, _ = _park(alpha.prefs, alpha.m, False)
    return None not in assignment


def is_parking_function_char(alpha: PrefTuple) -> bool:
    """Membership in PF_n decided by counting.

    For every threshold ``j`` in ``1..n`` at least ``j`` entries must be ``<= j``.
    """
    _require_square(alpha)
    n = alpha.n
    tally = [0] * (n + 1)
    for e in alpha.prefs:
        tally[e] += 1
    at_most = 0
    for j in range(1, n + 1):
        at_most += tally[j]
        if at_most < j:
            return False
    return True


def is_weakly_increasing(alpha: PrefTuple) -> bool:
    _check(alpha)
    p = alpha.prefs
    return all(p[i] <= p[i + 1] for i in range(len(p) - 1))


def _check(alpha) -> None:
    if not isinstance(alpha, PrefTuple):
        raise InvalidInput(f"expected a PrefTuple, got {type(alpha).__name__}")


def _require_square(alpha: PrefTuple) -> None:
    _check(alpha)
    if alpha.m != alpha.n:
        raise InvalidInput(
            f"parking-function membership is defined on [n]^n; got n={alpha.n}, m={alpha.m}"
        )
