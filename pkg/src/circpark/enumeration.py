"""Streams over preference tuples and contents, and the partition of contents
into orbits under the circular shift.

Weak compositions of ``n`` into ``m`` parts are ranked in ascending
lexicographic order of their counts::

    n=2, m=3:  (0,0,2) (0,1,1) (0,2,0) (1,0,1) (1,1,0) (2,0,0)
    rank:        0       1       2       3       4       5

Unranking walks the parts left to right.  At part ``i`` with ``rem`` cars
still to place, a value ``v`` leaves ``comb(rem - v + p - 1, p - 1)``
completions for the ``p = m - i - 1`` parts to its right; the smallest ``v``
whose block contains the remaining rank is chosen and the ranks of the
skipped blocks are subtracted.  Feeding a uniform integer in
``range(content_count(n, m))`` through :func:`unrank_content` therefore
gives an exactly uniform random content.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import IO, Iterable, Iterator, Optional

from circpark.errors import DegenerateOrbit, InvalidInput
from circpark.maps import Content, omega
from circpark.parking import PrefTuple


def _positive(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidInput(f"{name} must be a positive integer, got {value!r}")


def tuple_count(n: int, m: int) -> int:
    _positive(n, "n")
    _positive(m, "m")
    return m**n


def content_count(n: int, m: int) -> int:
    """Number of weak compositions of n into m parts (stars and bars)."""
    _positive(n, "n")
    _positive(m, "m")
    return comb(n + m - 1, n)


def iter_tuples(n: int, m: int) -> Iterator[PrefTuple]:
    """All of [m]^n in lexicographic order."""
    _positive(n, "n")
    _positive(m, "m")
    make = PrefTuple._trusted
    for prefs in itertools.product(range(1, m + 1), repeat=n):
        yield make(prefs, m)


def iter_weakly_increasing(n: int, m: int) -> Iterator[PrefTuple]:
    """Weakly increasing tuples of [m]^n in lexicographic order."""
    _positive(n, "n")
    _positive(m, "m")
    make = PrefTuple._trusted
    for prefs in itertools.combinations_with_replacement(range(1, m + 1), n):
        yield make(prefs, m)


def iter_contents(n: int, m: int) -> Iterator[Content]:
    """Contents in the order of their weakly increasing words.

    The i-th content is the content of the i-th tuple from
    :func:`iter_weakly_increasing`, which makes the counts run in descending
    lexicographic order: ``(1,0)`` comes before ``(0,1)``.
    """
    _positive(n, "n")
    _positive(m, "m")
    make = Content._trusted
    for prefs in itertools.combinations_with_replacement(range(m), n):
        counts = [0] * m
        for e in prefs:
            counts[e] += 1
        yield make(tuple(counts), n)


def unrank_content(rank: int, n: int, m: int) -> Content:
    """Content with the given ascending-lexicographic rank."""
    total = content_count(n, m)
    if isinstance(rank, bool) or not isinstance(rank, int) or not 0 <= rank < total:
        raise InvalidInput(f"rank {rank!r} outside 0..{total - 1}")
    counts = []
    rem = n
    # block = comb(rem - v + p - 1, p - 1), updated by exact ratios.
    block = comb(rem + m - 2, m - 2) if m > 1 else 1
    for i in range(m - 1):
        p = m - i - 1
        v = 0
        while rank >= block:
            rank -= block
            block = block * (rem - v) // (rem - v + p - 1)
            v += 1
        counts.append(v)
        rem -= v
        if p > 1:
            block = block * (p - 1) // (rem + p - 1)
    counts.append(rem)
    return Content._trusted(tuple(counts), n)


def rank_content(k: Content) -> int:
    """Inverse of :func:`unrank_content`."""
    m = k.m
    rank = 0
    rem = k.n
    for i in range(m - 1):
        p = m - i - 1
        for v in range(k.counts[i]):
            rank += comb(rem - v + p - 1, p - 1)
        rem -= k.counts[i]
    return rank


def _iter_ascending(n: int, m: int, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    if start >= stop:
        return
    c = list(unrank_content(start, n, m).counts)
    last = m - 1
    for _ in range(stop - start):
        yield tuple(c)
        j = last
        while j > 0 and c[j] == 0:
            j -= 1
        if j == 0:
            return
        t = c[j]
        c[j] = 0
        c[j - 1] += 1
        c[last] += t - 1


@dataclass(frozen=True, slots=True)
class OrbitClass:
    """One class of contents under the circular shift.

    ``members`` is ``(rep, omega(rep, 1), ..., omega(rep, m - 1))``; ``rep`` is
    the lexicographically smallest member.
    """

    rep: Content
    members: tuple[Content, ...]

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def m(self) -> int:
        return self.rep.m

    def __len__(self):
        return len(self.members)

    def __contains__(self, k):
        return k in self.members


def is_canonical(k: Content) -> bool:
    """True when ``k`` is the smallest of its cyclic shifts."""
    c = k.counts
    return all(c <= c[s:] + c[:s] for s in range(1, len(c)))


def orbit_of(k: Content) -> OrbitClass:
    """Orbit of ``k`` under the circular shift.

    Raises :class:`DegenerateOrbit` when two shifts coincide, which cannot
    happen when ``m = n + 1``.
    """
    if not isinstance(k, Content):
        raise InvalidInput(f"expected a Content, got {type(k).__name__}")
    shifts = [omega(k, s).counts for s in range(k.m)]
    if len(set(shifts)) != k.m:
        raise DegenerateOrbit(f"orbit of {k} has only {len(set(shifts))} distinct members, not {k.m}")
    rep = min(shifts)
    i = shifts.index(rep)
    ordered = shifts[i:] + shifts[:i]
    # ordered[s] == omega(rep, s) because shifting composes additively.
    members = tuple(Content._trusted(c, k.n) for c in ordered)
    return OrbitClass(members[0], members)


def partition_orbits(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[OrbitClass]:
    """Orbits of contents of n cars over n + 1 spots, by ascending representative.

    ``start``/``stop`` restrict the scan to a range of content ranks, so
    disjoint rank ranges can be consumed independently; concatenating the
    chunks in rank order reproduces the full stream.
    """
    _positive(n, "n")
    m = n + 1
    total = content_count(n, m)
    stop = total if stop is None else min(stop, total)
    if start < 0:
        raise InvalidInput(f"start rank must be non-negative, got {start}")
    for c in _iter_ascending(n, m, start, stop):
        if all(c <= c[s:] + c[:s] for s in range(1, m)):
            yield orbit_of(Content._trusted(c, n))


def write_records(items: Iterable, fh: IO[str]) -> int:
    """Write tuples or contents one per line as comma-separated integers."""
    count = 0
    for item in items:
        fh.write(",".join(map(str, item)) + "\n")
        count += 1
    return count
