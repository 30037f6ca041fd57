"""Content, word, shift, rotation and relabeling maps on a street of m spots."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, repeat
from typing import Optional

from circpark.errors import InvalidInput
from circpark.parking import PrefTuple


@dataclass(frozen=True, slots=True)
class Content:
    """How many cars prefer each spot: a weak composition of ``n`` into ``m`` parts.

    Pass ``n`` to assert the expected car count; it defaults to the sum.
    """

    counts: tuple[int, ...]
    n: Optional[int] = None

    def __post_init__(self):
        counts = tuple(self.counts)
        object.__setattr__(self, "counts", counts)
        if not counts:
            raise InvalidInput("a content needs at least one spot")
        for j, c in enumerate(counts, 1):
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InvalidInput(f"count at spot {j} is {c!r}, not a non-negative integer")
        total = sum(counts)
        if self.n is not None and self.n != total:
            raise InvalidInput(f"counts sum to {total}, declared car count is {self.n}")
        if total < 1:
            raise InvalidInput("a content must account for at least one car")
        object.__setattr__(self, "n", total)

    @classmethod
    def _trusted(cls, counts: tuple[int, ...], n: int) -> Content:
        obj = object.__new__(cls)
        object.__setattr__(obj, "counts", counts)
        object.__setattr__(obj, "n", n)
        return obj

    @property
    def m(self) -> int:
        return len(self.counts)

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, j):
        return self.counts[j]

    def __lt__(self, other):
        if not isinstance(other, Content):
            return NotImplemented
        return self.counts < other.counts

    def __str__(self):
        return "(" + ",".join(map(str, self.counts)) + ")"


@dataclass(frozen=True, slots=True)
class Relabeling:
    """Bijection of spots ``1..m`` that sends ``i_star`` to ``m``.

    ``table[j - 1]`` is the image of spot ``j``.
    """

    m: int
    i_star: int
    table: tuple[int, ...]

    def __call__(self, j: int) -> int:
        return self.table[j - 1]


def kappa(alpha: PrefTuple) -> Content:
    """Multiplicity of every spot ``1..m`` in ``alpha``; order of ``alpha`` is irrelevant."""
    counts = [0] * (alpha.m + 1)
    for e in alpha.prefs:
        counts[e] += 1
    return Content._trusted(tuple(counts[1:]), alpha.n)


def tau(k: Content) -> PrefTuple:
    """The unique weakly increasing tuple with content ``k``."""
    word = tuple(chain.from_iterable(map(repeat, range(1, k.m + 1), k.counts)))
    return PrefTuple._trusted(word, k.m)


def omega(k: Content, s: int = 1) -> Content:
    """Rotate the counts ``s`` places to the right (last entry moves to the front)."""
    if isinstance(s, bool) or not isinstance(s, int) or s < 0:
        raise InvalidInput(f"shift must be a non-negative integer, got {s!r}")
    s %= k.m
    if s == 0:
        return k
    c = k.counts
    return Content._trusted(c[-s:] + c[:-s], k.n)


def pollak_rotate(alpha: PrefTuple, s: int = 1) -> PrefTuple:
    """Add ``s`` to every preference modulo ``n + 1``, writing residue 0 as ``n + 1``."""
    if isinstance(s, bool) or not isinstance(s, int) or s < 0:
        raise InvalidInput(f"shift must be a non-negative integer, got {s!r}")
    m = alpha.m
    if m != alpha.n + 1:
        raise InvalidInput(f"rotation needs m = n + 1 spots; got n={alpha.n}, m={m}")
    # Residue 0 is written as m.
    return PrefTuple._trusted(tuple((t + s) % m or m for t in alpha.prefs), m)


def sigma_of(i_star: int, m: int) -> Relabeling:
    """Relabel spots so that ``i_star`` becomes ``m``, keeping cyclic order.

    >>> sigma_of(3, 5).table
    (3, 4, 5, 1, 2)
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidInput(f"street length must be a positive integer, got {m!r}")
    if isinstance(i_star, bool) or not isinstance(i_star, int) or not 1 <= i_star <= m:
        raise InvalidInput(f"unoccupied spot {i_star!r} outside 1..{m}")
    table = []
    for j in range(1, m + 1):
        if j < i_star:
            table.append(j + (m - i_star))
        elif j == i_star:
            table.append(m)
        else:
            table.append(j - i_star)
    return Relabeling(m, i_star, tuple(table))


def sigma_apply(rel: Relabeling, alpha: PrefTuple) -> PrefTuple:
    if rel.m != alpha.m:
        raise InvalidInput(f"relabeling is on {rel.m} spots, tuple is on {alpha.m}")
    table = rel.table
    return PrefTuple._trusted(tuple(table[a - 1] for a in alpha.prefs), alpha.m)


def phi(alpha: PrefTuple) -> PrefTuple:
    """Weakly increasing rearrangement of ``alpha``, computed as ``tau(kappa(alpha))``."""
    return tau(kappa(alpha))
