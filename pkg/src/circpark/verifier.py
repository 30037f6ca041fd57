"""Mechanical check that weakly increasing parking functions are counted by
the Catalan numbers, by running the circular-street argument orbit by orbit.

Two independent paths are compared for every exhaustive ``n``:

* the orbit pipeline: partition contents into shift orbits, and in each orbit
  find the rotation and the weakly increasing word that leave spot ``n + 1``
  free;
* direct enumeration: filter all weakly increasing tuples by simulation.

Checks never raise on a violated property.  They record a failure and keep
going, so one run shows the full extent of a defect.
"""

from __future__ import annotations

import hashlib
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from circpark.counts import catalan_closed, central_binomial, pollak_count
from circpark.enumeration import (
    OrbitClass,
    content_count,
    iter_contents,
    iter_tuples,
    iter_weakly_increasing,
    orbit_of,
    partition_orbits,
    unrank_content,
)
from circpark.errors import DegenerateOrbit, InvalidInput, ResourceBoundExceeded
from circpark.maps import Content, kappa, omega, phi, pollak_rotate, sigma_apply, sigma_of, tau
from circpark.parking import (
    PrefTuple,
    _circular_hole,
    is_parking_function_char,
    is_parking_function_sim,
    park_circular,
)

DEFAULT_MAX_ORBIT_N = 10
DEFAULT_MAX_PF_N = 7


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"{name}={raw!r} is not an integer") from None
    if value < 1:
        raise InvalidInput(f"{name} must be at least 1, got {value}")
    return value


def max_orbit_n() -> int:
    """Exhaustive bound for orbit verification (``CS_MAX_EXHAUSTIVE_N``)."""
    return _env_int("CS_MAX_EXHAUSTIVE_N", DEFAULT_MAX_ORBIT_N)


def max_pf_n() -> int:
    """Exhaustive bound for brute force over all of [n]^n (``CS_MAX_PF_N``)."""
    return _env_int("CS_MAX_PF_N", DEFAULT_MAX_PF_N)


def default_workers() -> int:
    return _env_int("CS_WORKERS", os.cpu_count() or 1)


def _require_n(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n!r}")


def check_orbit_bound(n: int, bound: Optional[int] = None) -> None:
    bound = max_orbit_n() if bound is None else bound
    if n > bound:
        size = central_binomial(n)
        raise ResourceBoundExceeded(
            f"n={n} exceeds the exhaustive bound {bound}: {size} contents in "
            f"{catalan_closed(n)} orbits, roughly {size * (n + 1) * 2} circular "
            f"parkings of {n} cars; raise CS_MAX_EXHAUSTIVE_N or use sampling "
            f"(verify --sample --n {n} --trials T --seed S)"
        )


def check_pf_bound(n: int, bound: Optional[int] = None) -> None:
    bound = max_pf_n() if bound is None else bound
    if n > bound:
        raise ResourceBoundExceeded(
            f"n={n} exceeds the brute-force bound {bound}: {n**n} tuples to "
            f"simulate (n={bound} takes {bound**bound}); raise CS_MAX_PF_N to force it"
        )


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of running the argument on one orbit.

    ``start`` is the member whose word is rotated; it is ``rep`` unless the
    caller picked another one.  ``rotation_pf`` and ``weak_pf`` are ``None``
    when the family does not contain exactly one tuple with hole ``n + 1``.
    """

    rep: Content
    start: Content
    rotation_pf: Optional[PrefTuple]
    weak_pf: Optional[PrefTuple]
    hole_trajectory: tuple[int, ...]
    phi_invariant: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_payload(self, members: Optional[OrbitClass] = None) -> dict:
        out = {"rep": list(self.rep.counts)}
        if members is not None:
            out["members"] = [list(k.counts) for k in members.members]
        out["rotation_pf"] = None if self.rotation_pf is None else list(self.rotation_pf.prefs)
        out["weak_pf"] = None if self.weak_pf is None else list(self.weak_pf.prefs)
        out["hole_trajectory"] = list(self.hole_trajectory)
        out["phi_invariant"] = self.phi_invariant
        out["failures"] = list(self.failures)
        return out


def verify_orbit(orbit: OrbitClass, start: Optional[Content] = None) -> OrbitReport:
    """Check every step of the argument on one orbit of contents over n + 1 spots."""
    n, m = orbit.n, orbit.m
    if m != n + 1:
        raise InvalidInput(f"orbit lives on {m} spots; the argument needs n + 1 = {n + 1}")
    start = orbit.rep if start is None else start
    if start not in orbit.members:
        raise InvalidInput(f"{start} is not a member of the orbit of {orbit.rep}")
    failures: list[str] = []
    holes: dict[tuple[int, ...], int] = {}

    def hole(alpha: PrefTuple) -> int:
        h = holes.get(alpha.prefs)
        if h is None:
            h = holes[alpha.prefs] = _circular_hole(alpha.prefs, m)
        return h

    if len(set(orbit.members)) != m:
        failures.append(f"orbit has {len(set(orbit.members))} distinct members, expected {m}")

    # Weakly increasing family: one word per member.
    weak_pfs = []
    for k in orbit.members:
        word = tau(k)
        if kappa(word) != k:
            failures.append(f"kappa(tau({k})) = {kappa(word)}")
        if hole(word) == m:
            weak_pfs.append(word)
    if len(weak_pfs) == 1:
        weak_pf = weak_pfs[0]
        if max(weak_pf.prefs) > n:
            failures.append(f"weak parking function {weak_pf} prefers spot {m}")
        elif not is_parking_function_char(PrefTuple._trusted(weak_pf.prefs, n)):
            failures.append(f"weak parking function {weak_pf} fails the counting test")
    else:
        weak_pf = None
        failures.append(f"weakly increasing family has {len(weak_pfs)} tuples with hole {m}")

    # Rotation family of the start word.
    base = tau(start)
    trajectory = []
    rotation_pfs = []
    phi_ok = True
    for s in range(m):
        rotated = pollak_rotate(base, s)
        if kappa(rotated) != omega(start, s):
            failures.append(f"kappa of rotation {s} is not omega^{s} of {start}")
        h = hole(rotated)
        trajectory.append(h)
        if h == m:
            rotation_pfs.append(rotated)
        if hole(phi(rotated)) != h:
            phi_ok = False
            failures.append(f"phi moves the hole of {rotated}")
    if len(rotation_pfs) == 1:
        rotation_pf = rotation_pfs[0]
    else:
        rotation_pf = None
        failures.append(f"rotation family has {len(rotation_pfs)} tuples with hole {m}")

    if rotation_pf is not None and weak_pf is not None and phi(rotation_pf) != weak_pf:
        failures.append(f"phi({rotation_pf}) = {phi(rotation_pf)}, not {weak_pf}")

    if sorted(trajectory) != list(range(1, m + 1)) or any(
        trajectory[s + 1] != trajectory[s] % m + 1 for s in range(m - 1)
    ):
        failures.append(f"hole trajectory {tuple(trajectory)} is not a one-step cycle")

    return OrbitReport(
        rep=orbit.rep,
        start=start,
        rotation_pf=rotation_pf,
        weak_pf=weak_pf,
        hole_trajectory=tuple(trajectory),
        phi_invariant=phi_ok,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class VerificationReport:
    """Aggregate result of one verification run.

    Count fields that do not apply to ``kind`` stay ``None``.  ``elapsed`` is
    wall time from a monotonic clock and is left out of :meth:`to_payload`.
    """

    kind: str
    n: int
    orbit_count: Optional[int] = None
    catalan_expected: Optional[int] = None
    pp_count: Optional[int] = None
    binom_expected: Optional[int] = None
    weak_pf_count: Optional[int] = None
    pf_count: Optional[int] = None
    pollak_expected: Optional[int] = None
    trials: Optional[int] = None
    seed: Optional[int] = None
    sample_digest: Optional[str] = None
    failures: tuple[tuple[Optional[str], str], ...] = ()
    elapsed: float = field(default=0.0, compare=False)

    @property
    def success(self) -> bool:
        if self.failures:
            return False
        pairs = [
            (self.orbit_count, self.catalan_expected),
            (self.pp_count, self.binom_expected),
            (self.weak_pf_count, self.catalan_expected),
            (self.pf_count, self.pollak_expected),
        ]
        return all(got == want for got, want in pairs if got is not None)

    def to_payload(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        for name in (
            "orbit_count", "catalan_expected", "pp_count", "binom_expected",
            "weak_pf_count", "pf_count", "pollak_expected", "trials", "seed",
            "sample_digest",
        ):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        out["success"] = self.success
        out["failures"] = [{"rep": rep, "property": prop} for rep, prop in self.failures]
        return out


def _verify_chunk(args: tuple[int, int, int]) -> list[OrbitReport]:
    n, lo, hi = args
    return [verify_orbit(orbit) for orbit in partition_orbits(n, lo, hi)]


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    bounds, lo = [], 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def orbit_reports(n: int, workers: int = 1) -> list[OrbitReport]:
    """Verify every orbit for ``n``; sorted by representative whatever ``workers`` is."""
    _require_n(n)
    total = content_count(n, n + 1)
    if workers <= 1:
        reports = _verify_chunk((n, 0, total))
    else:
        jobs = [(n, lo, hi) for lo, hi in _chunks(total, workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = [r for chunk in pool.map(_verify_chunk, jobs) for r in chunk]
    reports.sort(key=lambda r: r.rep.counts)
    return reports


def weak_pf_by_circular_hole(n: int) -> set[tuple[int, ...]]:
    """Weakly increasing tuples over n + 1 spots whose circular hole is n + 1."""
    _require_n(n)
    m = n + 1
    return {a.prefs for a in iter_weakly_increasing(n, m) if _circular_hole(a.prefs, m) == m}


def weak_pf_by_linear_sim(n: int) -> set[tuple[int, ...]]:
    """Weakly increasing tuples of [n]^n that are parking functions by simulation."""
    _require_n(n)
    return {a.prefs for a in iter_weakly_increasing(n, n) if is_parking_function_sim(a)}


def verify_theorem(n: int, workers: int = 1, bound: Optional[int] = None) -> VerificationReport:
    """Run the orbit pipeline for ``n`` and cross-check it against direct enumeration."""
    _require_n(n)
    check_orbit_bound(n, bound)
    t0 = time.monotonic()
    m = n + 1
    failures: list[tuple[Optional[str], str]] = []

    reports = orbit_reports(n, workers)
    for r in reports:
        failures.extend((str(r.rep), msg) for msg in r.failures)

    contents = set()
    pp_count = 0
    for k in iter_contents(n, m):
        contents.add(k.counts)
        pp_count += 1
    covered: set[tuple[int, ...]] = set()
    for r in reports:
        for s in range(m):
            c = omega(r.rep, s).counts
            if c in covered:
                failures.append((str(r.rep), f"member {c} already belongs to another orbit"))
            covered.add(c)
    if covered != contents:
        failures.append((None, f"orbits cover {len(covered)} contents, stream has {len(contents)}"))

    from_orbits = {r.weak_pf.prefs for r in reports if r.weak_pf is not None}
    by_hole = weak_pf_by_circular_hole(n)
    by_sim = weak_pf_by_linear_sim(n)
    if from_orbits != by_hole:
        failures.append((None, "orbit weak parking functions differ from circular-hole enumeration"))
    if by_hole != by_sim:
        failures.append((None, "circular-hole enumeration differs from linear simulation"))

    catalan = catalan_closed(n)
    return VerificationReport(
        kind="theorem",
        n=n,
        orbit_count=len(reports),
        catalan_expected=catalan,
        pp_count=pp_count,
        binom_expected=central_binomial(n),
        weak_pf_count=len(by_sim),
        failures=tuple(failures),
        elapsed=time.monotonic() - t0,
    )


def verify_pollak(n: int, bound: Optional[int] = None) -> VerificationReport:
    """Count [n]^n parking functions by simulation and compare with the counting test."""
    _require_n(n)
    check_pf_bound(n, bound)
    t0 = time.monotonic()
    failures = []
    count = 0
    for alpha in iter_tuples(n, n):
        sim = is_parking_function_sim(alpha)
        if sim != is_parking_function_char(alpha):
            failures.append((str(alpha), f"simulation says {sim}, counting test disagrees"))
        count += sim
    return VerificationReport(
        kind="pollak",
        n=n,
        pf_count=count,
        pollak_expected=pollak_count(n),
        failures=tuple(failures),
        elapsed=time.monotonic() - t0,
    )


def _trial_rng(seed: int, trial: int) -> random.Random:
    # Per-trial streams keep results independent of how trials are split.
    return random.Random(f"circpark:{seed}:{trial}")


def _sample_trial(args: tuple[int, int, int]) -> tuple[int, list[tuple[Optional[str], str]]]:
    n, seed, trial = args
    m = n + 1
    rank = _trial_rng(seed, trial).randrange(content_count(n, m))
    k = unrank_content(rank, n, m)
    try:
        orbit = orbit_of(k)
    except DegenerateOrbit as exc:
        return rank, [(str(k), str(exc))]
    report = verify_orbit(orbit)
    failures = [(str(orbit.rep), msg) for msg in report.failures]
    # The start word's content round-trips through tau and back.
    if kappa(tau(k)) != k:
        failures.append((str(orbit.rep), f"kappa(tau({k})) != {k}"))
    return rank, failures


def sample_verify(n: int, trials: int, seed: int, workers: int = 1) -> VerificationReport:
    """Run the per-orbit checks on ``trials`` uniformly random contents.

    Trial ``t`` draws from its own generator seeded by ``(seed, t)``, so the
    report is the same for any worker count.
    """
    _require_n(n)
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise InvalidInput(f"trials must be a positive integer, got {trials!r}")
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise InvalidInput(f"seed must be an integer, got {seed!r}")
    t0 = time.monotonic()
    jobs = [(n, seed, t) for t in range(trials)]
    if workers <= 1:
        results = [_sample_trial(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sample_trial, jobs, chunksize=max(1, trials // (workers * 4))))
    digest = hashlib.sha256()
    failures = []
    for rank, trial_failures in results:
        digest.update(f"{rank}\n".encode())
        failures.extend(trial_failures)
    return VerificationReport(
        kind="sample",
        n=n,
        trials=trials,
        seed=seed,
        sample_digest=digest.hexdigest(),
        failures=tuple(failures),
        elapsed=time.monotonic() - t0,
    )


@dataclass(frozen=True)
class ExampleTrace:
    """Worked example: 4 cars on a circular street of 5 spots."""

    n: int
    word: PrefTuple
    word_content: Content
    start: Content
    shift_orbit: tuple[Content, ...]
    rotations: tuple[PrefTuple, ...]
    rotation_holes: tuple[int, ...]
    weak_words: tuple[PrefTuple, ...]
    weak_holes: tuple[int, ...]
    relabel_from: PrefTuple
    relabeling: tuple[int, ...]
    relabeled: PrefTuple
    rotation_pf: PrefTuple
    rotation_pf_content: Content
    phi_of_rotation_pf: PrefTuple
    weak_pf: PrefTuple
    rotation_pf_hole: int
    weak_pf_hole: int

    def lines(self) -> list[str]:
        m = self.n + 1
        arrow = " → "
        i_star = self.rotation_holes[0]
        table = ",".join(f"{j}↦{self.relabeling[j - 1]}" for j in range(1, m + 1))
        return [
            f"Example: {self.n} cars on a circular street with {m} spots",
            f"κ({self.word}) = {self.word_content}",
            f"τ({self.word_content}) = {tau(self.word_content)}",
            f"ω-orbit: {arrow.join(map(str, self.shift_orbit))}",
            f"k̂ = {self.start}, τ(k̂) = {self.rotations[0]}",
            f"π-orbit: {arrow.join(map(str, self.rotations))}",
            f"holes along π-orbit: {arrow.join(map(str, self.rotation_holes))}",
            f"τ along ω-orbit: {arrow.join(map(str, self.weak_words))}",
            f"holes along τ(ω-orbit): {arrow.join(map(str, self.weak_holes))}",
            f"σ for i* = {i_star}: ({table})",
            f"σ({self.relabel_from}) = {self.relabeled}, hole {_circular_hole(self.relabeled.prefs, m)}",
            f"κ({self.rotation_pf}) = {self.rotation_pf_content}",
            f"φ({self.rotation_pf}) = {self.phi_of_rotation_pf}",
            f"unique parking function among rotations: {self.rotation_pf}, hole {self.rotation_pf_hole}",
            f"unique weakly increasing parking function: {self.weak_pf}, hole {self.weak_pf_hole}",
        ]

    def render(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "spots": self.n + 1,
            "word": list(self.word.prefs),
            "word_content": list(self.word_content.counts),
            "start": list(self.start.counts),
            "shift_orbit": [list(k.counts) for k in self.shift_orbit],
            "rotations": [list(a.prefs) for a in self.rotations],
            "rotation_holes": list(self.rotation_holes),
            "weak_words": [list(a.prefs) for a in self.weak_words],
            "weak_holes": list(self.weak_holes),
            "relabeling": list(self.relabeling),
            "relabeled": list(self.relabeled.prefs),
            "rotation_pf": list(self.rotation_pf.prefs),
            "rotation_pf_content": list(self.rotation_pf_content.counts),
            "phi_of_rotation_pf": list(self.phi_of_rotation_pf.prefs),
            "weak_pf": list(self.weak_pf.prefs),
            "rotation_pf_hole": self.rotation_pf_hole,
            "weak_pf_hole": self.weak_pf_hole,
            "lines": self.lines(),
        }


def reproduce_example() -> ExampleTrace:
    """Recompute the worked example with k̂ = (1,1,0,2,0) and word (1,1,3,4)."""
    n, m = 4, 5
    word = PrefTuple((1, 1, 3, 4), m)
    start = Content((1, 1, 0, 2, 0))
    shift_orbit = tuple(omega(start, s) for s in range(m))
    base = tau(start)
    rotations = tuple(pollak_rotate(base, s) for s in range(m))
    rotation_holes = tuple(park_circular(a).hole for a in rotations)
    weak_words = tuple(tau(k) for k in shift_orbit)
    weak_holes = tuple(park_circular(a).hole for a in weak_words)
    (rotation_pf,) = [a for a, h in zip(rotations, rotation_holes) if h == m]
    (weak_pf,) = [a for a, h in zip(weak_words, weak_holes) if h == m]
    rel = sigma_of(rotation_holes[0], m)
    return ExampleTrace(
        n=n,
        word=word,
        word_content=kappa(word),
        start=start,
        shift_orbit=shift_orbit,
        rotations=rotations,
        rotation_holes=rotation_holes,
        weak_words=weak_words,
        weak_holes=weak_holes,
        relabel_from=base,
        relabeling=rel.table,
        relabeled=sigma_apply(rel, base),
        rotation_pf=rotation_pf,
        rotation_pf_content=kappa(rotation_pf),
        phi_of_rotation_pf=phi(rotation_pf),
        weak_pf=weak_pf,
        rotation_pf_hole=park_circular(rotation_pf).hole,
        weak_pf_hole=park_circular(weak_pf).hole,
    )
