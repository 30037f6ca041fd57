import dataclasses

import pytest

from circpark.counts import catalan_closed
from circpark.enumeration import OrbitClass, orbit_of, partition_orbits
from circpark.errors import InvalidInput, ResourceBoundExceeded
from circpark.maps import Content, phi
from circpark.parking import PrefTuple
from circpark import verifier
from circpark.verifier import (
    orbit_reports,
    reproduce_example,
    sample_verify,
    verify_orbit,
    verify_pollak,
    verify_theorem,
    weak_pf_by_circular_hole,
    weak_pf_by_linear_sim,
)
from oracles import naive_park


def brute_weak_pf(n):
    """Weakly increasing parking functions by naive linear probing over [n]^n."""
    import itertools

    return {
        p for p in itertools.combinations_with_replacement(range(1, n + 1), n)
        if None not in naive_park(p, n)[0]
    }


class TestVerifyOrbit:
    def test_worked_example_orbit(self):
        orbit = orbit_of(Content((2, 0, 1, 1, 0)))
        report = verify_orbit(orbit)
        assert report.ok, report.failures
        assert report.weak_pf.prefs == (1, 1, 3, 4)
        assert report.rotation_pf is not None
        assert phi(report.rotation_pf) == report.weak_pf

    def test_paper_representative(self):
        orbit = orbit_of(Content((2, 0, 1, 1, 0)))
        report = verify_orbit(orbit, start=Content((1, 1, 0, 2, 0)))
        assert report.rotation_pf.prefs == (3, 4, 1, 1)
        assert report.weak_pf.prefs == (1, 1, 3, 4)
        assert report.hole_trajectory == (3, 4, 5, 1, 2)
        assert report.phi_invariant

    def test_single_car(self):
        (orbit,) = partition_orbits(1)
        report = verify_orbit(orbit)
        assert report.weak_pf.prefs == (1,)
        assert report.ok

    def test_start_must_be_member(self):
        with pytest.raises(InvalidInput):
            verify_orbit(orbit_of(Content((2, 0, 1, 1, 0))), start=Content((4, 0, 0, 0, 0)))

    def test_wrong_street_length(self):
        with pytest.raises(InvalidInput):
            verify_orbit(orbit_of(Content((2, 1, 0, 0, 0))))

    def test_records_failures_instead_of_raising(self):
        # A forged orbit whose members are not all shifts of each other.
        good = orbit_of(Content((2, 0, 1, 1, 0)))
        forged = OrbitClass(good.rep, good.members[:4] + (Content((4, 0, 0, 0, 0)),))
        report = verify_orbit(forged)
        assert not report.ok
        assert any("weakly increasing family" in f for f in report.failures)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_every_orbit_passes(self, n):
        for orbit in partition_orbits(n):
            report = verify_orbit(orbit)
            assert report.ok, (orbit.rep, report.failures)
            assert sorted(report.hole_trajectory) == list(range(1, n + 2))


class TestVerifyTheorem:
    def test_n4(self):
        r = verify_theorem(4)
        assert (r.orbit_count, r.pp_count, r.failures) == (14, 70, ())
        assert r.success

    def test_n1(self):
        assert verify_theorem(1).orbit_count == 1

    def test_n8_counts(self):
        r = verify_theorem(8)
        assert r.orbit_count == 1430 and r.pp_count == 12870 and r.success

    @pytest.mark.parametrize("n", range(1, 8))
    def test_two_paths_match_naive_oracle(self, n):
        expected = brute_weak_pf(n)
        assert weak_pf_by_linear_sim(n) == expected
        assert weak_pf_by_circular_hole(n) == expected
        from_orbits = {r.weak_pf.prefs for r in orbit_reports(n)}
        assert from_orbits == expected
        assert len(expected) == catalan_closed(n)

    def test_parallel_matches_sequential(self):
        assert orbit_reports(6, workers=1) == orbit_reports(6, workers=3)

    def test_bound_refusal(self):
        with pytest.raises(ResourceBoundExceeded, match="sampling"):
            verify_theorem(11)
        with pytest.raises(ResourceBoundExceeded):
            verify_theorem(5, bound=4)

    def test_env_bound(self, monkeypatch):
        monkeypatch.setenv("CS_MAX_EXHAUSTIVE_N", "3")
        with pytest.raises(ResourceBoundExceeded):
            verify_theorem(4)
        monkeypatch.setenv("CS_MAX_EXHAUSTIVE_N", "many")
        with pytest.raises(InvalidInput):
            verifier.max_orbit_n()

    def test_success_requires_matching_counts(self):
        r = verify_theorem(3)
        assert not dataclasses.replace(r, orbit_count=4).success
        assert not dataclasses.replace(r, failures=((None, "x"),)).success

    def test_payload_excludes_elapsed(self):
        payload = verify_theorem(2).to_payload()
        assert "elapsed" not in payload and payload["success"] is True


class TestVerifyPollak:
    @pytest.mark.parametrize("n, expected", [(1, 1), (3, 16), (6, 16807)])
    def test_counts(self, n, expected):
        r = verify_pollak(n)
        assert r.pf_count == expected == r.pollak_expected
        assert r.success

    def test_bound(self):
        with pytest.raises(ResourceBoundExceeded):
            verify_pollak(8)


class TestSampleVerify:
    def test_passes_and_is_reproducible(self):
        a = sample_verify(60, 15, seed=7)
        b = sample_verify(60, 15, seed=7)
        assert a.success and a.trials == 15
        assert a.to_payload() == b.to_payload()

    def test_seed_changes_sample(self):
        assert sample_verify(30, 5, 1).sample_digest != sample_verify(30, 5, 2).sample_digest

    def test_independent_of_worker_count(self):
        assert sample_verify(25, 12, 3, workers=1) == sample_verify(25, 12, 3, workers=3)

    @pytest.mark.parametrize("trials", [0, -1])
    def test_trials_guard(self, trials):
        with pytest.raises(InvalidInput):
            sample_verify(5, trials, 1)


class TestExample:
    def test_trace_values(self):
        t = reproduce_example()
        assert t.word_content.counts == (2, 0, 1, 1, 0)
        assert [k.counts for k in t.shift_orbit] == [
            (1, 1, 0, 2, 0), (0, 1, 1, 0, 2), (2, 0, 1, 1, 0), (0, 2, 0, 1, 1), (1, 0, 2, 0, 1)
        ]
        assert [a.prefs for a in t.rotations] == [
            (1, 2, 4, 4), (2, 3, 5, 5), (3, 4, 1, 1), (4, 5, 2, 2), (5, 1, 3, 3)
        ]
        assert t.rotation_pf == PrefTuple((3, 4, 1, 1), 5)
        assert t.weak_pf == t.phi_of_rotation_pf == PrefTuple((1, 1, 3, 4), 5)
        assert t.rotation_pf_hole == t.weak_pf_hole == 5

    def test_render_lines(self):
        text = reproduce_example().render()
        assert "ω-orbit: (1,1,0,2,0) → (0,1,1,0,2) → (2,0,1,1,0) → (0,2,0,1,1) → (1,0,2,0,1)\n" in text
        assert "π-orbit: (1,2,4,4) → (2,3,5,5) → (3,4,1,1) → (4,5,2,2) → (5,1,3,3)\n" in text
        assert "unique parking function among rotations: (3,4,1,1), hole 5\n" in text
        assert "unique weakly increasing parking function: (1,1,3,4), hole 5\n" in text
        assert reproduce_example().render() == text
