import io
import itertools

import pytest
from hypothesis import given, strategies as st

from circpark.counts import catalan_closed, central_binomial
from circpark.enumeration import (
    content_count,
    is_canonical,
    iter_contents,
    iter_tuples,
    iter_weakly_increasing,
    orbit_of,
    partition_orbits,
    rank_content,
    tuple_count,
    unrank_content,
    write_records,
)
from circpark.errors import DegenerateOrbit, InvalidInput
from circpark.maps import Content, kappa, omega, tau
from oracles import binomial, rotate_right, weak_compositions


def prefs_of(stream):
    return [a.prefs for a in stream]


class TestTupleStreams:
    def test_small_cases(self):
        assert prefs_of(iter_tuples(1, 2)) == [(1,), (2,)]
        assert prefs_of(iter_tuples(2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert prefs_of(iter_weakly_increasing(2, 2)) == [(1, 1), (1, 2), (2, 2)]

    def test_counts_for_worked_example(self):
        assert sum(1 for _ in iter_tuples(4, 5)) == 625
        weak = prefs_of(iter_weakly_increasing(4, 5))
        assert len(weak) == 70
        assert weak == [p for p in prefs_of(iter_tuples(4, 5)) if list(p) == sorted(p)]

    @pytest.mark.parametrize("n, m", [(1, 1), (3, 2), (3, 4), (5, 3)])
    def test_lexicographic_and_extremes(self, n, m):
        for stream in (iter_tuples(n, m), iter_weakly_increasing(n, m)):
            got = prefs_of(stream)
            assert got == sorted(set(got))
            assert got[0] == (1,) * n and got[-1] == (m,) * n

    @pytest.mark.parametrize("n", range(1, 11))
    def test_stream_counts(self, n):
        assert sum(1 for _ in iter_weakly_increasing(n, n + 1)) == central_binomial(n)
        if n <= 6:
            assert sum(1 for _ in iter_tuples(n, n + 1)) == tuple_count(n, n + 1) == (n + 1) ** n

    def test_restartable_and_deterministic(self):
        assert prefs_of(iter_tuples(3, 3)) == prefs_of(iter_tuples(3, 3))

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            list(iter_tuples(0, 3))
        with pytest.raises(InvalidInput):
            list(iter_weakly_increasing(2, 0))


class TestContents:
    def test_small_case_order(self):
        assert [k.counts for k in iter_contents(1, 2)] == [(1, 0), (0, 1)]

    @pytest.mark.parametrize("n, m", [(1, 2), (2, 3), (4, 5), (3, 6), (5, 2)])
    def test_matches_box_filter(self, n, m):
        got = [k.counts for k in iter_contents(n, m)]
        assert sorted(got) == sorted(weak_compositions(n, m))
        assert len(got) == content_count(n, m) == binomial(n + m - 1, n)

    def test_tau_maps_onto_weak_stream_in_order(self):
        words = [tau(k).prefs for k in iter_contents(4, 5)]
        assert words == prefs_of(iter_weakly_increasing(4, 5))

    def test_kappa_tau_identity_stream(self):
        ks = list(iter_contents(4, 5))
        assert [kappa(tau(k)) for k in ks] == ks

    @pytest.mark.parametrize("n, m", [(1, 1), (2, 3), (4, 5), (3, 1), (6, 4)])
    def test_unrank_is_ascending_lex(self, n, m):
        ranked = [unrank_content(r, n, m).counts for r in range(content_count(n, m))]
        assert ranked == sorted(weak_compositions(n, m))
        assert all(rank_content(unrank_content(r, n, m)) == r for r in range(len(ranked)))

    @given(st.integers(1, 300), st.data())
    def test_rank_round_trip_large(self, n, data):
        r = data.draw(st.integers(0, content_count(n, n + 1) - 1))
        k = unrank_content(r, n, n + 1)
        assert k.n == n and k.m == n + 1
        assert rank_content(k) == r

    def test_unrank_out_of_range(self):
        with pytest.raises(InvalidInput):
            unrank_content(70, 4, 5)

    def test_write_records(self):
        buf = io.StringIO()
        assert write_records(iter_contents(1, 2), buf) == 2
        assert buf.getvalue() == "1,0\n0,1\n"
        buf = io.StringIO()
        write_records(iter_weakly_increasing(2, 2), buf)
        assert buf.getvalue() == "1,1\n1,2\n2,2\n"


class TestOrbits:
    def test_worked_example_orbit(self):
        orbit = orbit_of(Content((2, 0, 1, 1, 0)))
        assert {k.counts for k in orbit.members} == {
            (1, 1, 0, 2, 0), (0, 1, 1, 0, 2), (2, 0, 1, 1, 0), (0, 2, 0, 1, 1), (1, 0, 2, 0, 1)
        }
        assert orbit.rep.counts == (0, 1, 1, 0, 2)
        assert all(orbit.members[s] == omega(orbit.rep, s) for s in range(5))

    @given(st.integers(1, 40), st.data(), st.integers(0, 100))
    def test_class_independent_of_representative(self, n, data, s):
        k = unrank_content(data.draw(st.integers(0, content_count(n, n + 1) - 1)), n, n + 1)
        assert orbit_of(k) == orbit_of(omega(k, s))
        assert len(orbit_of(k)) == n + 1

    def test_degenerate_orbit_raises(self):
        with pytest.raises(DegenerateOrbit):
            orbit_of(Content((1, 0, 1, 0)))

    def test_rep_is_smallest_rotation(self):
        for k in iter_contents(5, 6):
            orbit = orbit_of(k)
            assert orbit.rep.counts == min(rotate_right(k.counts, s) for s in range(6))
            assert is_canonical(k) == (k == orbit.rep)

    @pytest.mark.parametrize("n, expected", [(1, 1), (4, 14), (8, 1430)])
    def test_orbit_counts(self, n, expected):
        assert sum(1 for _ in partition_orbits(n)) == expected == catalan_closed(n)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_partition_is_exact(self, n):
        seen = []
        for orbit in partition_orbits(n):
            assert len(set(orbit.members)) == n + 1
            seen.extend(k.counts for k in orbit.members)
        assert len(seen) == len(set(seen))
        assert set(seen) == {k.counts for k in iter_contents(n, n + 1)}

    def test_ascending_representatives(self):
        reps = [o.rep.counts for o in partition_orbits(6)]
        assert reps == sorted(reps)

    @pytest.mark.parametrize("n", [3, 6, 8])
    def test_chunked_consumption_matches_sequential(self, n):
        total = content_count(n, n + 1)
        whole = list(partition_orbits(n))
        for parts in (2, 3, 7):
            cuts = [total * i // parts for i in range(parts + 1)]
            chunked = list(itertools.chain.from_iterable(
                partition_orbits(n, lo, hi) for lo, hi in zip(cuts, cuts[1:])
            ))
            assert chunked == whole

    def test_deterministic(self):
        assert list(partition_orbits(5)) == list(partition_orbits(5))
