import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusharmonics.dyadic import (
    DyadicInterval,
    DyadicRectangle,
    Relation,
    TorusInterval,
    all_dyadic_intervals,
    concentric_scale,
    dist_intervals,
    dist_torus,
    enlarge_shift,
    relate,
    shift_interval,
    star,
)


class TestDistance:
    def test_wraparound(self):
        assert abs(dist_torus(0.1, 0.9) - 0.2) < 1e-15

    def test_zero(self):
        assert dist_torus(0.25, 0.25) == 0.0

    def test_maximum(self):
        assert abs(dist_torus(0.0, 0.5) - 0.5) < 1e-15

    def test_symmetry(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            x, y = rng.uniform(0, 1, size=2)
            assert abs(dist_torus(x, y) - dist_torus(y, x)) < 1e-15
            assert dist_torus(x, y) <= 0.5 + 1e-15


class TestShift:
    def test_basic(self):
        out = shift_interval(DyadicInterval(2, 0), 1)
        assert abs(out.left - 0.25) < 1e-15 and out.length == 0.25

    def test_wraps(self):
        out = shift_interval(DyadicInterval(2, 3), 1)
        assert abs(out.left - 0.0) < 1e-15

    def test_fractional(self):
        out = shift_interval(DyadicInterval(2, 0), 0, alpha=0.5)
        assert abs(out.left - 0.125) < 1e-15

    def test_composition(self):
        base = TorusInterval(0.3, 0.1)
        rng = np.random.default_rng(1)
        for _ in range(50):
            n1, n2 = rng.integers(-6, 7, size=2)
            once = shift_interval(shift_interval(base, int(n1)), int(n2))
            both = shift_interval(base, int(n1 + n2))
            assert dist_torus(once.left, both.left) < 1e-12


class TestEnlargeShift:
    def test_enlarge_then_shift(self):
        out = enlarge_shift(DyadicInterval(3, 0), 1, 1)
        assert abs(out.left - 0.25) < 1e-15 and out.length == 0.25

    def test_ancestor_only(self):
        out = enlarge_shift(DyadicInterval(3, 3), 1, 0)
        assert abs(out.left - 0.25) < 1e-15

    def test_wrapping_negative(self):
        out = enlarge_shift(DyadicInterval(3, 0), 2, -1)
        assert abs(out.left - 0.5) < 1e-15 and out.length == 0.5

    def test_level_error(self):
        with pytest.raises(ValueError):
            enlarge_shift(DyadicInterval(3, 0), 3, 0)


class TestConcentric:
    def test_shrink(self):
        out = concentric_scale(TorusInterval(0.25, 0.25), 0.5)
        assert abs(out.left - 5 / 16) < 1e-15 and abs(out.length - 1 / 8) < 1e-15

    def test_star_wraps(self):
        out = star(DyadicInterval(2, 0))
        assert abs(out.left - 0.75) < 1e-15 and abs(out.length - 0.75) < 1e-15

    def test_star_becomes_torus(self):
        out = star(TorusInterval(0.0, 0.4))
        assert out.is_full

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            concentric_scale(TorusInterval(0.0, 0.5), 3.0)


class TestRelate:
    def test_examples(self):
        a = DyadicInterval(2, 0)
        assert relate(a, DyadicInterval(1, 0)) is Relation.A_INSIDE_B
        assert relate(a, DyadicInterval(2, 1)) is Relation.DISJOINT
        assert relate(a, DyadicInterval(2, 0)) is Relation.EQUAL

    def test_exhaustive_against_endpoints(self):
        intervals = list(all_dyadic_intervals(6))
        for a, b in itertools.product(intervals, intervals):
            rel = relate(a, b)
            a0, a1 = a.left, a.left + a.length
            b0, b1 = b.left, b.left + b.length
            if rel is Relation.EQUAL:
                assert a0 == b0 and a1 == b1
            elif rel is Relation.A_INSIDE_B:
                assert b0 <= a0 and a1 <= b1 and a.length < b.length
            elif rel is Relation.B_INSIDE_A:
                assert a0 <= b0 and b1 <= a1 and b.length < a.length
            else:
                assert a1 <= b0 or b1 <= a0

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 6), st.data())
    def test_trichotomy_is_total(self, ka, kb, data):
        a = DyadicInterval(ka, data.draw(st.integers(0, 2**ka - 1)))
        b = DyadicInterval(kb, data.draw(st.integers(0, 2**kb - 1)))
        assert relate(a, b) in Relation


def grid_aligned_intervals(n):
    """All torus intervals made of whole cells on an n-point grid."""
    for width in range(1, n + 1):
        for start in range(n):
            yield TorusInterval(start / n, width / n)
            if width == n:
                break


class TestCoveringClaims:
    """Exhaustive integer-exact checks over all grid-aligned interval pairs.

    Intervals are encoded as (start, width) in units of 1/(2N) so that star
    centers stay integral; containment and intersection reduce to cyclic
    integer comparisons, vectorized over all pairs at once.
    """

    N = 64

    def _geometry(self):
        n2 = 2 * self.N  # half-cell units around the circle
        starts, widths = [], []
        for w in range(1, self.N + 1):
            for s in range(self.N):
                starts.append(2 * s)
                widths.append(2 * w)
                if w == self.N:
                    break
        starts = np.array(starts)[None, :]
        widths = np.array(widths)[None, :]
        # stars: same center, triple width, capped at the full circle
        star_w = np.minimum(3 * widths, n2)
        star_s = (starts + widths // 2 - star_w // 2) % n2
        return starts, widths, star_s, star_w, n2

    @staticmethod
    def _intersects(sa, wa, sb, wb, n2):
        return (((sb - sa) % n2) < wa) | (((sa - sb) % n2) < wb)

    @staticmethod
    def _contained(sa, wa, sb, wb, n2):
        # [sa, sa+wa) inside [sb, sb+wb), cyclically
        return (wb >= n2) | ((((sa - sb) % n2) + wa) <= wb)

    def test_intersecting_shorter_interval_in_star(self):
        # if A meets B and |B| <= |A| then B lies in A*
        s, w, ss, sw, n2 = self._geometry()
        meets = self._intersects(s.T, w.T, s, w, n2)
        shorter = w <= w.T
        inside_star = self._contained(s, w, ss.T, sw.T, n2)
        violations = meets & shorter & ~inside_star
        assert not violations.any()

    def test_meeting_and_escaping_forces_containment(self):
        # if A meets B and A - B* is nonempty then B lies in A*
        s, w, ss, sw, n2 = self._geometry()
        meets = self._intersects(s.T, w.T, s, w, n2)
        a_inside_bstar = self._contained(s.T, w.T, ss, sw, n2)
        inside_star = self._contained(s, w, ss.T, sw.T, n2)
        violations = meets & ~a_inside_bstar & ~inside_star
        assert not violations.any()


class TestGridSampling:
    def test_indicator_counts(self):
        iv = DyadicInterval(3, 5)
        ind = iv.as_torus_interval().indicator(6)
        assert ind.sum() == 2 ** (6 - 3)
        sl = iv.grid_slice(6)
        expect = np.zeros(64, dtype=bool)
        expect[sl] = True
        assert (ind == expect).all()

    def test_wrapped_indicator(self):
        iv = TorusInterval(0.875, 0.25)
        ind = iv.indicator(4)
        assert ind.sum() == 4
        assert ind[14] and ind[15] and ind[0] and ind[1]

    def test_rectangle_indicator(self):
        rect = DyadicRectangle(DyadicInterval(1, 0), DyadicInterval(2, 1))
        ind = rect.indicator((4, 4))
        assert ind.sum() == 8 * 4
        assert ind[0, 4] and not ind[8, 4] and not ind[0, 0]


class TestIntervalDistance:
    def test_adjacent(self):
        a = TorusInterval(0.0, 0.25)
        b = TorusInterval(0.25, 0.25)
        assert dist_intervals(a, b) == 0.0

    def test_gap(self):
        a = TorusInterval(0.0, 0.125)
        b = TorusInterval(0.5, 0.125)
        assert abs(dist_intervals(a, b) - 0.375) < 1e-12

    def test_wrapped_gap(self):
        a = TorusInterval(0.9, 0.05)
        b = TorusInterval(0.05, 0.05)
        assert abs(dist_intervals(a, b) - 0.1) < 1e-12

    def test_matches_brute_force(self):
        rng = np.random.default_rng(7)
        n = 256
        grid = np.arange(n) / n
        for _ in range(25):
            a = TorusInterval(rng.uniform(), rng.uniform(0.05, 0.6))
            b = TorusInterval(rng.uniform(), rng.uniform(0.05, 0.6))
            pa = grid[a.contains(grid)]
            pb = grid[b.contains(grid)]
            brute = min(dist_torus(x, y) for x in pa for y in pb)
            assert dist_intervals(a, b) <= brute + 1e-9
            assert brute <= dist_intervals(a, b) + 2 / n + 1e-9
