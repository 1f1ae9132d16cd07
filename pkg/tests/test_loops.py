"""Winding numbers by crossing count and loop phase reports."""

import math

import numpy as np
import pytest

from prepotential import (
    Charge,
    FourVector,
    Path,
    PathThroughSingularAxisError,
    RestLine,
    ab_phase_report,
    delta_S_along_path,
    two_path_difference,
    winding_number,
)


def V(*c):
    return FourVector(*map(float, c))


def rest_charge(q=1.0):
    return Charge(q, RestLine((0.0, 0.0, 0.0)))


def circle(radius=1.0, height=0.4, samples=240, turns=1, center=(0.0, 0.0), time=0.0):
    sign = 1.0 if turns > 0 else -1.0
    total = samples * abs(turns)
    pts = tuple(
        V(time,
          center[0] + radius * math.cos(sign * 2 * math.pi * abs(turns) * k / total),
          center[1] + radius * math.sin(sign * 2 * math.pi * abs(turns) * k / total),
          height)
        for k in range(total)
    )
    return Path(pts, closed=True)


def polygon(vertices, height=0.4, time=0.0):
    return Path(tuple(V(time, u, v, height) for u, v in vertices), closed=True)


class TestWindingNumber:
    def test_ccw_circle_winds_minus_one(self):
        assert winding_number(circle(), rest_charge()) == -1

    def test_cw_circle_winds_plus_one(self):
        assert winding_number(circle(turns=-1), rest_charge()) == 1

    def test_double_turn(self):
        assert winding_number(circle(turns=2), rest_charge()) == -2

    def test_non_enclosing_loop(self):
        assert winding_number(circle(radius=0.7, center=(2.5, 0.0)), rest_charge()) == 0

    def test_figure_eight_cancels(self):
        # inner square ccw, outer square cw: encloses the axis once each way
        inner = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
        outer = [(2, 2), (2, -2), (-2, -2), (-2, 2)]
        eight = polygon(inner + outer)
        assert winding_number(eight, rest_charge()) == 0

    def test_open_path_rejected(self):
        path = Path((V(0, 1, 0, 0), V(0, 2, 0, 0)))
        with pytest.raises(ValueError):
            winding_number(path, rest_charge())

    def test_sample_on_axis_rejected(self):
        loop = Path((V(0, 1, 0, 0.4), V(0, 0, 0, 0.4), V(0, 0, 1, 0.4)), closed=True)
        with pytest.raises(PathThroughSingularAxisError):
            winding_number(loop, rest_charge())


class TestPhaseReport:
    def test_unit_circle_report(self):
        rep = ab_phase_report(rest_charge(1.0), circle())
        assert rep.winding == -1
        assert abs(rep.delta_S - (-2j * math.pi)) < 1e-8
        assert rep.residual < 1e-8
        assert rep.status == "ok"
        assert rep.samples_used >= 240

    def test_winding_scales_with_charge(self):
        q = -1.7
        rep = ab_phase_report(rest_charge(q), circle(turns=2))
        assert rep.winding == -2
        assert abs(rep.delta_S - 2j * math.pi * q * (-2)) < 1e-8 * abs(q)

    def test_real_part_vanishes_on_closed_loops(self, rng):
        for _ in range(10):
            r = float(rng.uniform(0.5, 2.0))
            h = float(rng.uniform(0.1, 1.0))
            rep = ab_phase_report(rest_charge(), circle(radius=r, height=h))
            assert abs(rep.delta_S.real) < 1e-9

    def test_resampling_invariance(self):
        a = ab_phase_report(rest_charge(), circle(samples=240))
        b = ab_phase_report(rest_charge(), circle(samples=720))
        assert abs(a.delta_S - b.delta_S) < 1e-9

    def test_homotopy_invariance(self):
        c = rest_charge()
        base = ab_phase_report(c, circle()).delta_S
        for height in (0.2, 0.5, 1.0):
            # deformed ellipses and star-shaped polygons around the axis
            ell = Path(tuple(
                V(0.0, 1.6 * math.cos(p), 0.9 * math.sin(p), height)
                for p in np.linspace(0, 2 * math.pi, 181)[:-1]
            ), closed=True)
            star = Path(tuple(
                V(0.0,
                  (1.0 + 0.35 * math.cos(7 * p)) * math.cos(p),
                  (1.0 + 0.35 * math.cos(7 * p)) * math.sin(p),
                  height)
                for p in np.linspace(0, 2 * math.pi, 241)[:-1]
            ), closed=True)
            for loop in (ell, star):
                rep = ab_phase_report(c, loop)
                assert rep.winding == -1
                assert abs(rep.delta_S - base) < 1e-9

    def test_randomized_loops_match_crossing_oracle(self, rng):
        c = rest_charge(1.0)
        agreements = 0
        trials = 20
        for _ in range(trials):
            center = rng.uniform(-1.5, 1.5, size=2)
            radius = float(rng.uniform(0.4, 1.6))
            if abs(np.linalg.norm(center) - radius) < 0.15:
                continue  # keep the axis clearly inside or outside
            turns = int(rng.choice([-2, -1, 1, 2]))
            height = float(rng.uniform(0.2, 1.2))
            rep = ab_phase_report(c, circle(radius, height, 120, turns, tuple(center)))
            rounded = round(rep.delta_S.imag / (2 * math.pi))
            assert rounded == rep.winding
            assert rep.residual < 1e-8
            agreements += 1
        assert agreements >= trials // 2


class TestTwoPathDifference:
    def semicircle(self, upper: bool, samples=120, height=0.3):
        sign = 1.0 if upper else -1.0
        pts = tuple(
            V(0.0, math.cos(p), sign * math.sin(p), height)
            for p in np.linspace(0.0, math.pi, samples)
        )
        return Path(pts)

    def test_homotopic_paths_cancel(self):
        c = rest_charge()
        a = self.semicircle(True)
        # a deformed arc on the same side, sharing the endpoints
        b = Path((a.events[0],) + tuple(
            V(0.0, math.cos(p), math.sin(p) + 0.3 * math.sin(p), 0.3)
            for p in np.linspace(0.0, math.pi, 120)[1:-1]
        ) + (a.events[-1],))
        rep = two_path_difference(c, a, b)
        assert rep.winding == 0
        assert abs(rep.delta_S) < 1e-9

    def test_paths_on_opposite_sides_differ_by_full_branch(self):
        q = 1.0
        c = rest_charge(q)
        upper = self.semicircle(True)
        lower = self.semicircle(False)
        rep = two_path_difference(c, upper, lower)
        assert rep.winding == -1
        assert abs(rep.delta_S - (-2j * math.pi * q)) < 1e-8
        # and the difference equals the explicit closed-loop accumulation
        loop = circle()
        assert abs(rep.delta_S - delta_S_along_path(c, loop)) < 1e-9

    def test_mismatched_endpoints_rejected(self):
        c = rest_charge()
        a = self.semicircle(True)
        shifted = Path(tuple(
            V(0.0, 1.5 * math.cos(p), -math.sin(p), 0.3)
            for p in np.linspace(0.0, math.pi, 60)
        ))
        with pytest.raises(ValueError):
            two_path_difference(c, a, shifted)

    def test_closed_input_rejected(self):
        c = rest_charge()
        with pytest.raises(ValueError):
            two_path_difference(c, circle(), self.semicircle(True))
