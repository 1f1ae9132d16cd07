"""Metric, boosts, and the retarded null-vector solver."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from prepotential import (
    FourVector,
    NoRetardedIntersectionError,
    ObserverOnWorldLineError,
    RestLine,
    SampledLine,
    UniformLine,
    four_velocity_from_3velocity,
    fundamental_boost,
    minkowski_dot,
    retarded_null_vector,
)


def V(*c):
    return FourVector(*map(float, c))


class TestMinkowskiDot:
    def test_timelike_unit(self):
        assert minkowski_dot(V(1, 0, 0, 0), V(1, 0, 0, 0)) == 1.0

    def test_null_vector(self):
        assert minkowski_dot(V(1, 1, 0, 0), V(1, 1, 0, 0)) == 0.0

    def test_mixed_pair(self):
        # 2*1 - 1*2 - 1*0 - 1*0
        assert minkowski_dot(V(2, 1, 1, 1), V(1, 2, 0, 0)) == 0.0

    def test_accepts_arrays_and_complex(self):
        a = np.array([1.0, 2.0, 0.0, 1.0])
        assert minkowski_dot(a, a) == 1.0 - 4.0 - 1.0
        z = np.array([1j, 0, 0, 1j])
        assert minkowski_dot(z, z) == 0j


class TestFundamentalBoost:
    def test_zero_rapidity_is_identity(self):
        assert_allclose(fundamental_boost(3, 0.0), np.eye(4))

    def test_rest_vector_gains_rapidity(self):
        psi = 0.83
        out = fundamental_boost(1, psi) @ np.array([1.0, 0, 0, 0])
        assert_allclose(out, [np.cosh(psi), np.sinh(psi), 0, 0], atol=1e-15)

    def test_determinant_one(self):
        for j in (1, 2, 3):
            assert_allclose(np.linalg.det(fundamental_boost(j, 1.7)), 1.0, rtol=1e-12)

    def test_preserves_dot_on_random_pairs(self, rng):
        for _ in range(100):
            j = int(rng.integers(1, 4))
            psi = float(rng.uniform(-2.5, 2.5))
            m = fundamental_boost(j, psi)
            a = rng.normal(size=4)
            b = rng.normal(size=4)
            before = minkowski_dot(a, b)
            after = minkowski_dot(m @ a, m @ b)
            assert abs(after - before) < 1e-12 * max(1.0, abs(before))

    def test_bad_axis_rejected(self):
        with pytest.raises(ValueError):
            fundamental_boost(0, 1.0)


class TestRetardedRest:
    def test_rest_charge_null_vector_is_radial(self):
        sol = retarded_null_vector(RestLine((0, 0, 0)), V(7.0, 1.0, -2.0, 2.0))
        r = np.sqrt(1 + 4 + 4)
        assert_allclose(sol.a.as_array(), [r, 1, -2, 2], rtol=1e-15)
        assert_allclose(sol.tau_retarded, 7.0 - r, rtol=1e-15)

    def test_three_four_five(self):
        sol = retarded_null_vector(RestLine((0, 0, 0)), V(5, 3, 0, 4))
        assert_allclose(sol.a.as_array(), [5, 3, 0, 4], rtol=1e-15)

    def test_shifted_rest_position(self):
        sol = retarded_null_vector(RestLine((1, 1, 1)), V(0, 2, 1, 1))
        assert_allclose(sol.a.as_array(), [1, 1, 0, 0], atol=1e-15)

    def test_observer_on_line(self):
        with pytest.raises(ObserverOnWorldLineError):
            retarded_null_vector(RestLine((1, 0, 0)), V(3, 1, 0, 0))


def bisect_retarded(event_at, x, lo, hi, iters=200):
    """Independent bracketing bisection on g(tau) = (x0 - e0) - |xvec - evec|."""

    def g(tau):
        e = event_at(tau)
        return (x[0] - e[0]) - np.linalg.norm(x[1:] - e[1:])

    glo, ghi = g(lo), g(hi)
    assert glo > 0 > ghi, "bracket must straddle the root"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestRetardedUniform:
    def setup_method(self):
        self.u = four_velocity_from_3velocity([0.3, -0.1, 0.55])
        self.line = UniformLine(V(0, 0, 0, 0), self.u)

    def test_matches_bisection_oracle(self, rng):
        uarr = self.u.as_array()
        for _ in range(25):
            x = rng.uniform(-3, 3, size=4)
            x[0] = rng.uniform(-1, 1)
            obs = FourVector.from_array(x)
            try:
                sol = retarded_null_vector(self.line, obs)
            except ObserverOnWorldLineError:
                continue
            tau = bisect_retarded(lambda t: t * uarr, x, sol.tau_retarded - 5.0,
                                  sol.tau_retarded + 5.0)
            assert abs(tau - sol.tau_retarded) < 1e-10 * max(1.0, abs(tau))
            a = x - tau * uarr
            assert_allclose(sol.a.as_array(), a, rtol=0, atol=1e-9)

    def test_null_and_future_pointing(self, rng):
        for _ in range(50):
            x = rng.uniform(-4, 4, size=4)
            obs = FourVector.from_array(x)
            try:
                sol = retarded_null_vector(self.line, obs)
            except ObserverOnWorldLineError:
                continue
            a = sol.a.as_array()
            assert a[0] > 0
            assert abs(minkowski_dot(a, a)) <= 1e-10 * a[0] ** 2

    def test_reduces_to_rest(self):
        line = UniformLine(V(0, 0, 0, 0), V(1, 0, 0, 0))
        sol = retarded_null_vector(line, V(2.0, 0.6, -0.8, 0.0))
        assert_allclose(sol.a.as_array(), [1.0, 0.6, -0.8, 0.0], rtol=1e-14)


class TestRetardedSampled:
    def make_sampled(self, u, n=81, span=10.0):
        taus = np.linspace(-span, span, n)
        uarr = u.as_array()
        events = tuple(FourVector.from_array(t * uarr) for t in taus)
        return SampledLine(tuple(taus), events)

    def test_sampled_agrees_with_uniform_closed_form(self, rng):
        u = four_velocity_from_3velocity([0.2, 0.4, -0.3])
        uniform = UniformLine(V(0, 0, 0, 0), u)
        sampled = self.make_sampled(u)
        for _ in range(30):
            x = rng.uniform(-2, 2, size=4)
            obs = FourVector.from_array(x)
            ref = retarded_null_vector(uniform, obs)
            got = retarded_null_vector(sampled, obs)
            scale = max(1.0, float(np.abs(ref.a.as_array()).max()))
            assert np.abs(got.a.as_array() - ref.a.as_array()).max() < 1e-10 * scale
            assert abs(got.tau_retarded - ref.tau_retarded) < 1e-9

    def test_sampled_rest_table_agrees_with_rest_line(self):
        taus = tuple(np.linspace(-5.0, 15.0, 41))
        events = tuple(V(t, 1.0, 0.0, 0.5) for t in taus)
        sampled = SampledLine(taus, events)
        obs = V(4.0, 2.5, -1.0, 0.5)
        got = retarded_null_vector(sampled, obs)
        ref = retarded_null_vector(RestLine((1.0, 0.0, 0.5)), obs)
        assert np.abs(got.a.as_array() - ref.a.as_array()).max() < 1e-10

    def test_before_range_raises(self):
        u = four_velocity_from_3velocity([0, 0, 0.5])
        sampled = self.make_sampled(u, span=1.0)
        with pytest.raises(NoRetardedIntersectionError):
            retarded_null_vector(sampled, V(-5.0, 1.0, 0.0, 0.0))

    def test_beyond_range_raises(self):
        u = four_velocity_from_3velocity([0, 0, 0.5])
        sampled = self.make_sampled(u, span=1.0)
        with pytest.raises(NoRetardedIntersectionError):
            retarded_null_vector(sampled, V(50.0, 1.0, 0.0, 0.0))

    def test_validation_rejects_bad_tables(self):
        e0, e1 = V(0, 0, 0, 0), V(1, 0, 0, 0)
        with pytest.raises(ValueError):
            SampledLine((0.0, 0.0), (e0, e1))  # non-increasing tau
        with pytest.raises(ValueError):
            SampledLine((0.0, 1.0), (e0, V(0.5, 2.0, 0, 0)))  # spacelike step
        with pytest.raises(ValueError):
            SampledLine((0.0, 1.0), (e1, e0))  # decreasing x0


class TestWorldLineValidation:
    def test_uniform_velocity_must_be_normalized(self):
        with pytest.raises(ValueError):
            UniformLine(V(0, 0, 0, 0), V(1.0, 0.5, 0, 0))

    def test_four_velocity_from_3velocity(self):
        u = four_velocity_from_3velocity([0.3, 0.2, -0.4])
        assert abs(minkowski_dot(u, u) - 1.0) < 1e-12

    def test_superluminal_rejected(self):
        with pytest.raises(ValueError):
            four_velocity_from_3velocity([0.9, 0.9, 0.9])

    def test_four_vector_rejects_nan(self):
        with pytest.raises(ValueError):
            FourVector(float("nan"), 0, 0, 0)
