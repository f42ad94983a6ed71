import math

import pytest
from hypothesis import given, settings, strategies as st

from slipmap.errors import DomainError, NonForwardError, StumbleError
from slipmap.returnmap import (
    MapConfig,
    Terminal,
    apex_after_sweep,
    apex_return,
    cobweb,
    corrected_x_dot,
    iterate,
    map_value,
    td_velocities_from_apex,
)

A5 = math.pi / 9
E5 = 1.48
Y_STAR = 0.9399175574


def cfg5(K, variant="taylor"):
    return MapConfig(A5, E5, K, variant)


def test_touchdown_at_landing_height():
    cfg = MapConfig(0.3, 1.6, 30.0)
    td = td_velocities_from_apex(math.cos(0.3), cfg)
    r = math.sqrt(1.6 - math.cos(0.3))
    assert td.theta_d == pytest.approx(math.sqrt(2) * math.cos(0.3) * r, abs=1e-14)
    assert td.L_d == pytest.approx(math.sqrt(2) * math.sin(0.3) * r, abs=1e-14)


def test_touchdown_at_energy_is_not_forward():
    with pytest.raises(NonForwardError):
        td_velocities_from_apex(1.6, MapConfig(0.3, 1.6, 30.0))


def test_touchdown_at_fig5_fixed_point(fig5_K):
    td = td_velocities_from_apex(Y_STAR, cfg5(fig5_K))
    assert (td.theta_d, td.L_d) == pytest.approx((0.96938, 0.37539), abs=1e-4)


@given(st.floats(0.05, 1.2), st.floats(0.0, 2.0), st.floats(0.0, 1.0))
def test_touchdown_speed_matches_energy(a, extra, frac):
    E = math.cos(a) + 1e-3 + extra
    cfg = MapConfig(a, E, 10.0)
    Y = math.cos(a) + frac * (cfg.forward_limit - math.cos(a)) * 0.999
    td = td_velocities_from_apex(Y, cfg)
    assert td.theta_d**2 + td.L_d**2 == pytest.approx(2 * (E - math.cos(a)), rel=1e-12, abs=1e-12)


@given(st.floats(0.05, 1.2), st.floats(0.01, 2.0), st.floats(0.0, 1.0))
def test_symmetric_sweep_is_identity(a, extra, frac):
    E = math.cos(a) + extra
    Y = math.cos(a) + frac * extra
    assert apex_after_sweep(Y, 2 * a, a, E) == pytest.approx(Y, abs=1e-12)


def test_forced_symmetric_variant_fixes_every_height():
    cfg = MapConfig(A5, E5, 20.0, lambda td, p: 2 * p.alpha)
    for Y in (0.95, 1.0, 1.2):
        assert apex_return(Y, cfg) == pytest.approx(Y, abs=1e-12)


def test_fig5_fixed_point_taylor(fig5_K):
    assert apex_return(0.9399, cfg5(fig5_K)) == pytest.approx(0.9399, abs=1e-4)
    assert apex_return(Y_STAR, cfg5(fig5_K)) == pytest.approx(Y_STAR, abs=1e-10)


def test_above_unstable_point_leaves_basin(fig5_K):
    # the unstable fixed point of the taylor map lies near 0.9509
    cfg = cfg5(fig5_K)
    assert map_value(0.96, cfg) > 0.96
    orbit = iterate(0.96, cfg)
    assert orbit.terminal is Terminal.STUMBLED


def test_converges_inside_basin(fig5_K):
    for variant, y0 in (("taylor", 0.945), ("full", 0.94)):
        orbit = iterate(y0, cfg5(fig5_K, variant))
        assert orbit.terminal is Terminal.CONVERGED
        assert orbit.final == pytest.approx(Y_STAR, abs=1e-8)


def test_iterate_from_fixed_point(fig5_K):
    orbit = iterate(Y_STAR, cfg5(fig5_K), tol=1e-8)
    assert orbit.terminal is Terminal.CONVERGED
    assert orbit.steps == 0


def test_max_iterations(fig5_K):
    orbit = iterate(0.945, cfg5(fig5_K), max_steps=3)
    assert orbit.terminal is Terminal.MAX_ITERATIONS
    assert orbit.steps == 3


def test_stumble_raised_by_single_step():
    cfg = MapConfig(A5, E5, 5.0)  # very soft leg: the next apex falls below landing height
    with pytest.raises(StumbleError):
        apex_return(0.95, cfg)


def test_corrected_x_dot():
    cfg = MapConfig(0.3, 1.5, 20.0)
    assert corrected_x_dot(1.5, cfg) == 0.0
    assert corrected_x_dot(1.0, cfg) == pytest.approx(1.0)
    assert corrected_x_dot(0.9399, MapConfig(A5, 1.48, 18.0)) == pytest.approx(1.03928, abs=1e-4)
    with pytest.raises(DomainError):
        corrected_x_dot(1.6, cfg)


def test_config_validation():
    with pytest.raises(DomainError):
        MapConfig(0.3, 0.5, 10.0)
    with pytest.raises(DomainError):
        MapConfig(0.3, 1.5, 0.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.001, 0.01))
def test_cobweb_vertices_alternate(fig5_K, offset):
    pts = cobweb(Y_STAR + offset, cfg5(fig5_K), max_steps=5)
    assert pts[0][0] == pts[0][1]
    for (x0, y0), (x1, y1) in zip(pts[1::2], pts[2::2]):
        assert y0 == y1 and x1 == y1
