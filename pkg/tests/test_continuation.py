import math

import pytest

from slipmap.continuation import (
    continue_branch,
    detect_transcritical,
    find_fixed_points,
    fixed_velocity_rule,
    special_case_rule,
)
from slipmap.errors import NoCollisionError
from slipmap.returnmap import MapConfig, map_value

A5, A8 = math.pi / 9, math.pi / 12


@pytest.fixture(scope="module")
def fig8_branches():
    return continue_branch(A8, (1.51, 1.58), 0.0025)


def test_fig5_two_low_fixed_points(fig5_K):
    pts = find_fixed_points(MapConfig(A5, 1.48, fig5_K, "taylor"))
    low = [p for p in pts if p.Y < 1.0]
    assert len(low) == 2
    assert low[0].Y == pytest.approx(0.9399, abs=1e-4) and low[0].stable
    assert not low[1].stable


def test_fig9_stable_below_unstable():
    rule = fixed_velocity_rule(1.0)
    pts = [p for p in find_fixed_points(MapConfig(A8, 1.515, rule(A8, 1.515), "taylor")) if p.Y < 1.0]
    assert len(pts) == 2
    assert pts[0].stable and not pts[1].stable


def test_identity_map_is_degenerate():
    cfg = MapConfig(A5, 1.48, 20.0, lambda td, p: 2 * p.alpha)
    found = find_fixed_points(cfg)
    assert found.degenerate and len(found) == 0


def test_k_rules():
    assert fixed_velocity_rule(1.0)(A8, 1.51) == pytest.approx(34.77, rel=0.03)
    assert special_case_rule()(A5, 1.48) == pytest.approx(18.3575, abs=1e-3)


def test_branches_collide_and_exchange(fig8_branches):
    ev = detect_transcritical(fig8_branches)
    assert ev.kind == "transcritical"
    assert ev.E_s_star == pytest.approx(1.550, abs=1e-2)
    assert ev.Y_star == pytest.approx(0.9754, abs=1e-2)
    assert ev.f_prime == pytest.approx(1.0, abs=1e-6)
    assert ev.g_second != 0


def test_step_halving_moves_event_little(fig8_branches):
    ev = detect_transcritical(fig8_branches)
    fine = detect_transcritical(continue_branch(A8, (1.51, 1.58), 0.00125))
    assert fine.E_s_star == pytest.approx(ev.E_s_star, abs=1e-6)
    assert fine.Y_star == pytest.approx(ev.Y_star, abs=1e-6)


def test_branch_points_are_fixed_points(fig8_branches):
    for b in fig8_branches.branches:
        for p in b.points[::7]:
            cfg = fig8_branches.config(p.E_s)
            assert map_value(p.Y_star, cfg) == pytest.approx(p.Y_star, abs=1e-10)


def test_no_collision_far_from_event():
    bs = continue_branch(A8, (1.51, 1.53), 0.005)
    with pytest.raises(NoCollisionError):
        detect_transcritical(bs)


def test_bad_step():
    with pytest.raises(ValueError):
        continue_branch(A8, (1.51, 1.58), 0.0)
