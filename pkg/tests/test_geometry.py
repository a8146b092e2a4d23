import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from risnoma.geometry import (
    PathLossParams,
    Position3,
    ScenarioGeometry,
    UavTrajectory,
    distance_source_uav,
    distance_uav_user,
    large_scale_gain,
    los_probability,
    neighbor_gain,
    path_loss_exponent,
)


def _geo(r, t, phi, xs=5.0, u1=(10.0, -10.0), u2=(5.0, 5.0)):
    return ScenarioGeometry(
        source=Position3(-xs, 0, 0),
        user1=Position3(u1[0], 0, u1[1]),
        user2=Position3(u2[0], 0, u2[1]),
        uav=UavTrajectory(r, t, phi),
    )


@pytest.mark.parametrize("r,t,xs,phi,expected", [
    (0, 3, 4, math.pi / 4, 5.0),
    (5, 20, 5, math.pi / 4, 22.03078162615497),
    (5, 20, 5, math.pi / 2, math.sqrt(450)),
])
def test_distance_source_uav(r, t, xs, phi, expected):
    assert distance_source_uav(_geo(r, t, phi, xs)) == pytest.approx(expected, rel=1e-12)


def test_user_distances_reference_parameters(geo):
    # (a-10)^2 + (a+10)^2 + 400 with a = 5 sqrt(2)/2 is exactly 625
    assert distance_uav_user(geo, 1) == pytest.approx(25.0, abs=1e-12)
    assert distance_uav_user(geo, 2) == pytest.approx(20.10694710495219, rel=1e-12)


def test_vertical_drop():
    g = _geo(0, 20, 0.0, u1=(0.0, 0.0))
    assert distance_uav_user(g, 1) == 20.0


def test_invalid_user_index(geo):
    with pytest.raises(ValueError):
        distance_uav_user(geo, 3)


def test_los_probability_examples():
    assert los_probability(PathLossParams(ell2=0.0)) == 1.0
    assert los_probability(PathLossParams()) == pytest.approx(1 / (1 + 2 * math.exp(0.128)), rel=1e-12)
    assert los_probability(PathLossParams()) == pytest.approx(0.30552, abs=5e-6)
    assert los_probability(PathLossParams(plos_override=0.1)) == 0.1


def test_path_loss_exponent_examples():
    assert path_loss_exponent(PathLossParams(ell1=0.0, mho1=3.5)) == 3.5
    assert path_loss_exponent(PathLossParams()) == pytest.approx(3.0417197006, rel=1e-9)
    assert path_loss_exponent(PathLossParams(plos_override=0.3)) == pytest.approx(3.05, rel=1e-12)
    p = PathLossParams(ell1=-1.5, mho1=3.5, plos_override=1.0)
    assert path_loss_exponent(p) == pytest.approx(2.0)
    assert path_loss_exponent(PathLossParams(plos_override=0.0)) == 3.5


def test_path_loss_exponent_rejects_nonpositive():
    with pytest.raises(ValueError):
        path_loss_exponent(PathLossParams(ell1=-4.0, mho1=3.5, plos_override=1.0))


def test_plos_override_range():
    with pytest.raises(ValueError):
        PathLossParams(plos_override=1.5)


def test_large_scale_gains(geo, pathloss):
    alpha = path_loss_exponent(pathloss)
    assert large_scale_gain(geo, pathloss, 1) == pytest.approx((22.03078162615497 * 25.0) ** -alpha, rel=1e-12)
    assert large_scale_gain(geo, pathloss, 1) == pytest.approx(4.5998e-9, rel=1e-4)
    assert neighbor_gain(geo, pathloss) == pytest.approx(10 ** (-4 * alpha), rel=1e-12)
    assert neighbor_gain(geo, pathloss) == pytest.approx(6.8096e-13, rel=1e-4)


def test_unit_distance_gain():
    g = ScenarioGeometry(neighbor_d_sj=1.0, neighbor_d_j=1.0)
    assert neighbor_gain(g, PathLossParams()) == 1.0


def test_trajectory_validation():
    with pytest.raises(ValueError):
        UavTrajectory(5, 0.0, 0.0)
    with pytest.raises(ValueError):
        Position3(float("nan"), 0, 0)
    assert UavTrajectory(5, 20, 2 * math.pi + 0.5).angle == pytest.approx(0.5)


@given(st.floats(1.0, 200.0), st.floats(0.1, 50.0))
def test_gain_decreases_with_altitude(t, dt):
    p = PathLossParams()
    low, high = _geo(5, t, math.pi / 4), _geo(5, t + dt, math.pi / 4)
    for u in (1, 2):
        assert large_scale_gain(high, p, u) < large_scale_gain(low, p, u)


@given(st.floats(-3.0, 3.0), st.floats(0.01, 2.0))
def test_los_probability_increases_with_elevation(phi0, step):
    a = los_probability(PathLossParams(elevation=phi0))
    b = los_probability(PathLossParams(elevation=phi0 + step))
    assert b > a
    assert 0 < a <= 1
