import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weberbeams.coords import (
    CartesianPoint,
    ParabolicPoint,
    frame,
    from_cartesian,
    to_cartesian,
    uv_from_xy,
    vector_to_cartesian,
)
from weberbeams.numerics import DomainError, FDStencil, fd_apply


@pytest.mark.parametrize("uv,xy", [((1, 1), (0, 1)), ((3, 0), (4.5, 0)), ((0, 2), (-2, 0))])
def test_to_cartesian_examples(uv, xy):
    c = to_cartesian(ParabolicPoint(*uv))
    assert (c.x, c.y) == pytest.approx(xy)


@pytest.mark.parametrize("xy,uv", [((0, 1), (1, 1)), ((-2, 0), (0, 2)), ((2, 0), (2, 0)), ((0, 0), (0, 0))])
def test_from_cartesian_examples(xy, uv):
    p = from_cartesian(CartesianPoint(*xy))
    assert (p.u, p.v) == pytest.approx(uv)


def test_negative_v_rejected():
    with pytest.raises(DomainError):
        ParabolicPoint(1.0, -0.1)


coord = st.floats(-50, 50, allow_nan=False)


@given(coord, coord)
def test_round_trip_from_cartesian(x, y):
    p = from_cartesian(CartesianPoint(x, y))
    assert p.v >= 0
    if y != 0:
        assert np.sign(p.u) == np.sign(y)
    c = to_cartesian(p)
    scale = max(np.hypot(x, y), 1e-300)
    assert abs(c.x - x) <= 1e-14 * scale + 1e-300
    assert abs(c.y - y) <= 1e-14 * scale + 1e-300


@given(st.floats(-10, 10), st.floats(1e-3, 10))
def test_round_trip_from_parabolic(u, v):
    c = to_cartesian(ParabolicPoint(u, v))
    q = from_cartesian(c)
    assert q.u == pytest.approx(u, rel=1e-12, abs=1e-12)
    assert q.v == pytest.approx(v, rel=1e-12, abs=1e-12)


@given(st.floats(-5, 5), st.floats(0.05, 5))
def test_conformal_jacobian(u, v):
    st_ = FDStencil(1, 4, 1e-3)
    def xy(q):
        return np.stack([0.5 * (q[..., 0] ** 2 - q[..., 1] ** 2), q[..., 0] * q[..., 1]], axis=-1)
    p = np.array([u, v])
    J = np.stack([fd_apply(xy, p, 0, st_), fd_apply(xy, p, 1, st_)], axis=-1)
    sv = np.linalg.svd(J, compute_uv=False)
    assert np.allclose(sv, np.hypot(u, v), rtol=1e-9)


def test_frame_examples():
    f = frame(ParabolicPoint(1.0, 0.0))
    assert np.allclose(f.e_u, [1, 0]) and np.allclose(f.e_v, [0, 1]) and f.h == 1
    assert frame(ParabolicPoint(3.0, 4.0)).h == 5
    f = frame(ParabolicPoint(1.0, 1.0))
    assert np.allclose(f.e_u, np.array([1, 1]) / np.sqrt(2))
    assert np.allclose(f.e_v, np.array([-1, 1]) / np.sqrt(2))


def test_frame_focal_line():
    with pytest.raises(DomainError):
        frame(ParabolicPoint(0.0, 0.0))


@given(st.floats(-5, 5), st.floats(0.01, 5))
def test_frame_orthonormal(u, v):
    f = frame(ParabolicPoint(u, v))
    assert np.dot(f.e_u, f.e_u) == pytest.approx(1)
    assert np.dot(f.e_v, f.e_v) == pytest.approx(1)
    assert abs(np.dot(f.e_u, f.e_v)) < 1e-15


def test_vector_to_cartesian_examples():
    p = ParabolicPoint(1.0, 0.0)
    assert np.allclose(vector_to_cartesian([1, 0, 0], p), [1, 0, 0])
    assert np.allclose(vector_to_cartesian([0, 1, 0], p), [0, 1, 0])


@given(st.floats(-5, 5), st.floats(0.01, 5), st.complex_numbers(max_magnitude=10),
       st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_vector_norm_preserved(u, v, a, b, c):
    f = np.array([a, b, c])
    g = vector_to_cartesian(f, ParabolicPoint(u, v))
    assert np.linalg.norm(g) == pytest.approx(np.linalg.norm(f), rel=1e-13, abs=1e-13)


def test_uv_from_xy_arrays():
    x = np.array([2.0, -2.0, 0.0, 1.0])
    y = np.array([0.0, 0.0, 1.0, -1.0])
    u, v = uv_from_xy(x, y)
    assert np.allclose(0.5 * (u * u - v * v), x) and np.allclose(u * v, y)
    assert np.all(v >= 0)
