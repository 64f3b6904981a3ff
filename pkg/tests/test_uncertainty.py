import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cegis_clf.errors import DimensionError, InvalidMatrix, TooManyVertices
from cegis_clf.uncertainty import (EllipsoidA, IntervalAB, PolytopeVerts, box_param, contains,
                                   pair_vec, split_vec, vertex_stream)

from conftest import A_CENTROID, A_HI, A_LO, B_4

B2 = np.array([[0.0], [1.0]])


def test_pair_vec_round_trip():
    A, B = np.arange(4.0).reshape(2, 2), np.array([[5.0], [6.0]])
    v = pair_vec(A, B)
    assert v.tolist() == [0, 1, 2, 3, 5, 6]
    A2, B2_ = split_vec(v, 2, 1)
    assert np.array_equal(A, A2) and np.array_equal(B, B2_)


def test_interval_contains_and_errors():
    om = IntervalAB(A_LO, A_HI, B_4)
    assert om.contains(0.5 * (A_LO + A_HI), B_4)
    assert not om.contains(A_HI + 1e-3, B_4)
    assert contains(om, A_LO, B_4)
    with pytest.raises(DimensionError):
        om.contains(np.eye(3), B_4)
    with pytest.raises(InvalidMatrix):
        IntervalAB(A_HI, A_LO, B_4)


def test_ellipsoid_center_inside(vb_spec):
    om = vb_spec.omega
    assert isinstance(om, EllipsoidA)
    assert np.allclose(om.A_center, A_CENTROID)
    assert np.allclose(om.Q, 5 * np.eye(4))
    assert om.contains(A_CENTROID, B2)
    assert not om.contains(A_CENTROID, np.array([[0.0], [2.0]]))


def test_ellipsoid_tangent_points():
    om = EllipsoidA.from_center(A_CENTROID, 5 * np.eye(4), B2)
    r = 1 / np.sqrt(5)
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2))
            E[i, j] = r
            assert om.contains(A_CENTROID + E, B2)
            assert not om.contains(A_CENTROID + 1.001 * E, B2)


def test_polytope_midpoint_and_outside():
    v1 = (np.zeros((2, 2)), B2)
    v2 = (np.eye(2), B2)
    om = PolytopeVerts([v1, v2])
    assert om.contains(0.5 * np.eye(2), B2)
    assert not om.contains(np.diag([0.5, 0.4]), B2)
    assert not om.contains(2 * np.eye(2), B2)


def test_box_param_interval(va_spec):
    bp = box_param(va_spec.omega)
    assert bp.dim == 16 and bp.kind == "box"
    assert np.allclose(bp.lo, A_LO.ravel()) and np.allclose(bp.hi, A_HI.ravel())
    assert bp.constraint(bp.lo) == -1
    A, B = bp.decode(bp.hi)
    assert np.allclose(A, A_HI) and np.allclose(B, B_4)


def test_box_param_ellipsoid():
    om = EllipsoidA.from_center(A_CENTROID, 5 * np.eye(4), B2)
    bp = om.box_param()
    assert np.allclose(bp.hi - bp.lo, 2 / np.sqrt(5))
    z = om.encode(A_CENTROID, B2)
    A, B = bp.decode(z)
    assert np.allclose(A, A_CENTROID) and np.allclose(B, B2)
    assert bp.constraint(z) == pytest.approx(-1.0)
    # corner of the bounding box is outside the ball
    assert bp.constraint(bp.hi) > 0
    assert bp.inside(bp.project(bp.hi), tol=1e-12)


def test_box_param_one_entry():
    om = IntervalAB([[0.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]], np.zeros((2, 1)))
    assert om.box_param().dim == 1


def test_box_param_polytope_round_trip():
    rng = np.random.default_rng(0)
    verts = [(rng.standard_normal((2, 2)), rng.standard_normal((2, 1))) for _ in range(4)]
    om = PolytopeVerts(verts)
    bp = om.box_param()
    assert bp.dim == 3 and bp.kind == "simplex"
    A, B = om.sample(1)
    z = om.encode(A, B)
    assert bp.inside(z, tol=1e-8)
    A2, B2_ = bp.decode(z)
    assert np.allclose(A2, A, atol=1e-8) and np.allclose(B2_, B, atol=1e-8)


def test_vertex_counts(va_spec):
    assert sum(1 for _ in va_spec.omega.vertex_stream()) == 65536
    two = IntervalAB([[0.0, 0.0], [0.0, 0.0]], [[1.0, 2.0], [0.0, 0.0]], np.zeros((2, 1)))
    assert len(list(vertex_stream(two))) == 4
    single = IntervalAB(np.eye(2), np.eye(2), B2)
    assert len(list(single.vertex_stream())) == 1


def test_vertex_stream_is_gray_and_complete():
    lo = np.zeros((2, 2))
    hi = np.array([[1.0, 2.0], [3.0, 0.0]])
    om = IntervalAB(lo, hi, [[0.0], [0.0]], [[0.0], [4.0]])
    verts = [pair_vec(A, B) for A, B in om.vertex_stream()]
    assert len({tuple(v) for v in verts}) == 16
    for a, b in zip(verts, verts[1:]):
        assert np.count_nonzero(a != b) == 1
    chunked = np.vstack([pair_vec(A, B) for As, Bs in om.vertex_chunks(5) for A, B in zip(As, Bs)])
    assert np.array_equal(chunked, np.array(verts))


def test_too_many_vertices():
    n = 7
    om = IntervalAB(np.zeros((n, n)), np.ones((n, n)), np.zeros((n, 1)))
    with pytest.raises(TooManyVertices):
        next(om.vertex_stream())
    with pytest.raises(TypeError):
        vertex_stream(EllipsoidA.from_center(A_CENTROID, np.eye(4), B2))


def test_sample_singleton_and_moments(va_spec):
    single = IntervalAB(np.eye(2), np.eye(2), B2)
    A, B = single.sample(3)
    assert np.array_equal(A, np.eye(2))
    A, _ = va_spec.omega.sample_batch(0, 20000)
    mean = A.mean(axis=0)
    sigma = (A_HI - A_LO) / np.sqrt(12 * 20000)
    assert np.all(np.abs(mean - 0.5 * (A_LO + A_HI)) <= 3 * sigma + 1e-15)


def test_samples_lie_in_set():
    om = EllipsoidA.from_center(A_CENTROID, 5 * np.eye(4), B2)
    A, B = om.sample_batch(1, 500)
    assert all(om.contains(a, b) for a, b in zip(A, B))
    pol = PolytopeVerts([(np.eye(2), B2), (-np.eye(2), B2), (np.zeros((2, 2)), -B2)])
    A, B = pol.sample_batch(2, 50)
    assert all(pol.contains(a, b, 1e-7) for a, b in zip(A, B))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_interval_encode_decode_property(seed):
    rng = np.random.default_rng(seed)
    lo = rng.standard_normal((2, 2))
    hi = lo + rng.uniform(0, 1, (2, 2)) * (rng.random((2, 2)) > 0.3)
    om = IntervalAB(lo, hi, [[0.0], [1.0]])
    A, B = om.sample(rng)
    A2, B2_ = om.box_param().decode(om.encode(A, B))
    assert np.allclose(A2, A) and np.allclose(B2_, B)
