"""Tests for tangent lines, oriented lines and rotations."""

import numpy as np
import pytest

from cylcrit.geom import GeometryError, OrientedLine, Rotation, TangentLine, rotation_matrices, skew_matrix


class TestTangentLine:
    """Test construction invariants of TangentLine."""

    def test_direction_is_canonicalized(self):
        """Test that the first nonzero direction coordinate is made positive."""
        line = TangentLine((1.0, 0.0, 0.0), (0.0, 0.0, -1.0))
        assert line.direction == (0.0, 0.0, 1.0)

    def test_opposite_directions_are_equal(self):
        """Test that (x, xi) and (x, -xi) are the same line."""
        u = TangentLine((0.0, 1.0, 0.0), (0.6, 0.0, 0.8))
        v = TangentLine((0.0, 1.0, 0.0), (-0.6, 0.0, -0.8))
        assert u == v
        assert hash(u) == hash(v)

    def test_touch_point_off_sphere_rejected(self):
        """Test that a touch point not on the unit sphere is rejected."""
        with pytest.raises(GeometryError, match="unit sphere"):
            TangentLine((2.0, 0.0, 0.0), (0.0, 0.0, 1.0))

    def test_non_unit_direction_rejected(self):
        """Test that a direction of the wrong length is rejected."""
        with pytest.raises(GeometryError, match="unit vector"):
            TangentLine((1.0, 0.0, 0.0), (0.0, 0.0, 2.0))

    def test_non_tangent_direction_rejected(self):
        """Test that a direction with a normal component is rejected."""
        with pytest.raises(GeometryError, match="not tangent"):
            TangentLine((1.0, 0.0, 0.0), (1.0, 0.0, 0.0))

    def test_wrong_dimension_rejected(self):
        """Test that vectors must have three coordinates."""
        with pytest.raises(GeometryError, match="exactly 3"):
            TangentLine((1.0, 0.0), (0.0, 1.0))

    def test_from_arrays_repairs_rounding(self):
        """Test that slightly drifted arrays are re-normalized and re-orthogonalized."""
        x = np.array([1.0 + 1e-11, 0.0, 0.0])
        xi = np.array([1e-11, 0.0, 1.0])
        line = TangentLine.from_arrays(x, xi)
        assert np.linalg.norm(line.x) == pytest.approx(1.0, abs=1e-15)
        assert abs(line.x @ line.xi) < 1e-15

    def test_oriented_keeps_sign(self):
        """Test the oriented view of a tangent line."""
        line = TangentLine((1.0, 0.0, 0.0), (0.0, 0.0, 1.0))
        assert line.oriented(-1.0).direction == (-0.0, -0.0, -1.0)
        assert line.oriented().point == (1.0, 0.0, 0.0)


class TestOrientedLine:
    """Test OrientedLine."""

    def test_non_unit_direction_rejected(self):
        """Test that oriented lines need a unit direction."""
        with pytest.raises(GeometryError):
            OrientedLine((0.0, 0.0, 0.0), (1.0, 1.0, 0.0))

    def test_reversed_and_shifted(self):
        """Test reversing and moving the representative point along the line."""
        line = OrientedLine((0.0, 1.0, 0.0), (1.0, 0.0, 0.0))
        assert line.reversed().direction == (-1.0, -0.0, -0.0)
        assert line.shifted(2.5).point == (2.5, 1.0, 0.0)


class TestRotation:
    """Test Rotation and the batched rotation matrices."""

    def test_quarter_turn_about_z(self):
        """Test the counterclockwise convention viewed from the axis tip."""
        r = Rotation.about((0, 0, 1), np.pi / 2)
        assert np.allclose(r.apply([1.0, 0.0, 0.0]), [0.0, 1.0, 0.0], atol=1e-15)

    def test_inverse_composes_to_identity(self):
        """Test that composing with the inverse gives the identity."""
        rng = np.random.default_rng(1)
        for _ in range(20):
            r = Rotation.about(rng.standard_normal(3), rng.uniform(-np.pi, np.pi))
            assert np.allclose(r.compose(r.inverse()).matrix, np.eye(3), atol=1e-12)

    def test_preserves_norms(self):
        """Test that rotations preserve vector norms."""
        rng = np.random.default_rng(2)
        r = Rotation.about(rng.standard_normal(3), 1.234)
        v = rng.standard_normal((10, 3))
        rotated = (r.matrix @ v.T).T
        assert np.allclose(np.linalg.norm(rotated, axis=1), np.linalg.norm(v, axis=1), atol=1e-12)

    def test_compose_applies_argument_first(self):
        """Test that a.compose(b) is the matrix product a @ b on column vectors."""
        a = Rotation.about((0, 0, 1), np.pi / 2)
        b = Rotation.about((1, 0, 0), np.pi / 2)
        assert np.allclose(a.compose(b).matrix, a.matrix @ b.matrix, atol=1e-12)
        # b sends e2 to e3, which a leaves fixed
        assert np.allclose(a.compose(b).apply([0.0, 1.0, 0.0]), [0.0, 0.0, 1.0], atol=1e-12)

    def test_zero_axis_rejected(self):
        """Test that a zero axis is rejected."""
        with pytest.raises(GeometryError, match="nonzero"):
            Rotation.about((0, 0, 0), 1.0)

    def test_identity_from_matrix(self):
        """Test that the identity matrix gives the zero-angle rotation."""
        assert Rotation.from_matrix(np.eye(3)).angle == 0.0

    def test_batched_matrices_match_single(self):
        """Test that batched Rodrigues matrices agree with individual rotations."""
        rng = np.random.default_rng(3)
        axes = rng.standard_normal((4, 3))
        axes /= np.linalg.norm(axes, axis=1, keepdims=True)
        angles = rng.uniform(-3, 3, 4)
        batched = rotation_matrices(axes, angles)
        for k in range(4):
            assert np.allclose(batched[k], Rotation(tuple(axes[k]), angles[k]).matrix, atol=1e-14)

    def test_skew_matrix_is_cross_product(self):
        """Test that skew_matrix(a) @ v equals a x v."""
        a = np.array([0.3, -1.2, 2.0])
        v = np.array([1.0, 0.5, -0.7])
        assert np.allclose(skew_matrix(a) @ v, np.cross(a, v))
