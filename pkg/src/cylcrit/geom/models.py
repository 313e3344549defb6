"""Value types of the line geometry."""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation as _ScipyRotation

from cylcrit.settings import settings

Vector3 = tuple[float, float, float]


class GeometryError(ValueError):
    """Raised when a line or rotation violates its construction invariants."""

    pass


def _as_vector3(values, name: str) -> Vector3:
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise GeometryError(f"{name} must have exactly 3 coordinates, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError(f"{name} must be finite")
    return (float(arr[0]), float(arr[1]), float(arr[2]))


def canonical_sign(direction: np.ndarray, threshold: float = 1e-12) -> float:
    """Return the sign making the first coordinate above threshold positive."""
    for value in direction:
        if abs(value) > threshold:
            return 1.0 if value > 0 else -1.0
    return 1.0


@dataclass(frozen=True, slots=True)
class TangentLine:
    """An unoriented line tangent to the unit sphere.

    Stored as the touch point x on the sphere and a unit direction xi with
    x . xi = 0. The direction is flipped on construction so that its first
    nonzero coordinate is positive, which identifies (x, xi) with (x, -xi).
    """

    touch_point: Vector3
    direction: Vector3

    def __post_init__(self) -> None:
        x = np.array(_as_vector3(self.touch_point, "touch_point"))
        xi = np.array(_as_vector3(self.direction, "direction"))
        tol = settings.geometry.unit_tolerance
        if abs(np.linalg.norm(x) - 1.0) > tol:
            raise GeometryError(f"touch point {tuple(x)} is not on the unit sphere")
        if abs(np.linalg.norm(xi) - 1.0) > tol:
            raise GeometryError(f"direction {tuple(xi)} is not a unit vector")
        if abs(float(x @ xi)) > tol:
            raise GeometryError(f"direction {tuple(xi)} is not tangent at {tuple(x)}")
        xi = xi * canonical_sign(xi)
        object.__setattr__(self, "touch_point", (float(x[0]), float(x[1]), float(x[2])))
        object.__setattr__(self, "direction", (float(xi[0]), float(xi[1]), float(xi[2])))

    @classmethod
    def from_arrays(cls, touch_point: np.ndarray, direction: np.ndarray) -> "TangentLine":
        """Build a line from arrays that are unit and tangent up to rounding.

        Rotated lines drift by a few ulps; the direction is re-orthogonalized
        against the touch point and both are re-normalized before validation.
        """
        x = np.asarray(touch_point, dtype=float)
        xi = np.asarray(direction, dtype=float)
        x = x / np.linalg.norm(x)
        xi = xi - (xi @ x) * x
        xi = xi / np.linalg.norm(xi)
        return cls(touch_point=_as_vector3(x, "touch_point"), direction=_as_vector3(xi, "direction"))

    @property
    def x(self) -> np.ndarray:
        return np.array(self.touch_point)

    @property
    def xi(self) -> np.ndarray:
        return np.array(self.direction)

    def oriented(self, sign: float = 1.0) -> "OrientedLine":
        """This line through its touch point, oriented along sign * direction."""
        return OrientedLine(point=self.touch_point, direction=tuple(sign * c for c in self.direction))

    def sort_key(self) -> tuple[float, ...]:
        return (*self.touch_point, *self.direction)


@dataclass(frozen=True, slots=True)
class OrientedLine:
    """A line through an arbitrary point with a meaningful unit direction."""

    point: Vector3
    direction: Vector3

    def __post_init__(self) -> None:
        p = _as_vector3(self.point, "point")
        xi = np.array(_as_vector3(self.direction, "direction"))
        if abs(np.linalg.norm(xi) - 1.0) > settings.geometry.unit_tolerance:
            raise GeometryError(f"direction {tuple(xi)} is not a unit vector")
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "direction", (float(xi[0]), float(xi[1]), float(xi[2])))

    @property
    def p(self) -> np.ndarray:
        return np.array(self.point)

    @property
    def xi(self) -> np.ndarray:
        return np.array(self.direction)

    def reversed(self) -> "OrientedLine":
        return OrientedLine(point=self.point, direction=tuple(-c for c in self.direction))

    def shifted(self, s: float) -> "OrientedLine":
        """The same line represented by the point p + s * direction."""
        return OrientedLine(point=tuple(self.p + s * self.xi), direction=self.direction)

    def sort_key(self) -> tuple[float, ...]:
        return (*self.point, *self.direction)


def skew_matrix(axis: np.ndarray) -> np.ndarray:
    """Cross-product matrix K with K @ v = axis x v (batched over leading dims)."""
    axis = np.asarray(axis)
    k = np.zeros((*axis.shape[:-1], 3, 3), dtype=axis.dtype)
    k[..., 0, 1] = -axis[..., 2]
    k[..., 0, 2] = axis[..., 1]
    k[..., 1, 0] = axis[..., 2]
    k[..., 1, 2] = -axis[..., 0]
    k[..., 2, 0] = -axis[..., 1]
    k[..., 2, 1] = axis[..., 0]
    return k


def rotation_matrices(axes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Rodrigues matrices of counterclockwise rotations, batched.

    Args:
        axes: Unit axes of shape (..., 3)
        angles: Angles of shape (...)

    Returns:
        Array of shape (..., 3, 3) in the dtype of the inputs
    """
    axes = np.asarray(axes)
    angles = np.asarray(angles, dtype=axes.dtype)
    k = skew_matrix(axes)
    s = np.sin(angles)[..., None, None]
    c = np.cos(angles)[..., None, None]
    eye = np.broadcast_to(np.eye(3, dtype=axes.dtype), k.shape)
    return eye + s * k + (1 - c) * (k @ k)


@dataclass(frozen=True, slots=True)
class Rotation:
    """Counterclockwise rotation by angle about a unit axis (viewed from the axis tip).

    Composition is matrix composition on column vectors: ``a.compose(b)`` is
    the rotation that applies ``b`` first and ``a`` second.
    """

    axis: Vector3
    angle: float
    _matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        axis = np.array(_as_vector3(self.axis, "axis"))
        n = np.linalg.norm(axis)
        if n == 0.0:
            raise GeometryError("rotation axis must be nonzero")
        if abs(n - 1.0) > settings.geometry.unit_tolerance:
            raise GeometryError(f"rotation axis {tuple(axis)} is not a unit vector")
        object.__setattr__(self, "axis", (float(axis[0]), float(axis[1]), float(axis[2])))
        object.__setattr__(self, "angle", float(self.angle))
        matrix = rotation_matrices(axis, np.float64(self.angle))
        matrix.setflags(write=False)
        object.__setattr__(self, "_matrix", matrix)

    @classmethod
    def identity(cls) -> "Rotation":
        return cls(axis=(0.0, 0.0, 1.0), angle=0.0)

    @classmethod
    def about(cls, axis, angle: float) -> "Rotation":
        """Rotation about a (not necessarily unit) nonzero axis."""
        axis = np.asarray(axis, dtype=float)
        n = np.linalg.norm(axis)
        if n == 0.0:
            raise GeometryError("rotation axis must be nonzero")
        return cls(axis=_as_vector3(axis / n, "axis"), angle=angle)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Rotation":
        """Axis-angle form of a proper orthogonal matrix."""
        rotvec = _ScipyRotation.from_matrix(np.asarray(matrix, dtype=float)).as_rotvec()
        angle = float(np.linalg.norm(rotvec))
        if angle == 0.0:
            return cls.identity()
        return cls(axis=_as_vector3(rotvec / angle, "axis"), angle=angle)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self._matrix @ np.asarray(v, dtype=float)

    def inverse(self) -> "Rotation":
        return Rotation(axis=self.axis, angle=-self.angle)

    def compose(self, first: "Rotation") -> "Rotation":
        """The rotation applying ``first`` and then ``self``."""
        return Rotation.from_matrix(self._matrix @ first.matrix)
