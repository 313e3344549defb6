"""Perturbation parameters and jet tables of the octahedral model."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from cylcrit.canon import O6_LABELS

ROLES: tuple[str, ...] = ("a", "b", "c")
SIGNS: tuple[str, ...] = ("+", "-")

# Free parameters in line-label order, gauge-pinned l1+ excluded: a2+, b2+, c2+, a3+, ...
FREE_VARIABLES: tuple[str, ...] = tuple(f"{role}{label[1:]}" for label in O6_LABELS[1:] for role in ROLES)

# E coordinates: omega followed by the c-parameters of every line except l1+.
E_C_KEYS: tuple[tuple[int, str], ...] = ((1, "-"), (2, "+"), (2, "-"), (3, "+"), (3, "-"))
E_COORDINATES: tuple[str, ...] = ("omega", *(f"c{j}{eps}" for j, eps in E_C_KEYS))

Pair = tuple[str, str]


class GaugeError(ValueError):
    """Raised when gauge-pinned perturbation parameters are set."""

    pass


def line_index(j: int, eps: str) -> int:
    """Index of line l_j^eps in the fixed label order."""
    if j not in (1, 2, 3) or eps not in SIGNS:
        raise KeyError(f"no line l{j}{eps}")
    return (j - 1) + (0 if eps == "+" else 3)


def _parse_key(key: str | tuple[int, str, str]) -> tuple[int, str, str]:
    if isinstance(key, str):
        if len(key) != 3 or key[0] not in ROLES:
            raise KeyError(f"bad parameter name {key!r}")
        return int(key[1]), key[2], key[0]
    j, eps, role = key
    if role not in ROLES:
        raise KeyError(f"bad axis role {role!r}")
    return int(j), eps, role


@dataclass(frozen=True)
class PerturbationParams:
    """The 18 rotation coefficients a_j^eps, b_j^eps, c_j^eps.

    Stored row-major as (line in label order, role a/b/c). The three
    coefficients of l1+ are pinned to zero to fix the global rotation.
    """

    coeffs: tuple[float, ...] = (0.0,) * 18

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.coeffs)
        if len(values) != 18:
            raise ValueError(f"expected 18 coefficients, got {len(values)}")
        if any(v != 0.0 for v in values[:3]):
            raise GaugeError("a1+, b1+ and c1+ are gauge-fixed to zero")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def from_mapping(cls, values: Mapping[str | tuple[int, str, str], float]) -> "PerturbationParams":
        """Build from names like ``"b2-"`` or keys like ``(2, "-", "b")``."""
        coeffs = [0.0] * 18
        for key, value in values.items():
            j, eps, role = _parse_key(key)
            coeffs[3 * line_index(j, eps) + ROLES.index(role)] = float(value)
        return cls(coeffs=tuple(coeffs))

    @classmethod
    def from_vector(cls, x: np.ndarray) -> "PerturbationParams":
        """Build from the 15 free coordinates in FREE_VARIABLES order."""
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.shape != (15,):
            raise ValueError(f"expected 15 free coordinates, got {x.size}")
        return cls(coeffs=(0.0, 0.0, 0.0, *x.tolist()))

    def vector(self) -> np.ndarray:
        return np.array(self.coeffs[3:])

    def array(self) -> np.ndarray:
        return np.array(self.coeffs).reshape(6, 3)

    def get(self, j: int, eps: str, role: str) -> float:
        return self.coeffs[3 * line_index(j, eps) + ROLES.index(role)]

    def __getitem__(self, key: str | tuple[int, str, str]) -> float:
        return self.get(*_parse_key(key))


@dataclass(frozen=True)
class EPointParams:
    """A point of the subspace E: the angle omega and the five free c-parameters."""

    omega: float = 0.0
    c: tuple[float, float, float, float, float] = (0.0, 0.0, 0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.c)
        if len(values) != 5:
            raise ValueError(f"expected 5 c-parameters, got {len(values)}")
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "c", values)

    @classmethod
    def from_vector(cls, e: np.ndarray) -> "EPointParams":
        """Build from (omega, c1-, c2+, c2-, c3+, c3-)."""
        e = np.asarray(e, dtype=float).reshape(-1)
        if e.shape != (6,):
            raise ValueError(f"expected 6 E coordinates, got {e.size}")
        return cls(omega=float(e[0]), c=tuple(e[1:].tolist()))

    @classmethod
    def from_mapping(cls, omega: float = 0.0, **c: float) -> "EPointParams":
        """Build from keywords like ``c1m=1.0`` or ``c2p=0.3``."""
        values = []
        for j, eps in E_C_KEYS:
            values.append(c.pop(f"c{j}{'p' if eps == '+' else 'm'}", 0.0))
        if c:
            raise KeyError(f"unknown E coordinates: {sorted(c)}")
        return cls(omega=omega, c=tuple(values))

    def vector(self) -> np.ndarray:
        return np.array([self.omega, *self.c])

    def c_of(self, j: int, eps: str) -> float:
        if (j, eps) == (1, "+"):
            return 0.0
        return self.c[E_C_KEYS.index((j, eps))]

    def lift(self) -> PerturbationParams:
        """The unique parameters on E: b2-, a1-, b2+, a3+, b1-, a3- vanish; b3-, a2-, b3+, a2+ equal omega."""
        values: dict[str, float] = {f"c{j}{eps}": self.c_of(j, eps) for j, eps in E_C_KEYS}
        for name in ("b3-", "a2-", "b3+", "a2+"):
            values[name] = self.omega
        return PerturbationParams.from_mapping(values)


def e_lift_matrix() -> np.ndarray:
    """The 15 x 6 matrix mapping E coordinates to free parameters."""
    columns = [EPointParams.from_vector(np.eye(6)[k]).lift().vector() for k in range(6)]
    return np.column_stack(columns)


class JetSource(str, Enum):
    """Where the coefficients of a jet table come from."""

    CLOSED_FORM = "closed_form"
    FINITE_DIFFERENCE = "finite_difference"
    SERIES = "series"


@dataclass(frozen=True)
class JetTable:
    """First- and second-order Taylor coefficients of squared pair distances along a path."""

    pairs: tuple[Pair, ...]
    order1: dict[Pair, float]
    source: JetSource
    order2: dict[Pair, float] | None = None
    error1: dict[Pair, float] | None = None
    error2: dict[Pair, float] | None = None
    flagged: tuple[Pair, ...] = field(default=())

    def first_order_vector(self) -> np.ndarray:
        return np.array([self.order1[pair] for pair in self.pairs])

    def second_order_vector(self) -> np.ndarray:
        if self.order2 is None:
            raise ValueError(f"{self.source.value} jet table has no second-order coefficients")
        return np.array([self.order2[pair] for pair in self.pairs])

    def group_sums(self, groups: tuple[tuple[Pair, ...], ...], order: int = 1) -> tuple[float, ...]:
        """Sum of the order-1 (or order-2) coefficients over each group of pairs."""
        table = self.order1 if order == 1 else self.order2
        if table is None:
            raise ValueError(f"{self.source.value} jet table has no order-{order} coefficients")
        return tuple(sum(table[pair] for pair in group) for group in groups)

    def to_dict(self) -> dict:
        def keyed(table: dict[Pair, float] | None) -> dict[str, float] | None:
            if table is None:
                return None
            return {f"{u},{v}": table[(u, v)] for u, v in self.pairs}

        return {
            "source": self.source.value,
            "order1": keyed(self.order1),
            "order2": keyed(self.order2),
            "error1": keyed(self.error1),
            "error2": keyed(self.error2),
            "flagged": [f"{u},{v}" for u, v in self.flagged],
        }
