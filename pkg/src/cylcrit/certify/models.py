"""Data models of the certification pipeline."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


@dataclass(frozen=True, eq=False)
class FunctionJetFamily:
    """Functions F_u(x) = l_u . x + x^T q_u x + o(|x|^2), one per member label.

    ``linear`` has shape (m, n) and ``quad`` shape (m, n, n). ``group_of``
    assigns each label the subfamily it belongs to.
    """

    var_names: tuple[str, ...]
    labels: tuple[str, ...]
    linear: np.ndarray
    quad: np.ndarray
    group_of: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        linear = np.array(self.linear, dtype=float).reshape(len(self.labels), len(self.var_names))
        quad = np.array(self.quad, dtype=float).reshape(len(self.labels), len(self.var_names), len(self.var_names))
        if not np.allclose(quad, np.swapaxes(quad, 1, 2), atol=1e-12, rtol=0):
            raise ValueError("quadratic parts must be symmetric")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("member labels must be unique")
        unknown = set(self.group_of) - set(self.labels)
        if unknown:
            raise ValueError(f"group_of names unknown members: {sorted(unknown)}")
        linear.setflags(write=False)
        quad.setflags(write=False)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "quad", quad)
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    @property
    def members(self) -> list[tuple[str, np.ndarray, np.ndarray]]:
        return [(label, self.linear[k], self.quad[k]) for k, label in enumerate(self.labels)]

    def groups(self) -> list[list[int]]:
        """Member indices of each subfamily, in subfamily order."""
        count = max(self.group_of.values(), default=-1) + 1
        groups: list[list[int]] = [[] for _ in range(count)]
        for k, label in enumerate(self.labels):
            if label in self.group_of:
                groups[self.group_of[label]].append(k)
        return groups


@dataclass(frozen=True, eq=False)
class DependencyVector:
    """A left-kernel vector mu of the stacked linear parts: mu^T L = 0."""

    mu: np.ndarray
    convex: bool

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(k) for k in np.flatnonzero(np.abs(self.mu) > 1e-12))

    def to_dict(self) -> dict:
        return {"mu": self.mu.tolist(), "convex": self.convex}


@dataclass(frozen=True, eq=False)
class RestrictedForm:
    """A quadratic form restricted to the span of ``basis`` columns: y -> y^T gram y."""

    basis: np.ndarray
    gram: np.ndarray

    @property
    def dimension(self) -> int:
        return self.gram.shape[0]

    def is_orthonormal(self, tol: float = 1e-10) -> bool:
        k = self.basis.shape[1]
        return bool(np.allclose(self.basis.T @ self.basis, np.eye(k), atol=tol, rtol=0))

    def pullback(self, matrix: np.ndarray) -> np.ndarray:
        """Gram matrix in coordinates z with y = matrix @ z."""
        return matrix.T @ self.gram @ matrix


class PositivityVerdict(str, Enum):
    """Outcome of the positivity certifier."""

    POSITIVELY_DEFINED = "positively_defined"
    NOT_POSITIVELY_DEFINED = "not_positively_defined"
    INCONCLUSIVE = "inconclusive"


@dataclass
class WorkLog:
    """Subdivision statistics of one certification run."""

    cells_processed: int = 0
    cells_discharged: int = 0
    generations: int = 0
    max_depth: int = 0
    stalled_cells: int = 0
    blend_weights: int = 0
    witness_starts: int = 0
    budget: int = 0

    def to_dict(self) -> dict:
        return dict(vars(self))


@dataclass(frozen=True, eq=False)
class PositivityCertificate:
    """Verdict on min over the unit sphere of max_a Q_a.

    ``v_constant`` is a certified lower bound of that minimum when the
    verdict is positive; ``witness`` is a unit vector with max_a Q_a <= tolerance
    when it is negative.
    """

    verdict: PositivityVerdict
    v_constant: float | None = None
    witness: np.ndarray | None = None
    work_log: WorkLog = field(default_factory=WorkLog)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "v_constant": self.v_constant,
            "witness": None if self.witness is None else self.witness.tolist(),
            "work_log": self.work_log.to_dict(),
        }


class LQ2BVerdict(str, Enum):
    """Outcome of the sufficient-condition check."""

    STRICT_LOCAL_MAX = "strict_local_max"
    WITHHELD = "withheld"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class LQ2BReport:
    """Results of conditions (A), (B) and (C) and the combined verdict."""

    a_pass: bool
    a_details: tuple[str, ...]
    dependencies: tuple[DependencyVector | None, ...]
    b_pass: bool
    partition: tuple[tuple[str, ...], ...]
    free_variables: tuple[str, ...]
    e_dimension: int
    c_certificate: PositivityCertificate | None
    verdict: LQ2BVerdict

    @property
    def c_pass(self) -> bool:
        return self.c_certificate is not None and self.c_certificate.verdict == PositivityVerdict.POSITIVELY_DEFINED

    def to_dict(self) -> dict:
        return {
            "A": {"pass": self.a_pass, "details": list(self.a_details)},
            "dependencies": [None if d is None else d.to_dict() for d in self.dependencies],
            "B": {"pass": self.b_pass, "partition": [list(p) for p in self.partition], "Y": list(self.free_variables)},
            "e_dimension": self.e_dimension,
            "C": None if self.c_certificate is None else self.c_certificate.to_dict(),
            "verdict": self.verdict.value,
        }
