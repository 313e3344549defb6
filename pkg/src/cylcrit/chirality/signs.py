"""Signs of oriented skew pairs and triples, and the census of a configuration."""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from cylcrit.canon import LineConfiguration
from cylcrit.geom import OrientedLine

from .models import ChiralityError, LineTriple, degeneracy_tolerance

logger = logging.getLogger(__name__)


def pair_sign(u: OrientedLine, v: OrientedLine) -> int:
    """Sign of det[xi_u, xi_v, p_v - p_u] for two skew oriented lines.

    Examples:
        >>> pair_sign(OrientedLine((0, 0, 0), (1, 0, 0)), OrientedLine((0, 0, 1), (0, 1, 0)))
        1

    Raises:
        ChiralityError: If the lines are parallel or intersect
    """
    tol = degeneracy_tolerance()
    if abs(float(u.xi @ v.xi)) >= 1 - tol:
        raise ChiralityError("lines are parallel", "parallel")
    n = np.cross(u.xi, v.xi)
    det = float(n @ (v.p - u.p))
    if abs(det) / float(np.linalg.norm(n)) < tol:
        raise ChiralityError("lines intersect", "intersecting")
    return 1 if det > 0 else -1


def triple_sign(triple: LineTriple) -> int:
    """Product of the three pair signs; independent of the line orientations.

    Raises:
        ChiralityError: If the triple is not in generic position or a pair intersects
    """
    if not triple.is_generic():
        raise ChiralityError("directions share a common parallel plane", "generic_position")
    a, b, c = triple.lines
    return pair_sign(a, b) * pair_sign(a, c) * pair_sign(b, c)


@dataclass(frozen=True)
class TripleRecord:
    labels: tuple[str, str, str]
    sign: int | None
    condition: str | None = None


@dataclass(frozen=True)
class TripleCensus:
    """Counts of positive, negative and degenerate triples with the per-triple table."""

    n_plus: int
    n_minus: int
    n_degenerate: int
    triples: tuple[TripleRecord, ...]

    def to_dict(self) -> dict:
        return {
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "n_degenerate": self.n_degenerate,
            "triples": [
                {"labels": list(r.labels), "sign": r.sign, "condition": r.condition} for r in self.triples
            ],
        }


def triple_census(cfg: LineConfiguration) -> TripleCensus:
    """Classify every triple of lines of the configuration."""
    records = []
    for i, j, k in itertools.combinations(range(len(cfg)), 3):
        labels = (cfg.labels[i], cfg.labels[j], cfg.labels[k])
        try:
            sign = triple_sign(LineTriple.of([cfg.lines[i], cfg.lines[j], cfg.lines[k]]))
        except ChiralityError as e:
            records.append(TripleRecord(labels=labels, sign=None, condition=e.condition))
            continue
        records.append(TripleRecord(labels=labels, sign=sign))
    census = TripleCensus(
        n_plus=sum(r.sign == 1 for r in records),
        n_minus=sum(r.sign == -1 for r in records),
        n_degenerate=sum(r.sign is None for r in records),
        triples=tuple(records),
    )
    logger.debug(f"Census: {census.n_plus} positive, {census.n_minus} negative, {census.n_degenerate} degenerate")
    return census
