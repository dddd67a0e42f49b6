"""Eigenvalue vectors on the torus and intersection with the index cycle.

The torus ``T^r`` is parametrised with period 2, ``z_i = exp(pi i t_i)``, so
an angle ``theta`` is literally a coordinate.  All computations take place in
the universal cover ``R^r``: the subtorus ``{z_i = 1}`` lifts to the walls
``t_i in 2Z`` and a crossing with increasing ``t_i`` counts ``+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from .errors import DegenerateSegment, EndpointOnCycle, HorizonExceeded, HypothesisNotMet, NotElliptic
from .report import Report
from .spectral import PathDescriptor, check_condition_b, jump_sequence

__all__ = [
    "TorusPoint",
    "LiftedPath",
    "IndexCycle",
    "index_cycle",
    "eigenvalue_vector",
    "lifted_arc",
    "iterated_arc",
    "concatenate",
    "translate",
    "path_intersection",
    "arc_intersection",
    "verify_mu_intersect",
    "verify_intersect_divisibility",
]

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class TorusPoint:
    """Point of ``T^r``; coordinates are reduced into ``[0, 2)``."""

    coordinates: Point

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(Fraction(c) % 2 for c in self.coordinates))

    def __len__(self):
        return len(self.coordinates)


@dataclass(frozen=True)
class LiftedPath:
    """Polyline in the universal cover, traversed in the order of ``points``."""

    points: tuple[Point, ...]

    def __post_init__(self):
        points = tuple(tuple(Fraction(c) for c in p) for p in self.points)
        if len(points) < 2:
            raise ValueError("a path needs at least two points")
        if len({len(p) for p in points}) != 1:
            raise ValueError("all points of a path must have the same dimension")
        object.__setattr__(self, "points", points)

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    @property
    def start(self) -> Point:
        return self.points[0]

    @property
    def end(self) -> Point:
        return self.points[-1]

    @property
    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    @property
    def is_closed_in_torus(self) -> bool:
        return all((b - a) % 2 == 0 for a, b in zip(self.start, self.end))


@dataclass(frozen=True)
class IndexCycle:
    """Weighted sum of the co-oriented subtori ``{z_i = 1}``."""

    weights: tuple[int, ...]

    def __len__(self):
        return len(self.weights)


def index_cycle(d: PathDescriptor) -> IndexCycle:
    return IndexCycle(d.signatures)


def _check_iterate(d: PathDescriptor, k: int) -> None:
    h = d.horizon
    if h is not None and k > h:
        raise HorizonExceeded(f"iterate {k} beyond horizon {h}")


def eigenvalue_vector(d: PathDescriptor, k: int) -> TorusPoint:
    """The point ``lambda^k``, coordinates ``k * theta_i mod 2`` in canonical order."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    _check_iterate(d, k)
    return TorusPoint(tuple(k * t for t in d.angles))


def iterated_arc(d: PathDescriptor, k: int, m: int) -> LiftedPath:
    """Lift of the union of the translated generating arcs ``lambda^j A``, ``k <= j <= m``."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    _check_iterate(d, m + 1)
    return LiftedPath(tuple(tuple(j * t for t in d.angles) for j in range(k, m + 2)))


def lifted_arc(d: PathDescriptor, k: int) -> LiftedPath:
    """Lift of ``lambda^k A``, from ``k * theta`` to ``(k + 1) * theta``."""
    return iterated_arc(d, k, k)


def concatenate(first: LiftedPath, second: LiftedPath) -> LiftedPath:
    if first.end != second.start:
        raise ValueError("paths do not share the junction point")
    return LiftedPath(first.points + second.points[1:])


def translate(path: LiftedPath, shift: Sequence[Fraction]) -> LiftedPath:
    shift = tuple(Fraction(s) for s in shift)
    return LiftedPath(tuple(tuple(c + s for c, s in zip(p, shift)) for p in path.points))


def _on_wall(x: Fraction) -> bool:
    return x.denominator == 1 and x.numerator % 2 == 0


def _half_floor(x: Fraction) -> int:
    return x.numerator // (2 * x.denominator)


def path_intersection(path: LiftedPath, cycle: IndexCycle) -> int:
    """Signed, weighted count of wall crossings of ``path``."""
    if path.dimension != len(cycle):
        raise ValueError(f"path dimension {path.dimension} != cycle rank {len(cycle)}")
    total = 0
    for a, b in path.segments:
        for i, (x, y) in enumerate(zip(a, b)):
            if x == y and _on_wall(x):
                raise DegenerateSegment(f"segment {a} -> {b} lies inside wall t_{i} = {x}")
    for p in path.points:
        for i, x in enumerate(p):
            if _on_wall(x):
                raise EndpointOnCycle(f"vertex {p} lies on wall t_{i} = {x}")
    for a, b in path.segments:
        for w, x, y in zip(cycle.weights, a, b):
            if w:
                total += w * (_half_floor(y) - _half_floor(x))
    return total


def _require_elliptic(d: PathDescriptor) -> None:
    if not d.is_elliptic_only:
        raise NotElliptic(
            "torus intersection needs an elliptic-only descriptor "
            f"(loop={d.loop}, mult_minus_one={d.mult_minus_one}, hyperbolic_pairs={d.hyperbolic_pairs})"
        )


def arc_intersection(d: PathDescriptor, k: int) -> int:
    """Intersection index of ``lambda^k A`` with the index cycle."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    _require_elliptic(d)
    return path_intersection(lifted_arc(d, k), index_cycle(d))


def verify_mu_intersect(d: PathDescriptor, K: int) -> Report:
    """Check ``2 <lambda^k A, T> = mu'_k`` for ``k = 1..K``."""
    _require_elliptic(d)
    jumps = jump_sequence(d, K)
    for k, jump in enumerate(jumps, start=1):
        crossing = arc_intersection(d, k)
        if 2 * crossing != jump:
            return Report(False, {"k": k, "intersection": crossing, "jump": jump}, {"K": K})
    return Report(True, None, {"K": K})


def verify_intersect_divisibility(d: PathDescriptor, l: int, K: int) -> Report:
    """Check ``l | <alpha, T>`` for every iterated arc ``lambda^k A u ... u lambda^m A``, ``1 <= k <= m <= K``."""
    _require_elliptic(d)
    condition = check_condition_b(d, l)
    if not condition:
        raise HypothesisNotMet("; ".join(condition.failures))
    crossings = [arc_intersection(d, j) for j in range(1, K + 1)]
    prefix = [0, *accumulate(crossings)]
    for k in range(1, K + 1):
        for m in range(k, K + 1):
            value = prefix[m] - prefix[k - 1]
            if value % l:
                return Report(False, {"k": k, "m": m, "intersection": value}, {"l": l, "K": K})
    return Report(True, None, {"l": l, "K": K, "arcs": K * (K + 1) // 2})
