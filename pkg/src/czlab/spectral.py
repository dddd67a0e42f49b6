"""Iteration invariants of strongly non-degenerate symplectic paths.

A path is represented by the data that governs the Conley-Zehnder index of
its iterates: the mean index of the loop factor, the negative hyperbolic
multiplicity, the (index-inert) positive hyperbolic block and the elliptic
eigenvalues ``exp(pi i theta)``, ``0 < theta < 1``, decorated with their
multiplicity and Krein signature.

Irrational angles are modelled by exact rationals together with a horizon:
an angle is admissible up to horizon ``K`` when no iterate ``k <= K`` has
``k * theta / 2`` integral, i.e. no iterate picks up the eigenvalue 1.
Every integer sequence below is exact and is only defined up to the horizon
of the descriptor that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    Ambiguous,
    DescriptorError,
    HorizonExceeded,
    NoMatch,
    NonDegeneracyViolation,
    OddLoopError,
    SignatureParityError,
)

__all__ = [
    "Angle",
    "DecoratedEigenvalue",
    "PathDescriptor",
    "IndexSequence",
    "JumpSequence",
    "DivisibilityReport",
    "WitnessSearch",
    "make_descriptor",
    "first_resonance",
    "validate_descriptor",
    "jump_a",
    "cz_index",
    "mean_index",
    "jump_sequence",
    "index_sequence",
    "direct_sum",
    "inverse",
    "decorated_spectrum",
    "iteration_key",
    "common_denominator",
    "witness_search_bound",
    "check_condition_b",
    "check_condition_a",
    "reconstruct_from_jumps",
]


def first_resonance(theta: Fraction) -> int:
    """Smallest ``k >= 1`` with ``k * theta / 2`` an integer."""
    return (Fraction(theta) / 2).denominator


@dataclass(frozen=True)
class Angle:
    """Logarithmic eigenvalue ``theta`` of ``exp(pi i theta)``.

    Equality and ordering only look at ``value``; the horizon is bookkeeping.
    """

    value: Fraction
    horizon: int = field(compare=False)

    def __post_init__(self):
        value = Fraction(self.value)
        object.__setattr__(self, "value", value)
        if not 0 < value < 1:
            raise DescriptorError(f"angle {value} outside (0, 1)")
        if not isinstance(self.horizon, int) or self.horizon < 1:
            raise DescriptorError(f"horizon must be a positive integer, got {self.horizon!r}")
        k = first_resonance(value)
        if k <= self.horizon:
            raise NonDegeneracyViolation(
                f"iterate {k} of angle {value} is degenerate "
                f"({k}*{value}/2 is an integer) within horizon {self.horizon}",
                k=k,
            )

    def half_floor(self, k: int) -> int:
        """``floor(k * theta / 2)`` in integer arithmetic."""
        return (k * self.value.numerator) // (2 * self.value.denominator)

    def with_horizon(self, horizon: int) -> Angle:
        return Angle(self.value, horizon)


@dataclass(frozen=True)
class DecoratedEigenvalue:
    angle: Angle
    multiplicity: int
    signature: int

    def __post_init__(self):
        m, s = self.multiplicity, self.signature
        if not isinstance(m, int) or m < 1:
            raise DescriptorError(f"multiplicity must be a positive integer, got {m!r}")
        if abs(s) > m or (m - s) % 2:
            raise SignatureParityError(
                f"signature {s} impossible for multiplicity {m} "
                "(need |signature| <= multiplicity, same parity)"
            )

    @property
    def theta(self) -> Fraction:
        return self.angle.value


def _merge_elliptic(entries: Iterable[DecoratedEigenvalue]) -> tuple[DecoratedEigenvalue, ...]:
    merged: dict[Fraction, DecoratedEigenvalue] = {}
    for e in entries:
        prev = merged.get(e.theta)
        if prev is None:
            merged[e.theta] = e
        else:
            horizon = min(prev.angle.horizon, e.angle.horizon)
            merged[e.theta] = DecoratedEigenvalue(
                Angle(e.theta, horizon),
                prev.multiplicity + e.multiplicity,
                prev.signature + e.signature,
            )
    return tuple(merged[t] for t in sorted(merged))


@dataclass(frozen=True)
class PathDescriptor:
    """Loop part, negative/positive hyperbolic blocks and elliptic spectrum.

    Construction puts the elliptic entries in canonical order (increasing
    angle) and merges entries sharing an angle, so two descriptors with the
    same invariants compare equal.
    """

    loop: int = 0
    mult_minus_one: int = 0
    hyperbolic_pairs: int = 0
    elliptic: tuple[DecoratedEigenvalue, ...] = ()

    def __post_init__(self):
        for name in ("loop", "mult_minus_one", "hyperbolic_pairs"):
            if not isinstance(getattr(self, name), int):
                raise DescriptorError(f"{name} must be an integer")
        if self.loop % 2:
            raise OddLoopError(f"loop part {self.loop} is odd; a loop has even mean index")
        if self.mult_minus_one < 0 or self.hyperbolic_pairs < 0:
            raise DescriptorError("block dimensions must be non-negative")
        object.__setattr__(self, "elliptic", _merge_elliptic(self.elliptic))

    @property
    def horizon(self) -> int | None:
        """Largest admissible iterate, ``None`` when there is no elliptic part."""
        if not self.elliptic:
            return None
        return min(e.angle.horizon for e in self.elliptic)

    @property
    def angles(self) -> tuple[Fraction, ...]:
        return tuple(e.theta for e in self.elliptic)

    @property
    def signatures(self) -> tuple[int, ...]:
        return tuple(e.signature for e in self.elliptic)

    @property
    def half_dimension(self) -> int:
        return self.hyperbolic_pairs + self.mult_minus_one + sum(e.multiplicity for e in self.elliptic)

    @property
    def total_dimension(self) -> int:
        return 2 * self.half_dimension

    @property
    def loop_plus_mult(self) -> int:
        return self.loop + self.mult_minus_one

    @property
    def is_elliptic_only(self) -> bool:
        return self.loop == 0 and self.mult_minus_one == 0 and self.hyperbolic_pairs == 0

    @property
    def weakly_nondegenerate(self) -> bool:
        # some eigenvalue differs from 1 (positive hyperbolic blocks aside)
        return bool(self.elliptic) or self.mult_minus_one > 0


def make_descriptor(
    elliptic: Iterable[tuple] = (),
    horizon: int = 1,
    loop: int = 0,
    mult_minus_one: int = 0,
    hyperbolic_pairs: int = 0,
) -> PathDescriptor:
    """Build a descriptor from ``(theta, multiplicity, signature)`` triples."""
    entries = [
        DecoratedEigenvalue(Angle(Fraction(theta), horizon), multiplicity, signature)
        for theta, multiplicity, signature in elliptic
    ]
    return PathDescriptor(loop, mult_minus_one, hyperbolic_pairs, tuple(entries))


@dataclass(frozen=True)
class IndexSequence:
    """``values[k-1]`` is the Conley-Zehnder index of the ``k``-th iterate."""

    values: tuple[int, ...]

    @property
    def horizon(self) -> int:
        return len(self.values)

    def at(self, k: int) -> int:
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class JumpSequence:
    """``values[k-1] = mu_{k+1} - mu_k``."""

    values: tuple[int, ...]

    @property
    def horizon(self) -> int:
        return len(self.values)

    def at(self, k: int) -> int:
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def validate_descriptor(d: PathDescriptor, K: int) -> PathDescriptor:
    """Return ``d`` with every angle checked and re-bound to horizon ``K``."""
    if not isinstance(K, int) or K < 1:
        raise DescriptorError(f"horizon must be a positive integer, got {K!r}")
    elliptic = tuple(
        DecoratedEigenvalue(e.angle.with_horizon(K), e.multiplicity, e.signature) for e in d.elliptic
    )
    return replace(d, elliptic=elliptic)


def _require_horizon(d: PathDescriptor, needed: int) -> None:
    h = d.horizon
    if h is not None and needed > h:
        raise HorizonExceeded(f"iterate {needed} requested beyond horizon {h}")


def jump_a(angle: Angle, k: int) -> int:
    """1 if the eigenvalue jumps between iterates ``k`` and ``k+1``, else 0."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k + 1 > angle.horizon:
        raise HorizonExceeded(f"jump at k={k} needs iterate {k + 1} > horizon {angle.horizon}")
    return angle.half_floor(k + 1) - angle.half_floor(k)


def cz_index(d: PathDescriptor) -> int:
    return d.loop + d.mult_minus_one + sum(d.signatures)


def mean_index(d: PathDescriptor) -> Fraction:
    return d.loop + d.mult_minus_one + sum((e.signature * e.theta for e in d.elliptic), Fraction(0))


def _jumps(d: PathDescriptor, K: int) -> list[int]:
    base = d.loop_plus_mult
    out = [base] * K
    for e in d.elliptic:
        if e.signature == 0:
            continue
        step = 2 * e.signature
        prev = e.angle.half_floor(1)
        for k in range(1, K + 1):
            cur = e.angle.half_floor(k + 1)
            if cur != prev:
                out[k - 1] += step
            prev = cur
    return out


def jump_sequence(d: PathDescriptor, K: int) -> JumpSequence:
    _require_horizon(d, K + 1)
    return JumpSequence(tuple(_jumps(d, K)))


def index_sequence(d: PathDescriptor, K: int) -> IndexSequence:
    _require_horizon(d, K)
    mu = cz_index(d)
    values = [mu]
    for jump in _jumps(d, K - 1):
        mu += jump
        values.append(mu)
    return IndexSequence(tuple(values))


def direct_sum(d1: PathDescriptor, d2: PathDescriptor) -> PathDescriptor:
    return PathDescriptor(
        d1.loop + d2.loop,
        d1.mult_minus_one + d2.mult_minus_one,
        d1.hyperbolic_pairs + d2.hyperbolic_pairs,
        d1.elliptic + d2.elliptic,
    )


def inverse(d: PathDescriptor) -> PathDescriptor:
    """Invariants of the inverse path.

    ``loop + mult_minus_one`` and every signature change sign; the sign change
    is pushed into the loop part so the negative hyperbolic block keeps its
    (non-negative) dimension.
    """
    elliptic = tuple(replace(e, signature=-e.signature) for e in d.elliptic)
    return PathDescriptor(-d.loop - 2 * d.mult_minus_one, d.mult_minus_one, d.hyperbolic_pairs, elliptic)


def decorated_spectrum(d: PathDescriptor) -> tuple[tuple[Fraction, int], ...]:
    """Pairs ``(theta, signature)`` with non-zero signature."""
    return tuple((e.theta, e.signature) for e in d.elliptic if e.signature)


def iteration_key(d: PathDescriptor) -> tuple:
    """The invariants that determine the whole index sequence."""
    return (d.loop_plus_mult, decorated_spectrum(d))


def common_denominator(d: PathDescriptor) -> int:
    return lcm(1, *(t.denominator for t in d.angles))


def witness_search_bound(d: PathDescriptor, l: int) -> int:
    return 4 * l * common_denominator(d)


@dataclass(frozen=True)
class DivisibilityReport:
    holds: bool
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.holds


def check_condition_b(d: PathDescriptor, l: int) -> DivisibilityReport:
    """``2l | loop + mult_minus_one`` and ``l`` divides every signature."""
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    failures = []
    if d.loop_plus_mult % (2 * l):
        failures.append(f"{2 * l} does not divide loop + mult_minus_one = {d.loop_plus_mult}")
    for e in d.elliptic:
        if e.signature % l:
            failures.append(f"{l} does not divide signature {e.signature} of theta = {e.theta}")
    return DivisibilityReport(not failures, tuple(failures))


@dataclass(frozen=True)
class WitnessSearch:
    """Outcome of scanning ``mu'_1 .. mu'_K`` for a jump not divisible by ``2l``."""

    l: int
    scanned: int
    witness: int | None = None
    jump: int | None = None

    @property
    def holds(self) -> bool:
        return self.witness is None

    def __bool__(self):
        return self.holds


def check_condition_a(d: PathDescriptor, l: int, K: int) -> WitnessSearch:
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    jumps = jump_sequence(d, K)
    for k, jump in enumerate(jumps, start=1):
        if jump % (2 * l):
            return WitnessSearch(l, K, witness=k, jump=jump)
    return WitnessSearch(l, K)


def reconstruct_from_jumps(jumps: JumpSequence | Sequence[int], pool: Sequence[PathDescriptor]) -> PathDescriptor:
    """Identify the pool member generating ``jumps``.

    Raises ``NoMatch`` when nobody agrees over the whole horizon and
    ``Ambiguous`` when several members do.
    """
    target = tuple(jumps)
    K = len(target)
    matches = [d for d in pool if tuple(jump_sequence(d, K)) == target]
    if not matches:
        raise NoMatch(f"no pool member reproduces the {K} given jumps")
    if len(matches) > 1:
        raise Ambiguous(f"{len(matches)} pool members agree on all {K} jumps", matches)
    return matches[0]
