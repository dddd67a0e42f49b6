"""Seeded generation of descriptors, pools and rotations.

Every family draws exact rationals from ``random.Random(seed)``, so a seed
fixes the instance stream.  Draws that violate a family constraint
(degenerate within the horizon, too close to another angle, ...) are
resampled and counted; a family that rejects more than 99% of its draws is
reported as exhausted instead of looping forever.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Iterator, TypeVar

from .errors import DegenerateRotation, FamilyExhausted
from .rotations import Rotation, make_rotation
from .spectral import (
    Angle,
    DecoratedEigenvalue,
    PathDescriptor,
    first_resonance,
    inverse,
    iteration_key,
)

T = TypeVar("T")

MIN_REJECTIONS = 100


@dataclass(frozen=True)
class DescriptorFamily:
    """Parameters of random descriptors.

    ``horizon=None`` gives every descriptor the largest horizon its angles
    allow.  ``min_gap`` keeps angles apart from each other and from 0, which
    bounds how long two eigenvalues can jump in lockstep.  With
    ``divisor_bias > 1`` about half the descriptors get all signatures and
    ``loop + mult_minus_one`` divisible by a random base divisor so that the
    divisibility conditions hold for non-trivial ``l``.
    """

    max_denominator: int = 1000
    max_elliptic: int = 4
    min_elliptic: int = 0
    max_multiplicity: int = 4
    max_half_dimension: int | None = None
    max_abs_loop: int = 4
    max_mult_minus_one: int = 2
    max_hyperbolic: int = 2
    horizon: int | None = None
    min_gap: Fraction = Fraction(0)
    elliptic_only: bool = False
    divisor_bias: int = 1


@dataclass(frozen=True)
class RotationFamily:
    min_n: int = 1
    max_n: int = 5
    max_denominator: int = 20
    max_abs_angle: int = 2
    horizon: int = 1


@dataclass
class Batch(Generic[T]):
    instances: list[T]
    rejected: int = 0

    def __iter__(self) -> Iterator[T]:
        return iter(self.instances)

    def __len__(self):
        return len(self.instances)

    def __getitem__(self, i):
        return self.instances[i]


class _Sampler:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.accepted = 0
        self.rejected = 0

    def reject(self, why: str) -> None:
        self.rejected += 1
        if self.rejected >= MIN_REJECTIONS and self.rejected > 99 * (self.accepted + 1):
            raise FamilyExhausted(f"{self.rejected} draws rejected for {self.accepted} accepted (last: {why})")

    def accept(self) -> None:
        self.accepted += 1


def _draw_angles(s: _Sampler, fam: DescriptorFamily, count: int, taken=()) -> list[Fraction]:
    angles: list[Fraction] = list(taken)
    fresh: list[Fraction] = []
    while len(fresh) < count:
        q = s.rng.randint(2, fam.max_denominator)
        theta = Fraction(s.rng.randint(1, q - 1), q)
        if fam.horizon is not None and first_resonance(theta) <= fam.horizon:
            s.reject("degenerate within horizon")
        elif theta < fam.min_gap or any(abs(theta - u) < max(fam.min_gap, Fraction(0)) or theta == u for u in angles):
            s.reject("angle too close to another")
        else:
            s.accept()
            angles.append(theta)
            fresh.append(theta)
    return fresh


def _draw_signature(s: _Sampler, fam: DescriptorFamily, base: int | None) -> tuple[int, int]:
    rng = s.rng
    if base is not None:
        sig = base * rng.randint(-2, 2)
        mult = abs(sig) + 2 * rng.randint(0, 1)
        return (mult or 2), sig
    mult = rng.randint(1, fam.max_multiplicity)
    return mult, rng.choice(range(-mult, mult + 1, 2))


def _horizon_for(fam: DescriptorFamily, angles) -> int:
    if fam.horizon is not None:
        return fam.horizon
    return min(first_resonance(t) for t in angles) - 1


def _draw_descriptor(s: _Sampler, fam: DescriptorFamily, angle_pool=None) -> PathDescriptor:
    rng = s.rng
    while True:
        base = rng.randint(1, fam.divisor_bias) if fam.divisor_bias > 1 and rng.random() < 0.5 else None
        if angle_pool is None:
            angles = _draw_angles(s, fam, rng.randint(fam.min_elliptic, fam.max_elliptic))
        else:
            angles = rng.sample(angle_pool, rng.randint(min(fam.min_elliptic, len(angle_pool)), min(fam.max_elliptic, len(angle_pool))))
        horizon = _horizon_for(fam, angles) if angles else None
        entries = []
        for theta in angles:
            mult, sig = _draw_signature(s, fam, base)
            entries.append(DecoratedEigenvalue(Angle(theta, horizon), mult, sig))
        if fam.elliptic_only:
            loop = mm = hyp = 0
        elif base is not None:
            mm = 2 * rng.randint(0, fam.max_mult_minus_one // 2)
            loop = 2 * base * rng.randint(-1, 1) - mm
            hyp = rng.randint(0, fam.max_hyperbolic)
        else:
            mm = rng.randint(0, fam.max_mult_minus_one)
            loop = 2 * rng.randint(-(fam.max_abs_loop // 2), fam.max_abs_loop // 2)
            hyp = rng.randint(0, fam.max_hyperbolic)
        d = PathDescriptor(loop, mm, hyp, tuple(entries))
        if fam.max_half_dimension is not None and d.half_dimension > fam.max_half_dimension:
            s.reject("dimension too large")
            continue
        return d


def generate_descriptors(seed: int, trials: int, family: DescriptorFamily = DescriptorFamily()) -> Batch[PathDescriptor]:
    s = _Sampler(seed)
    out = [_draw_descriptor(s, family) for _ in range(trials)]
    return Batch(out, s.rejected)


def generate_pools(
    seed: int, trials: int, family: DescriptorFamily = DescriptorFamily(), max_pool: int = 10, pool_angles: int = 6
) -> Batch[list[PathDescriptor]]:
    """Pools of descriptors with pairwise distinct iteration invariants.

    All members of a pool draw their angles from one well-separated set.
    """
    s = _Sampler(seed)
    pools = []
    for _ in range(trials):
        angles = sorted(_draw_angles(s, family, pool_angles))
        horizon = _horizon_for(family, angles)
        fam = family if family.horizon is not None else DescriptorFamily(**{**family.__dict__, "horizon": horizon})
        size = s.rng.randint(2, max_pool)
        pool: list[PathDescriptor] = []
        keys = set()
        while len(pool) < size:
            d = _draw_descriptor(s, fam, angle_pool=angles)
            key = iteration_key(d)
            if key in keys:
                s.reject("duplicate invariants in pool")
                continue
            s.accept()
            keys.add(key)
            pool.append(d)
        pools.append(pool)
    return Batch(pools, s.rejected)


def generate_s2_pairs(
    seed: int, trials: int, family: DescriptorFamily = DescriptorFamily(), mutual_inverse: bool = True
) -> Batch[tuple[PathDescriptor, PathDescriptor]]:
    """Pairs of two-dimensional elliptic descriptors.

    Inverse pairs are ``(d, inverse(d))``; the others use two distinct angles
    and arbitrary signs and loops.
    """
    s = _Sampler(seed)
    rng = s.rng
    pairs = []
    for _ in range(trials):
        if mutual_inverse:
            (theta,) = _draw_angles(s, family, 1)
            h = _horizon_for(family, [theta])
            d0 = PathDescriptor(2 * rng.randint(-2, 2), elliptic=(DecoratedEigenvalue(Angle(theta, h), 1, rng.choice((-1, 1))),))
            pairs.append((d0, inverse(d0)))
        else:
            t0, t1 = _draw_angles(s, family, 2)
            h = _horizon_for(family, [t0, t1])
            d0 = PathDescriptor(2 * rng.randint(-2, 2), elliptic=(DecoratedEigenvalue(Angle(t0, h), 1, rng.choice((-1, 1))),))
            d1 = PathDescriptor(2 * rng.randint(-2, 2), elliptic=(DecoratedEigenvalue(Angle(t1, h), 1, rng.choice((-1, 1))),))
            pairs.append((d0, d1))
    return Batch(pairs, s.rejected)


def generate_rotations(seed: int, trials: int, family: RotationFamily = RotationFamily()) -> Batch[Rotation]:
    s = _Sampler(seed)
    rng = s.rng
    out = []
    bound = family.max_abs_angle * family.max_denominator
    while len(out) < trials:
        n = rng.randint(family.min_n, family.max_n)
        raw = []
        for _ in range(n + 1):
            q = rng.randint(1, family.max_denominator)
            raw.append(Fraction(rng.randint(-bound, bound), q) if q > 1 else Fraction(rng.randint(-family.max_abs_angle, family.max_abs_angle)))
        try:
            r = make_rotation(n, raw, family.horizon)
        except DegenerateRotation:
            s.reject("degenerate rotation")
            continue
        s.accept()
        out.append(r)
    return Batch(out, s.rejected)


def generate_instances(seed: int, trials: int, family: DescriptorFamily | RotationFamily) -> Batch:
    """Dispatch on the family type."""
    if isinstance(family, RotationFamily):
        return generate_rotations(seed, trials, family)
    return generate_descriptors(seed, trials, family)
