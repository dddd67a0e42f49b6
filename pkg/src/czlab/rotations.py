"""True rotations of CP^n and the spectral data of pseudo-rotations.

A rotation is generated by ``Q = sum a_i |z_i|^2`` with the symplectic form
normalised so that a line has area 1.  Its eigenvalues are kept sorted and
normalised to ``sum a_i = 0``.  Mean indices are stored in index units
(``delta = 2(n+1) * action``); actions are plain rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor
from typing import NamedTuple, Sequence

from .errors import (
    DegenerateRotation,
    DuplicateAction,
    InvalidTable,
    NotBalanced,
    RecappingFailed,
    WindowOnSpectrum,
    WrongDimension,
)
from .report import Report
from .spectral import (
    Angle,
    DecoratedEigenvalue,
    PathDescriptor,
    cz_index,
    direct_sum,
    index_sequence,
    inverse,
    mean_index,
)

__all__ = [
    "Rotation",
    "FixedPointTable",
    "MarkedSpectrum",
    "Multiplier",
    "make_rotation",
    "is_trivial_rotation",
    "trivial_mean_indices",
    "rotation_block",
    "fixed_point_descriptor",
    "recapped_fixed_points",
    "action_spectrum",
    "table_spectrum",
    "rotation_from_action_spectrum",
    "is_balanced",
    "matching_rotation",
    "floquet_multipliers",
    "check_matching_hypotheses",
    "resonance_lattice",
    "s2_antisymmetry_check",
]


def _first_integral_multiple(x: Fraction) -> int:
    # smallest k >= 1 with k*x an integer
    return Fraction(x).denominator


@dataclass(frozen=True)
class Rotation:
    n: int
    angles: tuple[Fraction, ...]
    horizon: int = field(default=1, compare=False)

    def __post_init__(self):
        angles = tuple(Fraction(a) for a in self.angles)
        object.__setattr__(self, "angles", angles)
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if len(angles) != self.n + 1:
            raise ValueError(f"CP^{self.n} needs {self.n + 1} angles, got {len(angles)}")
        if list(angles) != sorted(angles):
            raise ValueError("angles must be sorted increasingly")
        if sum(angles) != 0:
            raise ValueError(f"angles must sum to zero, got {sum(angles)}")
        if self.horizon < 1:
            raise ValueError("horizon must be positive")
        for i, j in combinations(range(self.n + 1), 2):
            k = _first_integral_multiple(angles[j] - angles[i])
            if k <= self.horizon:
                raise DegenerateRotation(
                    f"{k}*(a_{j} - a_{i}) = {k * (angles[j] - angles[i])} is an integer "
                    f"within horizon {self.horizon}"
                )


def make_rotation(n: int, raw_angles: Sequence, horizon: int = 1) -> Rotation:
    """Sort the eigenvalues, subtract their mean and check non-degeneracy."""
    raw = sorted(Fraction(a) for a in raw_angles)
    if len(raw) != n + 1:
        raise ValueError(f"CP^{n} needs {n + 1} angles, got {len(raw)}")
    mean = sum(raw, Fraction(0)) / (n + 1)
    return Rotation(n, tuple(a - mean for a in raw), horizon)


def is_trivial_rotation(n: int, raw_angles: Sequence) -> bool:
    """Whether ``Q`` generates the identity of the universal cover.

    The time-one path must close up (``a_i - a_j`` integral) and the loop must
    have trivial Maslov class, i.e. half its mean index ``(n+1) a_i`` at a
    fixed point must vanish modulo ``n+1``.  Both are evaluated for the
    normalised eigenvalues.
    """
    raw = [Fraction(a) for a in raw_angles]
    if len(raw) != n + 1:
        raise ValueError(f"CP^{n} needs {n + 1} angles, got {len(raw)}")
    mean = sum(raw, Fraction(0)) / (n + 1)
    a = [x - mean for x in raw]
    closes = all((x - a[0]).denominator == 1 for x in a)
    half_mean = (n + 1) * a[0]
    return closes and half_mean.denominator == 1 and half_mean.numerator % (n + 1) == 0


def trivial_mean_indices(r: Rotation) -> tuple[Fraction, ...]:
    return tuple(2 * (r.n + 1) * a for a in r.angles)


def rotation_block(c: Fraction, horizon: int) -> PathDescriptor:
    """Invariants of the rotation path ``t -> exp(2 pi i c t)`` of one complex line.

    Its mean index is ``2c``; the nearest even integer goes into the loop part
    and the remainder ``2c - loop`` in ``(-1, 1)`` is the short rotation.
    """
    c = Fraction(c)
    twice = 2 * c
    if c.denominator == 1:
        raise DegenerateRotation(f"rotation by 2*pi*{c} has the eigenvalue 1")
    if twice.denominator == 1:
        # rotation by pi: negative hyperbolic class
        return PathDescriptor(loop=int(twice) - 1, mult_minus_one=1)
    loop = 2 * floor(c + Fraction(1, 2))
    short = twice - loop
    sign = 1 if short > 0 else -1
    return PathDescriptor(loop=loop, elliptic=(DecoratedEigenvalue(Angle(abs(short), horizon), 1, sign),))


def fixed_point_descriptor(r: Rotation, i: int) -> PathDescriptor:
    """Linearised flow at the ``i``-th axis with the trivial capping."""
    d = PathDescriptor()
    for j, a in enumerate(r.angles):
        if j != i:
            d = direct_sum(d, rotation_block(r.angles[i] - a, r.horizon))
    return d


@dataclass(frozen=True)
class FixedPointTable:
    """Capped fixed points labelled by index: ``delta[i]`` is the mean index of
    the point with Conley-Zehnder index ``2i - n``."""

    n: int
    delta: tuple[Fraction, ...]
    descriptors: tuple[PathDescriptor, ...] | None = None

    def __post_init__(self):
        n = self.n
        delta = tuple(Fraction(x) for x in self.delta)
        object.__setattr__(self, "delta", delta)
        if not isinstance(n, int) or n < 1:
            raise InvalidTable(f"n must be a positive integer, got {n!r}")
        if len(delta) != n + 1:
            raise InvalidTable(f"CP^{n} has {n + 1} fixed points, got {len(delta)} mean indices")
        for i, x in enumerate(delta):
            if abs(x - (2 * i - n)) >= n:
                raise InvalidTable(f"|delta[{i}] - ({2 * i - n})| = {abs(x - (2 * i - n))} is not < {n}")
        if any(b <= a for a, b in zip(delta, delta[1:])):
            raise InvalidTable("mean indices must increase strictly with the index")
        # label n+1 carries delta[0] + 2(n+1); the marked spectrum stays monotone
        if delta[-1] >= delta[0] + 2 * (n + 1):
            raise InvalidTable("delta[n] must stay below delta[0] + 2(n+1)")
        if self.descriptors is not None:
            descriptors = tuple(self.descriptors)
            object.__setattr__(self, "descriptors", descriptors)
            if len(descriptors) != n + 1:
                raise InvalidTable("one descriptor per fixed point is required")
            for i, d in enumerate(descriptors):
                if d.half_dimension != n:
                    raise InvalidTable(f"descriptor {i} has dimension {d.total_dimension}, expected {2 * n}")
                if cz_index(d) != 2 * i - n:
                    raise InvalidTable(f"descriptor {i} has index {cz_index(d)}, expected {2 * i - n}")
                if mean_index(d) != delta[i]:
                    raise InvalidTable(f"descriptor {i} has mean index {mean_index(d)}, table says {delta[i]}")


def recapped_fixed_points(r: Rotation) -> FixedPointTable:
    """Cap every axis so that its index lies in ``[-n, n]`` and order by index."""
    n, period = r.n, 2 * (r.n + 1)
    slots: dict[int, tuple[Fraction, PathDescriptor]] = {}
    for i, delta0 in enumerate(trivial_mean_indices(r)):
        d = fixed_point_descriptor(r, i)
        mu = cz_index(d)
        capped = (mu + n) % period - n
        shift = capped - mu
        label = (capped + n) // 2
        if label in slots:
            raise RecappingFailed(f"two fixed points recap to index {capped}")
        recapped = PathDescriptor(d.loop + shift, d.mult_minus_one, d.hyperbolic_pairs, d.elliptic)
        slots[label] = (delta0 + shift, recapped)
    if sorted(slots) != list(range(n + 1)):
        raise RecappingFailed(f"recapped labels {sorted(slots)} are not 0..{n}")
    delta = tuple(slots[i][0] for i in range(n + 1))
    if sum(delta) != 0:
        raise RecappingFailed(f"recapped mean indices sum to {sum(delta)}, not 0")
    try:
        return FixedPointTable(n, delta, tuple(slots[i][1] for i in range(n + 1)))
    except InvalidTable as exc:
        raise RecappingFailed(str(exc)) from exc


@dataclass(frozen=True)
class MarkedSpectrum:
    """Window of a marked spectrum; label ``l`` carries index ``2l - n``."""

    n: int
    labels: tuple[int, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values differ in length")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("marked spectrum must be strictly increasing")
        if any(b != a + 1 for a, b in zip(self.labels, self.labels[1:])):
            raise ValueError("labels of a window must be consecutive")

    def value(self, label: int) -> Fraction:
        return self.values[self.labels.index(label)]

    def index(self, label: int) -> int:
        return 2 * label - self.n

    def rows(self) -> list[tuple[int, int, Fraction]]:
        return [(l, self.index(l), v) for l, v in zip(self.labels, self.values)]


def _window(window) -> tuple[Fraction, Fraction]:
    lo, hi = (Fraction(x) for x in window)
    if lo >= hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    return lo, hi


def _lattice_window(n: int, base: Sequence[Fraction], label_offset: int, window) -> MarkedSpectrum:
    # base: one period of the spectrum, increasing; base[i] + q carries label i + (n+1)q + label_offset
    lo, hi = _window(window)
    rows = []
    for i, b in enumerate(base):
        for q in range(floor(lo - b), ceil(hi - b) + 1):
            v = b + q
            if v == lo or v == hi:
                raise WindowOnSpectrum(f"window bound {v} is a spectrum point")
            if lo < v < hi:
                rows.append((i + (n + 1) * q + label_offset, v))
    rows.sort()
    return MarkedSpectrum(n, tuple(l for l, _ in rows), tuple(v for _, v in rows))


def action_spectrum(r: Rotation, window) -> MarkedSpectrum:
    """Actions ``a_i + m`` inside ``window``, marked by the zero-sum rule.

    Sliding a run of ``n + 1`` consecutive spectrum points one step raises its
    sum by exactly 1, so exactly one run sums to zero; it gets labels ``0..n``.
    """
    base = sorted(a % 1 for a in r.angles)
    if len(set(base)) != len(base):
        raise DuplicateAction("two fixed points share an action")
    run_sum = sum(base)
    assert run_sum.denominator == 1
    return _lattice_window(r.n, base, int(run_sum), window)


def table_spectrum(t: FixedPointTable, window) -> MarkedSpectrum:
    """Marked (normalised) index spectrum of a table, ``delta / 2(n+1)`` plus integers."""
    base = [x / (2 * (t.n + 1)) for x in t.delta]
    return _lattice_window(t.n, base, 0, window)


def rotation_from_action_spectrum(n: int, values: Sequence[Fraction], horizon: int = 1) -> Rotation:
    """Recover the rotation from an unmarked window of its action spectrum."""
    values = sorted(Fraction(v) for v in values)
    runs = [values[p : p + n + 1] for p in range(len(values) - n) if sum(values[p : p + n + 1]) == 0]
    if len(runs) != 1:
        raise ValueError(f"expected exactly one zero-sum run of {n + 1} points, found {len(runs)}")
    return Rotation(n, tuple(runs[0]), horizon)


def is_balanced(t: FixedPointTable) -> bool:
    return sum(t.delta) == 0


def matching_rotation(t: FixedPointTable, horizon: int = 1) -> Rotation:
    """The rotation whose recapped mean indices reproduce ``t.delta``."""
    if not is_balanced(t):
        raise NotBalanced(f"mean indices sum to {sum(t.delta)}")
    r = Rotation(t.n, tuple(x / (2 * (t.n + 1)) for x in t.delta), horizon)
    if recapped_fixed_points(r).delta != t.delta:
        raise RecappingFailed("matching rotation does not reproduce the table")
    return r


class Multiplier(NamedTuple):
    """First-type eigenvalue ``exp(pi i value)`` at a fixed point, ``value in (-1, 1)``."""

    partner: int
    value: Fraction

    @property
    def theta(self) -> Fraction:
        return abs(self.value)

    @property
    def krein_sign(self) -> int:
        return 1 if self.value > 0 else -1


def _reduce(x: Fraction) -> Fraction:
    y = x % 2
    return y - 2 if y > 1 else y


def floquet_multipliers(r: Rotation, i: int) -> tuple[Multiplier, ...]:
    out = []
    for j, a in enumerate(r.angles):
        if j == i:
            continue
        v = _reduce(2 * (r.angles[i] - a))
        if v == 0 or v == 1:
            raise DegenerateRotation(f"multiplier of x_{i} against x_{j} is real")
        out.append(Multiplier(j, v))
    return tuple(out)


def check_matching_hypotheses(t: FixedPointTable) -> Report:
    """All first-type eigenvalues ``exp(2 pi i (delta_i - delta_j) / 2(n+1))`` distinct."""
    r = matching_rotation(t)
    seen: dict[Fraction, tuple[int, int]] = {}
    collisions = []
    points = {}
    for i in range(t.n + 1):
        mults = floquet_multipliers(r, i)
        points[str(i)] = [str(m.value) for m in mults]
        for m in mults:
            key = m.value
            if key in seen:
                collisions.append({"pairs": [list(seen[key]), [i, m.partner]], "value": str(key)})
            else:
                seen[key] = (i, m.partner)
    first = collisions[0] if collisions else None
    return Report(not collisions, first, {"multipliers": points, "collisions": len(collisions)})


def resonance_lattice(t: FixedPointTable, bound: int) -> list[tuple[int, ...]]:
    """Non-zero ``r`` with ``|r_i| <= bound`` and ``sum r_i delta_i = 0`` mod ``2(n+1)``."""
    period = 2 * (t.n + 1)
    out = []
    for vec in product(range(-bound, bound + 1), repeat=t.n + 1):
        if any(vec) and (sum(c * x for c, x in zip(vec, t.delta)) % period) == 0:
            out.append(vec)
    return out


def _require_s2_point(d: PathDescriptor, name: str) -> None:
    if d.mult_minus_one or d.hyperbolic_pairs or len(d.elliptic) != 1 or d.elliptic[0].multiplicity != 1:
        raise WrongDimension(f"{name} is not a two-dimensional elliptic descriptor")


def s2_antisymmetry_check(d0: PathDescriptor, d1: PathDescriptor, K: int) -> Report:
    """Look for the first ``k <= K`` with ``mu_k(d1) != -mu_k(d0)``."""
    _require_s2_point(d0, "d0")
    _require_s2_point(d1, "d1")
    details = {
        "K": K,
        "mean_sum_zero": mean_index(d0) + mean_index(d1) == 0,
        "mutual_inverse": inverse(d0) == d1,
    }
    mu0, mu1 = index_sequence(d0, K), index_sequence(d1, K)
    for k, (a, b) in enumerate(zip(mu0, mu1), start=1):
        if b != -a:
            return Report(False, {"k": k, "mu0": a, "mu1": b}, details)
    return Report(True, None, details)
