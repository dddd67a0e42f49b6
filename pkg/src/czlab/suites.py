"""Batch verification of the index-iteration properties on seeded instances.

Each suite draws its instances from a fixed family, checks one property per
instance and counts passes and failures.  When something fails the smallest
failing instance is kept, serialised, together with the first violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Any, Callable

from .families import (
    DescriptorFamily,
    RotationFamily,
    generate_descriptors,
    generate_pools,
    generate_rotations,
    generate_s2_pairs,
)
from .errors import CZLabError
from .rotations import (
    action_spectrum,
    matching_rotation,
    recapped_fixed_points,
    s2_antisymmetry_check,
    trivial_mean_indices,
)
from .serialize import descriptor_to_json, format_fraction, rotation_to_json
from .spectral import (
    PathDescriptor,
    check_condition_a,
    check_condition_b,
    common_denominator,
    cz_index,
    index_sequence,
    jump_sequence,
    mean_index,
    reconstruct_from_jumps,
    witness_search_bound,
)
from .torus import verify_intersect_divisibility, verify_mu_intersect

GAP = Fraction(1, 50)
HORIZON = 501
MAX_L = 12
ARC_BOUND = 200

# Angles have denominators up to 1000 and stay free of resonances up to
# HORIZON, so every sequence below is exact up to k = HORIZON - 1 = 500.
DESCRIPTORS = DescriptorFamily(max_denominator=1000, horizon=HORIZON, min_gap=GAP, divisor_bias=6)
ELLIPTIC = replace(DESCRIPTORS, elliptic_only=True, min_elliptic=1)
POOLS = replace(DESCRIPTORS, min_elliptic=1, max_elliptic=3, divisor_bias=1)
S2 = DescriptorFamily(max_denominator=1000, horizon=HORIZON, min_gap=GAP)
ROTATIONS = RotationFamily(max_n=5, max_denominator=20, max_abs_angle=2)

SUITES = ("oracle", "theorem", "reconstruct", "torus", "rotation", "bound", "antisymmetry")


@dataclass
class SuiteResult:
    suite: str
    seed: int
    trials: int
    passed: int = 0
    failed: int = 0
    rejected: int = 0
    failure: dict[str, Any] | None = None
    _size: tuple = field(default=(), repr=False)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, violation: dict | None, instance: Callable[[], Any], size: tuple) -> None:
        if violation is None:
            self.passed += 1
            return
        self.failed += 1
        if self.failure is None or size < self._size:
            self._size = size
            self.failure = {"instance": instance(), "violation": violation}

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "rejected": self.rejected,
            "failure": self.failure,
        }


def _size(d: PathDescriptor) -> tuple:
    return (d.half_dimension, common_denominator(d))


def _last_jump(d: PathDescriptor, limit: int = HORIZON - 1) -> int:
    return limit if d.horizon is None else min(limit, d.horizon - 1)


def closed_form_index(d: PathDescriptor, k: int) -> int:
    """``mu_k = k (loop + mult) + sum s (2 floor(k theta / 2) + 1)``."""
    total = k * d.loop_plus_mult
    for e in d.elliptic:
        total += e.signature * (2 * ((k * e.theta.numerator) // (2 * e.theta.denominator)) + 1)
    return total


def oracle_violation(d: PathDescriptor, K: int) -> dict | None:
    mu = index_sequence(d, K)
    jumps = jump_sequence(d, K - 1)
    running = cz_index(d)
    for k in range(1, K + 1):
        if k > 1:
            running += jumps.at(k - 1)
        if mu.at(k) != running:
            return {"k": k, "mu": mu.at(k), "prefix_sum": running}
        if mu.at(k) != closed_form_index(d, k):
            return {"k": k, "mu": mu.at(k), "closed_form": closed_form_index(d, k)}
    return None


def theorem_violation(d: PathDescriptor, max_l: int = MAX_L) -> dict | None:
    """Divisibility of the whole jump sequence versus the invariants, each ``l``."""
    K = _last_jump(d)
    for l in range(1, max_l + 1):
        if check_condition_b(d, l):
            search = check_condition_a(d, l, K)
            if not search.holds:
                return {"l": l, "direction": "b=>a", "k": search.witness, "jump": search.jump}
        else:
            bound = min(witness_search_bound(d, l), K)
            search = check_condition_a(d, l, bound)
            if search.holds:
                return {"l": l, "direction": "a=>b", "searched": bound}
    return None


def bound_violation(d: PathDescriptor, K: int) -> dict | None:
    """``|mu_k - k hmu| < n`` for every ``k <= K``."""
    if not d.weakly_nondegenerate:
        return None
    hmu, n = mean_index(d), d.half_dimension
    for k, mu in enumerate(index_sequence(d, K), start=1):
        if abs(mu - k * hmu) >= n:
            return {"k": k, "mu": mu, "k_hmu": format_fraction(k * hmu), "n": n}
    return None


def distinguishing_iterate(d0: PathDescriptor, d1: PathDescriptor, K: int) -> int | None:
    for k, (a, b) in enumerate(zip(jump_sequence(d0, K), jump_sequence(d1, K)), start=1):
        if a != b:
            return k
    return None


def pool_violation(pool: list[PathDescriptor]) -> dict | None:
    K = min(_last_jump(d) for d in pool)
    for i, d in enumerate(pool):
        try:
            found = reconstruct_from_jumps(jump_sequence(d, K), pool)
        except CZLabError as exc:
            return {"member": i, "error": exc.code}
        if found is not d and found != d:
            return {"member": i, "reconstructed": pool.index(found)}
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            bound = min(4 * lcm_pair(pool[i], pool[j]), K)
            if distinguishing_iterate(pool[i], pool[j], bound) is None:
                return {"members": [i, j], "agree_through": bound}
    return None


def torus_violation(d: PathDescriptor, max_l: int = MAX_L, arc_bound: int = ARC_BOUND) -> dict | None:
    report = verify_mu_intersect(d, _last_jump(d))
    if not report:
        return {"property": "mu_intersect", **report.first_violation}
    for l in range(2, max_l + 1):
        if check_condition_b(d, l):
            report = verify_intersect_divisibility(d, l, min(arc_bound, _last_jump(d)))
            if not report:
                return {"property": "intersect_divisibility", "l": l, **report.first_violation}
    return None


def rotation_violation(r) -> dict | None:
    """Zero sum after recapping, and the matching rotation is the canonical
    representative of ``r``: a fixed point of the round trip, equal to ``r``
    when no recapping was needed, with the same marked action spectrum."""
    table = recapped_fixed_points(r)
    if sum(table.delta) != 0:
        return {"property": "new_sum", "sum": format_fraction(sum(table.delta))}
    canonical = matching_rotation(table, r.horizon)
    if matching_rotation(recapped_fixed_points(canonical), r.horizon) != canonical:
        return {"property": "round_trip", "angles": [format_fraction(a) for a in canonical.angles]}
    if table.delta == trivial_mean_indices(r) and canonical != r:
        return {"property": "round_trip", "angles": [format_fraction(a) for a in canonical.angles]}
    window = (Fraction(-r.n - 2) + Fraction(1, 997), Fraction(r.n + 2) + Fraction(1, 991))
    if action_spectrum(canonical, window) != action_spectrum(r, window):
        return {"property": "same_spectrum", "angles": [format_fraction(a) for a in canonical.angles]}
    return None


def antisymmetry_violation(d0: PathDescriptor, d1: PathDescriptor, inverse_pair: bool) -> dict | None:
    K = min(_last_jump(d0), _last_jump(d1))
    if inverse_pair:
        report = s2_antisymmetry_check(d0, d1, K)
        return None if report else {"expected": "antisymmetric", **report.first_violation}
    bound = min(4 * lcm_pair(d0, d1), K)
    report = s2_antisymmetry_check(d0, d1, bound)
    return {"expected": "violation", "searched": bound} if report else None


def lcm_pair(d0: PathDescriptor, d1: PathDescriptor) -> int:
    return lcm(common_denominator(d0), common_denominator(d1))


def _guard(check, *args) -> dict | None:
    # a domain error on generated input counts as a failure of the instance
    try:
        return check(*args)
    except CZLabError as exc:
        return {"error": exc.code, "message": str(exc)}


def _descriptor_suite(name, seed, trials, family, check) -> SuiteResult:
    batch = generate_descriptors(seed, trials, family)
    res = SuiteResult(name, seed, trials, rejected=batch.rejected)
    for d in batch:
        res.record(_guard(check, d), lambda d=d: descriptor_to_json(d), _size(d))
    return res


def run_suite(name: str, seed: int, trials: int) -> SuiteResult:
    if trials < 1:
        raise ValueError("trials must be positive")
    if name == "oracle":
        return _descriptor_suite(name, seed, trials, DESCRIPTORS, lambda d: oracle_violation(d, _last_jump(d)))
    if name == "theorem":
        return _descriptor_suite(name, seed, trials, DESCRIPTORS, theorem_violation)
    if name == "bound":
        return _descriptor_suite(name, seed, trials, DESCRIPTORS, lambda d: bound_violation(d, _last_jump(d)))
    if name == "torus":
        return _descriptor_suite(name, seed, trials, ELLIPTIC, torus_violation)
    if name == "reconstruct":
        batch = generate_pools(seed, trials, POOLS)
        res = SuiteResult(name, seed, trials, rejected=batch.rejected)
        for pool in batch:
            res.record(
                _guard(pool_violation, pool),
                lambda pool=pool: {"pool": [descriptor_to_json(d) for d in pool]},
                (len(pool), max(_size(d) for d in pool)),
            )
        return res
    if name == "rotation":
        batch = generate_rotations(seed, trials, ROTATIONS)
        res = SuiteResult(name, seed, trials, rejected=batch.rejected)
        for r in batch:
            res.record(_guard(rotation_violation, r), lambda r=r: rotation_to_json(r), (r.n, max(a.denominator for a in r.angles)))
        return res
    if name == "antisymmetry":
        res = SuiteResult(name, seed, trials)
        # half the trials are mutually inverse pairs, the rest have distinct angles
        for inverse_pair, count in ((True, trials - trials // 2), (False, trials // 2)):
            if not count:
                continue
            batch = generate_s2_pairs(seed, count, S2, mutual_inverse=inverse_pair)
            res.rejected += batch.rejected
            for d0, d1 in batch:
                res.record(
                    _guard(antisymmetry_violation, d0, d1, inverse_pair),
                    lambda d0=d0, d1=d1: {"d0": descriptor_to_json(d0), "d1": descriptor_to_json(d1)},
                    (lcm_pair(d0, d1),),
                )
        return res
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")


def run_suites(name: str, seed: int, trials: int) -> list[SuiteResult]:
    names = SUITES if name == "all" else (name,)
    return [run_suite(n, seed, trials) for n in names]
