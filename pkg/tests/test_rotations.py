from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import thetas
from czlab import (
    DegenerateRotation,
    DuplicateAction,
    FixedPointTable,
    InvalidTable,
    NotBalanced,
    PathDescriptor,
    Rotation,
    WindowOnSpectrum,
    WrongDimension,
    action_spectrum,
    check_matching_hypotheses,
    cz_index,
    first_resonance,
    fixed_point_descriptor,
    floquet_multipliers,
    inverse,
    is_balanced,
    is_trivial_rotation,
    make_descriptor,
    make_rotation,
    matching_rotation,
    mean_index,
    recapped_fixed_points,
    resonance_lattice,
    rotation_block,
    rotation_from_action_spectrum,
    s2_antisymmetry_check,
    table_spectrum,
    trivial_mean_indices,
)

R1 = make_rotation(1, [F(-1, 5), F(1, 5)], 4)
R2 = make_rotation(2, [0, F(9, 20), F(3, 5)])


# construction

def test_make_rotation_examples():
    assert R1.angles == (F(-1, 5), F(1, 5))
    assert R2.angles == (F(-7, 20), F(1, 10), F(1, 4))
    with pytest.raises(DegenerateRotation):
        make_rotation(1, [F(-1, 2), F(1, 2)])


def test_rotation_horizon():
    # 5 * (2/5) is the first integral multiple of the difference
    with pytest.raises(DegenerateRotation):
        make_rotation(1, [F(-1, 5), F(1, 5)], 5)


def test_rotation_invariants():
    with pytest.raises(ValueError):
        Rotation(1, (F(1, 5), F(-1, 5)))
    with pytest.raises(ValueError):
        Rotation(1, (F(-1, 5), F(2, 5)))
    with pytest.raises(ValueError):
        make_rotation(2, [0, 1])


def test_trivial_rotation_criterion():
    assert is_trivial_rotation(1, [0, 0])
    assert is_trivial_rotation(2, [-1, 0, 1])
    assert is_trivial_rotation(1, [F(1, 2), F(1, 2)])
    # a half turn of one line against the other is -I in SU(2): a non-contractible loop in PU(2)
    assert not is_trivial_rotation(1, [F(-1, 2), F(1, 2)])
    # scalar time-one map, but the loop generates the centre of SU(3)
    assert not is_trivial_rotation(2, [F(-1, 3), F(-1, 3), F(2, 3)])
    assert not is_trivial_rotation(1, [F(-1, 5), F(1, 5)])


# mean indices and recapping

def test_trivial_mean_indices_examples():
    assert trivial_mean_indices(R2) == (F(-21, 10), F(3, 5), F(3, 2))
    assert trivial_mean_indices(R1) == (F(-4, 5), F(4, 5))


def test_recapped_examples():
    assert recapped_fixed_points(R1).delta == (F(-4, 5), F(4, 5))
    assert recapped_fixed_points(R2).delta == (F(-21, 10), F(3, 5), F(3, 2))


def test_recapping_shifts_by_period():
    r = make_rotation(1, [F(-6, 5), F(6, 5)])
    assert trivial_mean_indices(r) == (F(-24, 5), F(24, 5))
    assert recapped_fixed_points(r).delta == (F(-4, 5), F(4, 5))
    # the matching rotation is the canonical representative, not r itself
    assert matching_rotation(recapped_fixed_points(r)) == R1


def test_rotation_block():
    assert rotation_block(F(3, 10), 9) == make_descriptor([(F(3, 5), 1, 1)], horizon=9)
    # mean index -14/5 = -2 + (-4/5)
    assert rotation_block(F(-7, 5), 4) == make_descriptor([(F(4, 5), 1, -1)], horizon=4, loop=-2)
    assert rotation_block(F(1, 2), 9) == PathDescriptor(mult_minus_one=1)
    with pytest.raises(DegenerateRotation):
        rotation_block(F(2), 9)


def test_fixed_point_descriptors():
    table = recapped_fixed_points(R2)
    for i, d in enumerate(table.descriptors):
        assert cz_index(d) == 2 * i - 2
        assert mean_index(d) == table.delta[i]


def test_table_validation():
    with pytest.raises(InvalidTable):
        FixedPointTable(1, (F(-4, 5), F(-4, 5)))
    with pytest.raises(InvalidTable):
        FixedPointTable(1, (F(-4, 5),))
    with pytest.raises(InvalidTable):
        FixedPointTable(1, (F(-5, 2), F(4, 5)))
    with pytest.raises(InvalidTable):
        FixedPointTable(1, (F(4, 5), F(-4, 5)))


# spectra

def test_action_spectrum_examples():
    s = action_spectrum(R1, (F(-3, 2), F(3, 2)))
    assert s.values == (F(-6, 5), F(-4, 5), F(-1, 5), F(1, 5), F(4, 5), F(6, 5))
    assert s.labels == (-2, -1, 0, 1, 2, 3)
    s = action_spectrum(R2, (F(-1, 2), F(1, 2)))
    assert [s.value(l) for l in (0, 1, 2)] == [F(-7, 20), F(1, 10), F(1, 4)]
    assert s.index(0) == -2


def test_window_far_from_zero():
    s = action_spectrum(R1, (F(7, 2), F(9, 2)))
    # labels inferred by periodicity: value(l + 2) = value(l) + 1
    assert s.rows() == [(8, 15, F(19, 5)), (9, 17, F(21, 5))]


def test_window_on_spectrum():
    with pytest.raises(WindowOnSpectrum):
        action_spectrum(R1, (F(-1, 5), F(1)))


def test_duplicate_action():
    # angles differing by an integer share an action; validation already refuses them
    with pytest.raises(DegenerateRotation):
        make_rotation(2, [F(-1, 2), F(1, 2), 0])
    r = make_rotation(1, [F(-1, 5), F(1, 5)])
    object.__setattr__(r, "angles", (F(-1, 2), F(1, 2)))
    with pytest.raises(DuplicateAction):
        action_spectrum(r, (F(-1, 3), F(1, 3)))


def test_table_spectrum_matches_rotation():
    t = recapped_fixed_points(R2)
    window = (F(-5, 2), F(5, 2))
    assert table_spectrum(t, window) == action_spectrum(R2, window)


def test_rotation_from_spectrum():
    values = action_spectrum(R2, (F(-3, 2), F(3, 2))).values
    assert rotation_from_action_spectrum(2, values) == R2


# balance and matching

def test_balance_examples():
    assert is_balanced(recapped_fixed_points(R2))
    assert is_balanced(FixedPointTable(1, (F(-4, 5), F(4, 5))))
    assert not is_balanced(FixedPointTable(1, (F(-4, 5), F(9, 10))))


def test_matching_examples():
    assert matching_rotation(FixedPointTable(1, (F(-4, 5), F(4, 5)))).angles == (F(-1, 5), F(1, 5))
    t = FixedPointTable(2, (F(-21, 10), F(3, 5), F(3, 2)))
    assert matching_rotation(t).angles == (F(-7, 20), F(1, 10), F(1, 4))
    with pytest.raises(NotBalanced):
        matching_rotation(FixedPointTable(1, (F(-4, 5), F(9, 10))))


def test_floquet_examples():
    assert [m.value for m in floquet_multipliers(R1, 0)] == [F(-4, 5)]
    ms = floquet_multipliers(R2, 2)
    assert [(m.partner, m.value) for m in ms] == [(0, F(-4, 5)), (1, F(3, 10))]
    assert ms[0].theta == F(4, 5) and ms[0].krein_sign == -1


def test_matching_hypotheses():
    assert check_matching_hypotheses(FixedPointTable(1, (F(-4, 5), F(4, 5)))).passed
    report = check_matching_hypotheses(FixedPointTable(2, (F(-21, 10), F(3, 5), F(3, 2))))
    assert report.passed and len(report.details["multipliers"]) == 3
    collide = check_matching_hypotheses(recapped_fixed_points(make_rotation(2, [F(-1, 5), 0, F(1, 5)])))
    assert not collide.passed and collide.first_violation["value"] == "-2/5"


def test_resonance_examples():
    t = FixedPointTable(1, (F(-4, 5), F(4, 5)))
    found = resonance_lattice(t, 2)
    assert (1, 1) in found and (2, 2) in found
    assert (1, 0) not in found
    assert (1, 1, 1) in resonance_lattice(recapped_fixed_points(R2), 1)


# S^2 antisymmetry

def test_s2_inverse_pair():
    d0 = make_descriptor([(F(7, 10), 1, -1)], horizon=19)
    report = s2_antisymmetry_check(d0, inverse(d0), 19)
    assert report.passed and report.details["mutual_inverse"] and report.details["mean_sum_zero"]


def test_s2_violation():
    d0 = make_descriptor([(F(7, 10), 1, 1)], horizon=19)
    d1 = make_descriptor([(F(3, 10), 1, -1)], horizon=19)
    report = s2_antisymmetry_check(d0, d1, 9)
    # mu(d0) = 1, 1, 3, ... and mu(d1) = -1, -1, -1, ...
    assert not report.passed and report.first_violation == {"k": 3, "mu0": 3, "mu1": -1}


def test_s2_wrong_dimension():
    with pytest.raises(WrongDimension):
        s2_antisymmetry_check(PathDescriptor(), PathDescriptor(), 5)
    with pytest.raises(WrongDimension):
        d = make_descriptor([(F(7, 10), 2, 0)], horizon=19)
        s2_antisymmetry_check(d, d, 5)


@given(thetas(max_den=100), st.sampled_from((-1, 1)), st.integers(-3, 3))
def test_s2_inverse_pairs_property(theta, sign, half_loop):
    h = first_resonance(theta) - 1
    d0 = make_descriptor([(theta, 1, sign)], horizon=h, loop=2 * half_loop)
    assert s2_antisymmetry_check(d0, inverse(d0), h).passed


# properties over random rotations

@st.composite
def rotations(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    raw = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=12), min_size=n + 1, max_size=n + 1))
    try:
        return make_rotation(n, raw)
    except DegenerateRotation:
        assume(False)


def brute_spectrum(r: Rotation, lo: F, hi: F):
    """Label the actions by locating the zero-sum run in a wide enumeration."""
    span = int(abs(lo) + abs(hi)) + 4
    points = sorted(a + m for a in r.angles for m in range(-span, span + 1))
    n1 = r.n + 1
    starts = [p for p in range(len(points) - n1 + 1) if sum(points[p : p + n1]) == 0]
    assert len(starts) == 1
    return [(idx - starts[0], v) for idx, v in enumerate(points) if lo < v < hi]


@settings(max_examples=200)
@given(rotations())
def test_new_sum(r):
    assert sum(recapped_fixed_points(r).delta) == 0


@settings(max_examples=200)
@given(rotations())
def test_round_trip(r):
    table = recapped_fixed_points(r)
    canonical = matching_rotation(table)
    assert recapped_fixed_points(canonical).delta == table.delta
    assert matching_rotation(recapped_fixed_points(canonical)) == canonical
    assert sorted(a % 1 for a in canonical.angles) == sorted(a % 1 for a in r.angles)
    if table.delta == trivial_mean_indices(r):
        assert canonical == r


@settings(max_examples=200)
@given(rotations(), st.integers(-6, 6))
def test_spectrum_matches_brute_force(r, shift):
    lo, hi = F(shift) + F(1, 1009), F(shift + 3) + F(1, 1013)
    s = action_spectrum(r, (lo, hi))
    assert list(zip(s.labels, s.values)) == brute_spectrum(r, lo, hi)


@given(rotations())
def test_spectrum_periodic_and_monotone(r):
    s = action_spectrum(r, (F(-4) + F(1, 1009), F(4) + F(1, 1013)))
    values = dict(zip(s.labels, s.values))
    assert all(b > a for a, b in zip(s.values, s.values[1:]))
    for l, v in values.items():
        if l + r.n + 1 in values:
            assert values[l + r.n + 1] == v + 1


@given(rotations())
def test_spectrum_determines_rotation(r):
    window = (F(-r.n - 2) + F(1, 1009), F(r.n + 2) + F(1, 1013))
    spectrum = action_spectrum(r, window)
    canonical = matching_rotation(recapped_fixed_points(r))
    assert action_spectrum(canonical, window) == spectrum
    assert rotation_from_action_spectrum(r.n, spectrum.values) == canonical


@given(rotations())
def test_multipliers_consistent_with_mean_index(r):
    for i, delta in enumerate(trivial_mean_indices(r)):
        assert sum(2 * (r.angles[i] - a) for a in r.angles) == delta
        try:
            reduced = sum(m.value for m in floquet_multipliers(r, i))
        except DegenerateRotation:
            continue
        assert (reduced - delta) % 2 == 0
        assert mean_index(fixed_point_descriptor(r, i)) == delta

