from fractions import Fraction
from math import floor

from hypothesis import strategies as st

from czlab import Angle, DecoratedEigenvalue, PathDescriptor


def scan_resonance(theta: Fraction, limit: int = 10_000) -> int:
    """First k with k*theta/2 an integer, by direct scan."""
    for k in range(1, limit + 1):
        if (k * theta / 2).denominator == 1:
            return k
    raise AssertionError("no resonance found")


def floor_jump(theta: Fraction, k: int) -> int:
    return floor((k + 1) * theta / 2) - floor(k * theta / 2)


def closed_form_mu(d: PathDescriptor, k: int) -> int:
    return k * (d.loop + d.mult_minus_one) + sum(
        e.signature * (2 * floor(k * e.theta / 2) + 1) for e in d.elliptic
    )


@st.composite
def thetas(draw, max_den=60):
    q = draw(st.integers(2, max_den))
    p = draw(st.integers(1, q - 1))
    return Fraction(p, q)


@st.composite
def entries(draw, max_den=60, max_mult=4):
    theta = draw(thetas(max_den))
    mult = draw(st.integers(1, max_mult))
    sig = draw(st.sampled_from(range(-mult, mult + 1, 2)))
    return theta, mult, sig


@st.composite
def descriptors(draw, max_den=60, max_entries=3, elliptic_only=False, horizon=None):
    """Descriptors whose horizon is the largest their angles allow (or ``horizon``)."""
    raw = draw(st.lists(entries(max_den), max_size=max_entries, unique_by=lambda e: e[0]))
    if horizon is None:
        h = min((scan_resonance(t) for t, _, _ in raw), default=200) - 1
    else:
        h = horizon
        raw = [e for e in raw if scan_resonance(e[0]) > h]
    if elliptic_only:
        loop = mm = hyp = 0
    else:
        loop = 2 * draw(st.integers(-3, 3))
        mm = draw(st.integers(0, 3))
        hyp = draw(st.integers(0, 2))
    elliptic = tuple(DecoratedEigenvalue(Angle(t, h), m, s) for t, m, s in raw)
    return PathDescriptor(loop, mm, hyp, elliptic)


def horizon_of(d: PathDescriptor, default: int = 200) -> int:
    return default if d.horizon is None else d.horizon


# acceptance report: one line per criterion, printed after the run

_ACCEPTANCE: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str) -> None:
    line = f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} ({detail})"
    _ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
