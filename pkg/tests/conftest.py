import random
from fractions import Fraction

import pytest

from hyperres.arrangement import ArrangementError, type_a_preset, validate

# lines collected by the acceptance module, echoed in the terminal summary
CRITERIA_REPORT = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_REPORT:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_REPORT:
            terminalreporter.write_line(line)


@pytest.fixture
def a2():
    return type_a_preset(3)


@pytest.fixture
def a3():
    return type_a_preset(4)


def random_arrangement(rng, r, m, lo=-2, hi=2, tries=1000):
    """Random small integer arrangement; small entries give many dependencies."""
    for _ in range(tries):
        vecs = []
        while len(vecs) < m:
            v = tuple(rng.randint(lo, hi) for _ in range(r))
            if any(v) and v not in vecs:
                vecs.append(v)
        try:
            return validate(vecs, r)
        except ArrangementError:
            continue
    raise RuntimeError("could not draw an arrangement")


def random_arrangements(seed, count, ranks=(2, 3), max_m=7, lo=-2, hi=2):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.choice(ranks)
        # a rank-one arrangement has a single vector up to scaling
        m = 1 if r == 1 else rng.randint(r + 1, max_m)
        out.append(random_arrangement(rng, r, m, lo, hi))
    return out


def random_fraction(rng, span=5, den=3):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_polynomial(rng, nvars, terms=3, max_exp=2):
    from hyperres.polynomial import Polynomial

    return Polynomial(
        {tuple(rng.randint(0, max_exp) for _ in range(nvars)): random_fraction(rng) for _ in range(terms)},
        nvars,
    )


def random_form(rng, arr, max_den=2):
    from hyperres.residue import RationalTopForm

    den = tuple(rng.randint(0, max_den) for _ in range(len(arr)))
    return RationalTopForm(random_polynomial(rng, arr.rank, rng.randint(1, 3)), den)


def random_combination(rng, arr, size=4):
    """Random {ordered basis: coefficient}, bases in random internal order."""
    from hyperres.residue import all_bases

    bases = all_bases(arr)
    combo = {}
    for sigma in rng.sample(bases, min(size, len(bases))):
        sigma = list(sigma)
        rng.shuffle(sigma)
        combo[tuple(sigma)] = random_fraction(rng)
    return combo
