import random
from fractions import Fraction
from itertools import permutations

import pytest

from hyperres.arrangement import type_a_preset, validate
from hyperres.jk import (
    ChamberError,
    OrientationContext,
    cone_contains,
    delta_decomposition,
    intersection_number,
    is_regular,
    jk_oracle_laplace,
    jk_residue,
    lattice_index,
    nu_sign,
    positive_functional,
)
from hyperres.nested import enumerate_proper_mns
from hyperres.polynomial import Polynomial
from hyperres.residue import RationalTopForm, all_bases, form_of_basis, form_of_combination

from conftest import random_combination, random_form, random_fraction

STD2 = OrientationContext.standard(2)
STD3 = OrientationContext.standard(3)
A2_CHAMBERS = [(2, 1), (1, 2)]
A3_CHAMBERS = [(3, 2, 1), (3, 5, 4)]


def alpha(i, m=3):
    return Polynomial.linear([int(j == i) for j in range(m)])


def test_is_regular(a2):
    assert not is_regular(a2, (1, 1))
    assert is_regular(a2, (2, 1))
    assert not is_regular(a2, (0, 5))
    assert not is_regular(a2, (0, 0))


def test_cone_contains(a2):
    assert cone_contains(a2, (0, 1), (2, 1))
    assert not cone_contains(a2, (0, 2), (2, 1))
    assert cone_contains(a2, (1, 2), (2, 1))


def test_nu_sign(a2):
    assert nu_sign(STD2, [(1, 0), (0, 1)]) == 1
    assert nu_sign(STD2, [a2.vectors[0], a2.vectors[1]]) == -1
    assert nu_sign(STD2, [a2.vectors[0], a2.vectors[2]]) == 1


def test_lattice_index(a2):
    assert lattice_index(STD2, [(1, 0), (0, 1)]) == 1
    assert lattice_index(STD2, [a2.vectors[0], a2.vectors[1]]) == 1
    assert lattice_index(STD2, [(2, 0), (0, 1)]) == 2
    with pytest.raises(ChamberError):
        lattice_index(STD2, [(Fraction(1, 2), 0), (0, 1)])
    coarse = OrientationContext(STD2.xi, ((2, 0), (0, 1)))
    assert lattice_index(coarse, [(2, 0), (0, 1)]) == 1


def test_delta_decomposition(a2):
    m1, m2 = enumerate_proper_mns(a2)
    assert delta_decomposition(a2, STD2, (2, 1)) == [(m1, -1)]
    assert delta_decomposition(a2, STD2, (1, 2)) == [(m2, 1)]
    assert delta_decomposition(a2, STD2, (3, 2)) == [(m1, -1)]


def test_jk_examples(a2):
    one = Polynomial.constant(1, 2)
    assert jk_residue(a2, STD2, (2, 1), RationalTopForm(one, (1, 1, 0))) == 1
    assert jk_residue(a2, STD2, (2, 1), RationalTopForm(one, (1, 1, 1))) == 0
    assert jk_residue(a2, STD2, (2, 1), form_of_basis(a2, (0, 2))) == 0


def test_laplace_oracle_examples(a2):
    assert jk_oracle_laplace(a2, STD2, (2, 1), {(0, 1): 1}) == -1
    assert jk_oracle_laplace(a2, STD2, (2, 1), form_of_basis(a2, (0, 1))) == -1
    assert jk_oracle_laplace(a2, STD2, (2, 1), {(1, 2): 1}) == 1
    assert jk_oracle_laplace(a2, STD2, (2, 1), form_of_basis(a2, (1, 2))) == 1
    assert jk_oracle_laplace(a2, STD2, (1, 2), {(0, 1): 1}) == 0


def test_intersection_numbers(a2):
    assert intersection_number(a2, STD2, (2, 1), alpha(2)) == 1
    assert intersection_number(a2, STD2, (2, 1), Polynomial.constant(1, 3)) == 0
    assert intersection_number(a2, STD2, (2, 1), alpha(1)) == 0


def test_preconditions(a2):
    psi = form_of_basis(a2, (0, 1))
    with pytest.raises(ChamberError):
        jk_residue(a2, STD2, (1, 1), psi)
    both_sides = validate([(1, 0), (0, 1), (-1, -1)])
    assert positive_functional(both_sides) is None
    with pytest.raises(ChamberError):
        jk_residue(both_sides, STD2, (2, 1), form_of_basis(both_sides, (0, 1)))
    ell = positive_functional(type_a_preset(5))
    assert all(sum(a * b for a, b in zip(v, ell)) > 0 for v in type_a_preset(5).vectors)


@pytest.mark.parametrize("arr,ctx,chambers", [
    (type_a_preset(3), STD2, A2_CHAMBERS),
    (type_a_preset(4), STD3, A3_CHAMBERS),
])
def test_two_routes_agree(arr, ctx, chambers):
    rng = random.Random(17)
    for c in chambers:
        for _ in range(10):
            combo = random_combination(rng, arr)
            psi = form_of_combination(arr, combo)
            expected = jk_oracle_laplace(arr, ctx, c, combo)
            assert jk_residue(arr, ctx, c, psi) == expected


def _membership(arr, c):
    return tuple(cone_contains(arr, s, c) for s in all_bases(arr))


def test_chamber_constancy(a3):
    rng = random.Random(23)
    pts = [(3, 5, 4), (4, 7, 5), (3, 2, 1), (5, 3, 2), (1, 2, 3), (5, 3, 4)]
    pts = [p for p in pts if is_regular(a3, p)]
    forms = [random_form(rng, a3) for _ in range(4)]
    for p in pts:
        for q in pts:
            if _membership(a3, p) == _membership(a3, q):
                for psi in forms:
                    assert jk_residue(a3, STD3, p, psi) == jk_residue(a3, STD3, q, psi)
    # the list contains at least one pair of distinct points sharing a chamber
    assert any(p != q and _membership(a3, p) == _membership(a3, q) for p in pts for q in pts)


def test_reversed_orientation_negates(a3):
    rng = random.Random(29)
    flipped = OrientationContext(((0, 1, 0), (1, 0, 0), (0, 0, 1)), STD3.lattice)
    for c in A3_CHAMBERS:
        for _ in range(4):
            psi = random_form(rng, a3)
            assert jk_residue(a3, flipped, c, psi) == -jk_residue(a3, STD3, c, psi)


def test_jk_linear(a2):
    rng = random.Random(31)
    for _ in range(5):
        p, q = random_form(rng, a2), random_form(rng, a2)
        a, b = random_fraction(rng), random_fraction(rng)
        lhs = jk_residue(a2, STD2, (2, 1), p.scale(a).add(a2, q.scale(b)))
        assert lhs == a * jk_residue(a2, STD2, (2, 1), p) + b * jk_residue(a2, STD2, (2, 1), q)


def test_cycle_values_on_all_ordered_bases(a2):
    for c in A2_CHAMBERS:
        for sigma in all_bases(a2):
            for order in permutations(sigma):
                value = jk_residue(a2, STD2, c, form_of_basis(a2, order))
                if cone_contains(a2, order, c):
                    assert value == nu_sign(STD2, [a2.vectors[i] for i in order])
                else:
                    assert value == 0
