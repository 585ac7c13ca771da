"""Class maps, actions, invariant sublattices, quotients, image lattices."""

import random
from fractions import Fraction

import pytest

from stablat import (
    CohClass,
    DimensionMismatch,
    IntegerMatrixAction,
    InvalidIndex,
    LatticeDesc,
    LatticeVector,
    NotARealClass,
    apply_action,
    canonical_subsets,
    ch_line_bundle,
    ch_skyscraper,
    charge_functional,
    coh_one,
    gr,
    image_lattice_of_charge,
    image_lattice_of_v,
    invariant_sublattice,
    lattice_for,
    make_space,
    permutation_matrix,
    permute_curves,
    quotient_by_kernel,
    v_map,
    v_matrix,
    v_recursive,
)
from stablat.charges import ChargeFunctional
from stablat.intlinalg import is_saturated, mat_vec


def random_line_bundle_combo(rng, space, max_terms=3):
    """Random Z-combination of line-bundle characters plus skyscraper multiples."""
    x = ch_skyscraper(space).scale(rng.randint(-3, 3))
    for _ in range(rng.randint(1, max_terms)):
        degrees = [rng.randint(-5, 5) for _ in range(space.n)]
        x = x + ch_line_bundle(space, degrees).scale(rng.randint(-3, 3))
    return x


# -- v_map ---------------------------------------------------------------------


def test_v_map_examples():
    s = make_space([1, 1])
    assert v_map(ch_skyscraper(s)).coords == (1, 0, 0, 0)
    assert v_map(coh_one(s)).coords == (0, 0, 0, 1)
    a, b = 3, -2
    assert v_map(ch_line_bundle(s, (a, b))).coords == (a * b, b, a, 1)


def test_v_map_rejects_complex():
    s = make_space([1])
    with pytest.raises(NotARealClass):
        v_map(CohClass(s, {frozenset(): gr(0, 1)}))


def test_v_map_is_integral_runtime_check():
    s = make_space([1, 1])
    integral = v_map(ch_line_bundle(s, (2, 5)))
    assert integral.is_integral()
    ragged = v_map(CohClass(s, {frozenset(): Fraction(1, 2)}))
    assert not ragged.is_integral()


def test_v_matrix_consistent_with_v_map():
    rng = random.Random(31)
    for n in (1, 2, 3):
        space = make_space([rng.randint(0, 3) for _ in range(n)])
        vm = v_matrix(space)
        for _ in range(10):
            coeffs = {
                s: Fraction(rng.randint(-5, 5)) for s in canonical_subsets(n)
            }
            x = CohClass(space, coeffs)
            column = [coeffs[s] for s in canonical_subsets(n)]
            assert tuple(mat_vec(vm, column)) == v_map(x).coords


def test_v1_order_is_degree_then_rank():
    s = make_space([2])
    x = ch_line_bundle(s, (7,))  # rank 1, degree 7
    assert v_map(x).coords == (7, 1)


# -- v_recursive ------------------------------------------------------------------


def test_v_recursive_matches_closed_form_on_combos():
    rng = random.Random(32)
    for n in (2, 3, 4):
        for _ in range(50):
            space = make_space([rng.randint(0, 3) for _ in range(n)])
            x = random_line_bundle_combo(rng, space)
            expected = v_map(x)
            m = rng.randint(-3, 3)
            assert v_recursive(x, m) == expected


def test_v_recursive_independent_of_twist():
    rng = random.Random(33)
    space = make_space([1, 2])
    for _ in range(20):
        x = random_line_bundle_combo(rng, space)
        assert v_recursive(x, 0) == v_recursive(x, 3)
        assert v_recursive(x, -3) == v_recursive(x, 1)


def test_v_recursive_skyscraper():
    s = make_space([1, 1])
    assert v_recursive(ch_skyscraper(s), 0).coords == (1, 0, 0, 0)


def test_v_recursive_rational_classes():
    # the identity is linear-algebraic, so it holds for rational classes too
    rng = random.Random(34)
    space = make_space([2, 1, 0])
    for _ in range(10):
        coeffs = {
            s: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for s in canonical_subsets(3)
        }
        x = CohClass(space, coeffs)
        assert v_recursive(x, 2) == v_map(x)


# -- equivariance under curve permutations -------------------------------------------


def test_v_map_equivariance_under_transpositions():
    rng = random.Random(35)
    for n in (2, 3, 4):
        space = make_space([1] * n)
        lattice = lattice_for(space)
        for i in range(1, n):
            perm = list(range(1, n + 1))
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            mat = permutation_matrix(space, perm)
            for _ in range(10):
                x = random_line_bundle_combo(rng, space)
                left = v_map(permute_curves(x, perm))
                right = LatticeVector(lattice, mat_vec(mat, list(v_map(x).coords)))
                assert left == right


# -- actions ---------------------------------------------------------------------


def test_apply_action_identity_and_swap():
    s = make_space([1, 1])
    lattice = lattice_for(s)
    ident = IntegerMatrixAction(lattice, [[[1 if i == j else 0 for j in range(4)] for i in range(4)]])
    v = LatticeVector(lattice, (1, 2, 3, 4))
    assert apply_action(ident, 0, v) == v

    swap = IntegerMatrixAction(
        lattice, [permutation_matrix(s, (2, 1))], curve_permutations=[(2, 1)]
    )
    swapped = apply_action(swap, 0, v)
    assert swapped.coords == (1, 3, 2, 4)
    assert apply_action(swap, 0, swapped) == v


def test_apply_action_involution_random():
    rng = random.Random(36)
    s = make_space([1, 1, 1])
    lattice = lattice_for(s)
    swap = IntegerMatrixAction(
        lattice, [permutation_matrix(s, (2, 1, 3))], curve_permutations=[(2, 1, 3)]
    )
    for _ in range(100):
        v = LatticeVector(lattice, [rng.randint(-9, 9) for _ in range(8)])
        assert apply_action(swap, 0, apply_action(swap, 0, v)) == v


def test_apply_action_bad_index():
    s = make_space([1])
    act = IntegerMatrixAction(lattice_for(s), [[[1, 0], [0, 1]]])
    with pytest.raises(InvalidIndex):
        apply_action(act, 1, LatticeVector(lattice_for(s), (1, 0)))


def test_action_validation():
    s = make_space([1, 1])
    lattice = lattice_for(s)
    # wrong shape: 3 x 4
    with pytest.raises(DimensionMismatch):
        IntegerMatrixAction(
            lattice, [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]]
        )
    # non-unimodular
    bad = [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(DimensionMismatch):
        IntegerMatrixAction(lattice, [bad])
    # matrix inconsistent with claimed permutation
    ident = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    with pytest.raises(DimensionMismatch):
        IntegerMatrixAction(lattice, [ident], curve_permutations=[(2, 1)])


# -- invariant sublattices ------------------------------------------------------------


def test_invariant_sublattice_swap_rank4():
    s = make_space([1, 1])
    action = IntegerMatrixAction(
        lattice_for(s), [permutation_matrix(s, (2, 1))], curve_permutations=[(2, 1)]
    )
    basis = invariant_sublattice(action)
    assert basis == [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
    assert is_saturated(basis)


def test_invariant_sublattice_trivial_action():
    lattice = LatticeDesc(rank=5)
    action = IntegerMatrixAction(lattice, [])
    assert invariant_sublattice(action) == [
        [1 if i == j else 0 for j in range(5)] for i in range(5)
    ]


def test_invariant_sublattice_orbit_counts():
    # permuting n rank-4 blocks: invariants are multisets, C(n+3, 3) of them
    from stablat import hilbert_setup

    for n, expected in ((2, 10), (3, 20)):
        setup = hilbert_setup(1, 1, n)
        basis = invariant_sublattice(setup.action)
        assert len(basis) == expected
        quotient_rank = setup.action.lattice.rank - len(basis)
        assert is_saturated(basis, r=setup.action.lattice.rank)
        assert quotient_rank == setup.action.lattice.rank - expected


def test_invariant_vectors_are_fixed():
    from stablat import hilbert_setup

    setup = hilbert_setup(1, 2, 2)
    basis = invariant_sublattice(setup.action)
    lattice = setup.action.lattice
    for vec in basis:
        v = LatticeVector(lattice, vec)
        for g in range(len(setup.action.generators)):
            assert apply_action(setup.action, g, v) == v


# -- quotients --------------------------------------------------------------------


def test_quotient_by_kernel_elliptic_curve():
    s = make_space([1])
    z = charge_functional(s, 0, 1)
    q = quotient_by_kernel(lattice_for(s), z)
    assert q.rank == 2
    assert q.projection == [[1, 0], [0, 1]]
    assert q.kernel_basis == []


def test_quotient_by_kernel_zero_functional():
    lattice = LatticeDesc(rank=3)
    z = ChargeFunctional(3, [gr(0)] * 3)
    q = quotient_by_kernel(lattice, z)
    assert q.rank == 0
    assert q.projection == []


def test_quotient_by_kernel_surface():
    s = make_space([1, 1])
    z = charge_functional(s, 0, 1)
    q = quotient_by_kernel(lattice_for(s), z)
    assert q.rank == 2
    assert len(q.kernel_basis) == 2
    # projection kills the kernel and the section splits it
    for v in q.kernel_basis:
        assert all(x == 0 for x in mat_vec(q.projection, v))
    from stablat.intlinalg import identity_matrix, mat_mul

    assert mat_mul(q.projection, q.section) == identity_matrix(2)


def test_kernel_basis_spec_example():
    s = make_space([1, 1])
    z = charge_functional(s, 0, 1)
    q = quotient_by_kernel(lattice_for(s), z)
    assert q.kernel_basis == [[1, 0, 0, 1], [0, 1, -1, 0]]


# -- image lattices ----------------------------------------------------------------


def test_image_lattice_of_v_full_rank():
    s = make_space([1, 1])
    classes = [
        ch_skyscraper(s),
        coh_one(s),
        ch_line_bundle(s, (1, 0)),
        ch_line_bundle(s, (0, 1)),
    ]
    basis = image_lattice_of_v(classes)
    assert len(basis) == 4
    assert basis == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_image_lattice_of_v_small():
    s = make_space([1, 1])
    assert image_lattice_of_v([ch_skyscraper(s)]) == [[1, 0, 0, 0]]
    assert image_lattice_of_v([]) == []


def test_image_lattice_of_charge_examples():
    s = make_space([1])
    z = charge_functional(s, 0, 1)  # -d + i r
    rank, basis = image_lattice_of_charge(z, lattice_for(s))
    assert rank == 2
    # canonical basis of the subgroup generated by (-1,0) and (0,1)
    assert basis == [(1, 0), (0, 1)]

    zero = ChargeFunctional(2, [gr(0), gr(0)])
    rank, basis = image_lattice_of_charge(zero, LatticeDesc(rank=2))
    assert rank == 0 and basis == []

    real = ChargeFunctional(2, [gr(1), gr(2)])
    rank, basis = image_lattice_of_charge(real, LatticeDesc(rank=2))
    assert rank == 1 and basis == [(1, 0)]


def test_image_lattice_of_charge_denominators():
    z = ChargeFunctional(2, [gr(Fraction(1, 2)), gr(0, Fraction(1, 3))])
    rank, basis = image_lattice_of_charge(z, LatticeDesc(rank=2))
    assert rank == 2
    # subgroup generated by (1/2, 0) and (0, 1/3)
    assert basis == [(Fraction(1, 2), 0), (0, Fraction(1, 3))]
