"""Symmetric-group descent data for Hilbert schemes of points.

For the n-th Hilbert scheme of a product surface C_1 x C_2, the relevant
space is the 2n-fold product with genera alternating (g1, g2, g1, g2, ...),
and the symmetric group permutes the n pairs of factors.  Its action on the
rank-4^n lattice permutes basis subsets; the descent data consists of a
basis of the saturated invariant sublattice, the restriction of the
distinguished charge to it, and the coordinates of the skyscraper vector in
the invariant basis.

The Kummer variant (both factors elliptic) enlarges the group by sign
involutions on the surface factors, but those act trivially on the lattice,
so the flag changes validation only, never the output.
"""

from __future__ import annotations

from fractions import Fraction

from . import intlinalg
from .charges import ChargeFunctional, charge_functional
from .cohomology import CohClass, ProductSpace, permute_curves
from .errors import (
    InvalidKummer,
    NotSymmetricSpace,
    PositiveGenusRequired,
)
from .lattice import (
    IntegerMatrixAction,
    LatticeVector,
    invariant_sublattice,
    lattice_for,
    permutation_matrix,
    skyscraper_coords,
    v_map,
)


def pair_swap_permutation(n_pairs: int, i: int):
    """Curve permutation of {1..2n} swapping pair i with pair i+1 (1-based pairs)."""
    perm = list(range(1, 2 * n_pairs + 1))
    a, b = 2 * i - 1, 2 * i + 1
    perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]
    perm[a], perm[b] = perm[b], perm[a]
    return tuple(perm)


class HilbertSetup:
    """The 2n-factor space and pair-permutation action for n points on C_1 x C_2."""

    __slots__ = ("g1", "g2", "n", "kummer", "space", "action")

    def __init__(self, g1: int, g2: int, n: int, kummer: bool = False):
        g1, g2, n = int(g1), int(g2), int(n)
        if g1 < 1 or g2 < 1:
            raise PositiveGenusRequired(
                f"both genera must be >= 1, got ({g1}, {g2})"
            )
        if kummer and (g1, g2) != (1, 1):
            raise InvalidKummer(
                f"the Kummer case needs two elliptic factors, got ({g1}, {g2})"
            )
        if n < 1:
            raise PositiveGenusRequired(f"number of points must be >= 1, got {n}")
        space = ProductSpace((g1, g2) * n)
        lattice = lattice_for(space)
        perms = [pair_swap_permutation(n, i) for i in range(1, n)]
        generators = [permutation_matrix(space, p) for p in perms]
        action = IntegerMatrixAction(lattice, generators, curve_permutations=perms or None)
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "kummer", bool(kummer))
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "action", action)

    def __setattr__(self, *args):
        raise AttributeError("HilbertSetup is immutable")


def hilbert_setup(g1, g2, n, kummer=False) -> HilbertSetup:
    """Construct the 2n-factor space with the adjacent pair-swap generators."""
    return HilbertSetup(g1, g2, n, kummer)


def check_equivariance(setup: HilbertSetup, sample_classes, B=0, omega=1) -> dict:
    """Verify the two exact symmetry statements behind the descent.

    (i) the class map intertwines curve permutations with the induced basis
    permutations on each sample class, and (ii) the distinguished charge's
    coefficients are fixed by every generator (they depend only on subset
    size).  Both sides of (i) are computed independently.
    """
    space = setup.space
    if setup.action.curve_permutations is None and setup.n > 1:
        raise NotSymmetricSpace("setup carries no curve permutations")
    charge = charge_functional(space, B, omega)
    lattice = lattice_for(space)
    failures = []
    perms = setup.action.curve_permutations or ()
    for g, perm in enumerate(perms):
        mat = setup.action.generators[g]
        composed = charge.compose_matrix([list(row) for row in mat])
        if composed != charge:
            failures.append({"generator": g, "kind": "charge_not_invariant"})
        for k, x in enumerate(sample_classes):
            if not isinstance(x, CohClass):
                raise NotSymmetricSpace("sample classes must be cohomology classes")
            left = v_map(permute_curves(x, perm))
            vx = v_map(x).coords
            right = LatticeVector(
                lattice,
                [sum(row[j] * vx[j] for j in range(lattice.rank)) for row in mat],
            )
            if left != right:
                failures.append(
                    {"generator": g, "kind": "v_not_equivariant", "class_index": k}
                )
    return {
        "equivariant": not failures,
        "generators_checked": len(perms),
        "classes_checked": len(list(sample_classes)),
        "failures": failures,
    }


class DescentResult:
    """Invariant basis, restricted charge, and skyscraper coordinates."""

    __slots__ = (
        "invariant_basis",
        "invariant_rank",
        "restricted_charge",
        "skyscraper_in_invariants",
    )

    def __init__(self, invariant_basis, restricted_charge, skyscraper_in_invariants):
        object.__setattr__(
            self, "invariant_basis", tuple(tuple(v) for v in invariant_basis)
        )
        object.__setattr__(self, "invariant_rank", len(invariant_basis))
        object.__setattr__(self, "restricted_charge", restricted_charge)
        object.__setattr__(
            self, "skyscraper_in_invariants", tuple(skyscraper_in_invariants)
        )

    def __setattr__(self, *args):
        raise AttributeError("DescentResult is immutable")


def descend(setup: HilbertSetup, B, omega) -> DescentResult:
    """Compute the invariant sublattice, restricted charge, and skyscraper coords.

    The restricted charge evaluates the ambient charge on each invariant
    basis vector; the skyscraper vector is itself invariant, so its
    coordinates in the (saturated) invariant basis are integers, solved
    exactly.
    """
    space = setup.space
    charge = charge_functional(space, B, omega)
    basis = invariant_sublattice(setup.action)  # list of basis vectors
    restricted = ChargeFunctional(
        len(basis), [charge(vec) for vec in basis], params=charge.params
    )
    sky = skyscraper_coords(space.n)
    columns = intlinalg.transpose([list(v) for v in basis])  # rank x k
    coords = intlinalg.solve_integer(columns, sky)
    assert coords is not None, "skyscraper vector must lie in the invariant lattice"
    return DescentResult(basis, restricted, coords)
