"""Rank-2^n lattices with subset-indexed bases and the class maps onto them.

The lattice attached to a product of n curves is Z^(2^n), with basis
indexed by the subsets of {1..n} in canonical order.  The class map sends a
cohomology class to its intersection numbers against the square-free
monomials: the coordinate at S = {j_1 < ... < j_l} is the integral of
h_S times the degree-(n-l) part of the class, i.e. the coefficient of the
complementary monomial.

Block convention (fixed repo-wide): identifying the lattice of n curves with
two copies of the lattice of the first n-1, the "prime" copy consists of the
basis subsets containing n and the "double prime" copy of those not
containing n.  For n = 1 the canonical order puts the degree coordinate
(empty subset) before the rank coordinate ({1}); this reconciles the usual
(rank, degree) convention on a curve with the general subset indexing and is
a deliberate repo-wide choice.

Vectors store exact rational coordinates; `is_integral` reports whether all
denominators are 1.  Nothing here assumes integrality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import intlinalg
from .cohomology import (
    CohClass,
    ProductSpace,
    canonical_subsets,
    ch_line_bundle,
    coh_mul,
    pushforward,
    require_real,
    subset_index,
)
from .errors import DimensionMismatch, InvalidIndex
from .gaussian import GaussianRational


class LatticeDesc:
    """A finite free lattice; either the subset-indexed one of a space, or abstract."""

    __slots__ = ("space", "rank", "basis_labels")

    def __init__(self, space=None, rank=None, basis_labels=None):
        if space is not None:
            labels = canonical_subsets(space.n)
            rank = len(labels)
            basis_labels = labels
        elif rank is None:
            raise DimensionMismatch("abstract lattice needs an explicit rank")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "basis_labels", basis_labels)

    def __setattr__(self, *args):
        raise AttributeError("LatticeDesc is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LatticeDesc)
            and self.space == other.space
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.space, self.rank))

    def __repr__(self):
        if self.space is not None:
            return f"LatticeDesc(space={self.space!r}, rank={self.rank})"
        return f"LatticeDesc(rank={self.rank})"


@lru_cache(maxsize=None)
def _lattice_cache(genera):
    return LatticeDesc(space=ProductSpace(genera))


def lattice_for(space: ProductSpace) -> LatticeDesc:
    """The canonical subset-indexed lattice of a product space."""
    return _lattice_cache(space.genera)


class LatticeVector:
    """Element of a lattice with exact rational coordinates."""

    __slots__ = ("lattice", "coords")

    def __init__(self, lattice: LatticeDesc, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != lattice.rank:
            raise DimensionMismatch(
                f"expected {lattice.rank} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *args):
        raise AttributeError("LatticeVector is immutable")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        if not isinstance(other, LatticeVector) or other.lattice != self.lattice:
            return NotImplemented
        return LatticeVector(
            self.lattice, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other):
        if not isinstance(other, LatticeVector) or other.lattice != self.lattice:
            return NotImplemented
        return LatticeVector(
            self.lattice, [a - b for a, b in zip(self.coords, other.coords)]
        )

    def __neg__(self):
        return LatticeVector(self.lattice, [-a for a in self.coords])

    def scale(self, scalar):
        scalar = Fraction(scalar)
        return LatticeVector(self.lattice, [scalar * a for a in self.coords])

    def __mul__(self, scalar):
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, LatticeVector)
            and self.lattice == other.lattice
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.lattice, self.coords))

    def __repr__(self):
        return f"LatticeVector({[str(c) for c in self.coords]})"


class IntegerMatrixAction:
    """A group action on a lattice via unimodular integer generator matrices.

    Optionally remembers, per generator, the curve permutation inducing it;
    in that case the matrix must equal the permutation's induced action on
    the subset basis labels.
    """

    __slots__ = ("lattice", "generators", "curve_permutations")

    def __init__(self, lattice: LatticeDesc, generators, curve_permutations=None):
        gens = []
        for g in generators:
            g = [[int(x) for x in row] for row in g]
            if len(g) != lattice.rank or any(len(row) != lattice.rank for row in g):
                raise DimensionMismatch("generator matrix has wrong shape")
            if intlinalg.det_int(g) not in (1, -1):
                raise DimensionMismatch("generator matrix is not unimodular")
            gens.append(tuple(tuple(row) for row in g))
        if curve_permutations is not None:
            curve_permutations = tuple(tuple(int(p) for p in cp) for cp in curve_permutations)
            if len(curve_permutations) != len(gens):
                raise DimensionMismatch("one curve permutation per generator required")
            if lattice.space is None:
                raise DimensionMismatch("curve permutations need a space-backed lattice")
            for g, cp in zip(gens, curve_permutations):
                expected = permutation_matrix(lattice.space, cp)
                if [list(r) for r in g] != expected:
                    raise DimensionMismatch(
                        "generator matrix does not match its curve permutation"
                    )
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "curve_permutations", curve_permutations)

    def __setattr__(self, *args):
        raise AttributeError("IntegerMatrixAction is immutable")


def permutation_matrix(space: ProductSpace, perm):
    """Matrix of the basis permutation e_S -> e_{perm(S)} induced by a curve permutation."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, space.n + 1)):
        raise InvalidIndex(f"{perm} is not a permutation of 1..{space.n}")
    labels = canonical_subsets(space.n)
    index = subset_index(space.n)
    rank = len(labels)
    mat = [[0] * rank for _ in range(rank)]
    for j, s in enumerate(labels):
        image = frozenset(perm[i - 1] for i in s)
        mat[index[image]][j] = 1
    return mat


# -- the class map -------------------------------------------------------


def v_map(x: CohClass) -> LatticeVector:
    """Closed-form class map: coordinate at S = coefficient of the complement of S."""
    require_real(x)
    space = x.space
    full = frozenset(range(1, space.n + 1))
    coords = []
    for s in canonical_subsets(space.n):
        coords.append(x.coefficient(full - s).re)
    return LatticeVector(lattice_for(space), coords)


def v_matrix(space: ProductSpace):
    """Matrix of v_map in the monomial basis (rows: lattice coords, cols: monomial coeffs).

    It is the permutation matrix sending the coefficient at monomial T to
    the lattice coordinate at its complement.
    """
    labels = canonical_subsets(space.n)
    index = subset_index(space.n)
    full = frozenset(range(1, space.n + 1))
    rank = len(labels)
    mat = [[Fraction(0)] * rank for _ in range(rank)]
    for i, s in enumerate(labels):
        mat[i][index[full - s]] = Fraction(1)
    return mat


def v_recursive(x: CohClass, m: int = 0) -> LatticeVector:
    """Recursive class map through twisted pushforwards along the last factor.

    Peels off the last curve: with push_k the pushforward of the class
    twisted by the degree-k line bundle on the last factor,

        prime_part  = v(push_m) - v(push_{m-1})
        second_part = v(push_m) - (m + 1 - g_n) * prime_part

    assembled so subsets containing n carry the prime part.  Independent of
    the integer twist m; the base case n = 1 reads off (degree, rank).
    """
    require_real(x)
    space = x.space
    n = space.n
    lattice = lattice_for(space)
    if n == 1:
        return v_map(x)
    m = int(m)
    g_n = space.genera[n - 1]

    def push_twisted(k: int) -> CohClass:
        twist = CohClass(
            space, {frozenset(): 1, frozenset({n}): k}
        )
        return pushforward(coh_mul(x, twist), n)

    v_m = v_recursive(push_twisted(m), m)
    v_m1 = v_recursive(push_twisted(m - 1), m)
    prime = v_m - v_m1
    second = v_m - prime.scale(m + 1 - g_n)

    index = subset_index(n)
    small_labels = canonical_subsets(n - 1)
    coords = [Fraction(0)] * lattice.rank
    for j, t in enumerate(small_labels):
        with_n = frozenset(t | {n})
        coords[index[with_n]] = prime.coords[j]
        coords[index[frozenset(t)]] = second.coords[j]
    return LatticeVector(lattice, coords)


# -- actions and sublattices ----------------------------------------------


def apply_action(action: IntegerMatrixAction, g: int, v: LatticeVector) -> LatticeVector:
    """Apply generator g (0-based) to a vector; exact matrix-vector product."""
    if not (0 <= g < len(action.generators)):
        raise InvalidIndex(f"generator index {g} out of range")
    if v.lattice != action.lattice:
        raise DimensionMismatch("vector does not live on the action's lattice")
    mat = action.generators[g]
    return LatticeVector(
        v.lattice,
        [sum(row[j] * v.coords[j] for j in range(len(row))) for row in mat],
    )


def invariant_sublattice(action: IntegerMatrixAction):
    """Basis of the saturated fixed sublattice {v : M v = v for all generators}.

    Returns the basis vectors as a list (the columns of the descent basis
    matrix), in canonical HNF order.  With no generators the whole lattice
    is fixed.
    """
    rank = action.lattice.rank
    stacked = []
    for mat in action.generators:
        for i, row in enumerate(mat):
            stacked.append([row[j] - (1 if i == j else 0) for j in range(rank)])
    if not stacked:
        return intlinalg.identity_matrix(rank)
    return intlinalg.int_kernel_basis(stacked, ncols=rank)


class QuotientData:
    """Output of quotient_by_kernel: rank, projection, and an integer section."""

    __slots__ = ("rank", "projection", "section", "kernel_basis")

    def __init__(self, rank, projection, section, kernel_basis):
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "projection", projection)
        object.__setattr__(self, "section", section)
        object.__setattr__(self, "kernel_basis", kernel_basis)

    def __setattr__(self, *args):
        raise AttributeError("QuotientData is immutable")


def quotient_by_kernel(lattice: LatticeDesc, charge) -> QuotientData:
    """Quotient of a lattice by the integer kernel of a charge functional.

    The kernel is the simultaneous integer kernel of the rational real and
    imaginary parts of the charge; it is saturated automatically because the
    image in C is torsion-free.  The projection matrix maps onto a free
    complement representing the quotient; the section is an integer right
    inverse of the projection.
    """
    if charge.rank != lattice.rank:
        raise DimensionMismatch("charge functional rank does not match lattice")
    rows = [
        [c.re for c in charge.coeffs],
        [c.im for c in charge.coeffs],
    ]
    kernel = intlinalg.rational_kernel_basis(rows, ncols=lattice.rank)
    q, p, s = intlinalg.quotient_projection(kernel, lattice.rank)
    return QuotientData(q, p, s, kernel)


def image_lattice_of_v(classes):
    """Canonical basis of the subgroup generated by the v-vectors of the classes.

    Integral inputs give integer basis rows; rational inputs are handled by
    clearing denominators across the family and scaling the canonical basis
    back, so the result is a basis of the honest subgroup of Q^(2^n).
    """
    vectors = [v_map(x) for x in classes]
    if not vectors:
        return []
    lcm = 1
    for vec in vectors:
        for c in vec.coords:
            lcm = lcm * c.denominator // intlinalg._gcd(lcm, c.denominator)
    rows = [[int(c * lcm) for c in vec.coords] for vec in vectors]
    basis = intlinalg.row_span_basis(rows)
    if lcm == 1:
        return basis
    return [[Fraction(x, lcm) for x in row] for row in basis]


def skyscraper_coords(n: int):
    """Coordinates of v of the point class: 1 at the empty subset, 0 elsewhere."""
    coords = [0] * (2 ** n)
    coords[0] = 1
    return coords


def image_lattice_of_charge(charge, lattice: LatticeDesc):
    """Basis of the subgroup of Q^2 = Q(i) generated by the charge of basis vectors.

    Returns (rank, basis) where basis is a list of (re, im) Fraction pairs in
    canonical form after clearing denominators.
    """
    if charge.rank != lattice.rank:
        raise DimensionMismatch("charge functional rank does not match lattice")
    pairs = [(c.re, c.im) for c in charge.coeffs]
    lcm = 1
    for re, im in pairs:
        for d in (re.denominator, im.denominator):
            lcm = lcm * d // intlinalg._gcd(lcm, d)
    rows = [[int(re * lcm), int(im * lcm)] for re, im in pairs]
    basis = intlinalg.row_span_basis(rows)
    scaled = [(Fraction(a, lcm), Fraction(b, lcm)) for a, b in basis]
    return len(scaled), scaled
