"""Support-property checks: kernels, definiteness, norm constants, gluing.

A candidate support form is a symmetric rational quadratic form on the
real lattice; the checks here are (i) negative definiteness on the kernel
of a charge functional, decided exactly through characteristic-polynomial
coefficient signs, and (ii) non-negativity on a supplied list of classes.
The classes stand in for semistable objects; the caller owns that
interpretation.

The gluing check assembles, for each curve factor r, the projection of the
full lattice onto (lattice without r) + (its quotient by the smaller charge
kernel), and verifies that the intersection of all projection kernels is
zero, plus that the skyscraper vector survives every projection.  These are
the finitely checkable hypotheses of the gluing argument for the
distinguished charges; no support form for the glued side is invented.
"""

from __future__ import annotations

from fractions import Fraction

from . import intlinalg
from .charges import ChargeFunctional, charge_functional
from .cohomology import ProductSpace, canonical_subsets, subset_index
from .errors import (
    DegenerateBasis,
    DimensionMismatch,
    InvalidIndex,
    InvalidSpace,
    ZeroVector,
)
from .lattice import LatticeVector, lattice_for, quotient_by_kernel, skyscraper_coords


class QuadraticForm:
    """Symmetric rational matrix with exact evaluation v^T M v."""

    __slots__ = ("dimension", "matrix")

    def __init__(self, matrix):
        rows = [tuple(Fraction(x) for x in row) for row in matrix]
        k = len(rows)
        if any(len(row) != k for row in rows):
            raise DimensionMismatch("quadratic form matrix must be square")
        for i in range(k):
            for j in range(i + 1, k):
                if rows[i][j] != rows[j][i]:
                    raise DimensionMismatch(
                        f"matrix not symmetric at ({i},{j})"
                    )
        object.__setattr__(self, "dimension", k)
        object.__setattr__(self, "matrix", tuple(rows))

    def __setattr__(self, *args):
        raise AttributeError("QuadraticForm is immutable")

    def __call__(self, v) -> Fraction:
        coords = v.coords if isinstance(v, LatticeVector) else [Fraction(x) for x in v]
        if len(coords) != self.dimension:
            raise DimensionMismatch(
                f"vector length {len(coords)} vs form dimension {self.dimension}"
            )
        total = Fraction(0)
        for i, row in enumerate(self.matrix):
            if coords[i] == 0:
                continue
            total += coords[i] * sum(row[j] * coords[j] for j in range(self.dimension))
        return total

    @staticmethod
    def diagonal(entries) -> "QuadraticForm":
        entries = [Fraction(x) for x in entries]
        k = len(entries)
        return QuadraticForm(
            [[entries[i] if i == j else 0 for j in range(k)] for i in range(k)]
        )


def kernel_basis(charge: ChargeFunctional):
    """Primitive integer basis of the simultaneous kernel of Re and Im of the charge.

    The coefficients are rational, so this basis also spans the kernel of
    the real-linear extension.
    """
    rows = [
        [c.re for c in charge.coeffs],
        [c.im for c in charge.coeffs],
    ]
    return intlinalg.rational_kernel_basis(rows, ncols=charge.rank)


def is_negative_definite_on(form: QuadraticForm, basis) -> bool:
    """Decide negative definiteness of the form restricted to span(basis).

    The basis vectors must be linearly independent (checked).  The restricted
    matrix B^T M B is negative definite iff every coefficient of its
    characteristic polynomial det(x*I - B^T M B) is strictly positive; the
    test is exact.  An empty basis is vacuously negative definite.
    """
    vectors = [
        list(v.coords) if isinstance(v, LatticeVector) else [Fraction(x) for x in v]
        for v in basis
    ]
    if not vectors:
        return True
    if any(len(v) != form.dimension for v in vectors):
        raise DimensionMismatch("basis vector length does not match form dimension")
    if intlinalg.rational_rank(vectors) != len(vectors):
        raise DegenerateBasis("vectors passed as a basis are linearly dependent")
    b = intlinalg.transpose(vectors)  # dimension x k
    m = [list(row) for row in form.matrix]
    restricted = intlinalg.mat_mul(intlinalg.mat_mul(vectors, m), b)
    coeffs = intlinalg.charpoly(restricted)
    return all(c > 0 for c in coeffs[1:])


def check_support(form: QuadraticForm, charge: ChargeFunctional, classes) -> dict:
    """Full support report: kernel definiteness plus per-class non-negativity."""
    if form.dimension != charge.rank:
        raise DimensionMismatch("form dimension does not match charge rank")
    kernel = kernel_basis(charge)
    definite = is_negative_definite_on(form, kernel)
    per_class = []
    overall = definite
    for v in classes:
        value = form(v)
        ok = value >= 0
        overall = overall and ok
        coords = v.coords if isinstance(v, LatticeVector) else tuple(Fraction(x) for x in v)
        per_class.append({"coords": coords, "value": value, "nonnegative": ok})
    return {
        "kernel_rank": len(kernel),
        "kernel_basis": kernel,
        "negative_definite_on_kernel": definite,
        "classes": per_class,
        "pass": overall,
    }


def support_constant(charge: ChargeFunctional, classes) -> Fraction:
    """min over classes of |Z(v)|^2 / (sup norm of v)^2, an exact rational.

    Squares keep everything rational.  A class with zero norm is an error; a
    nonzero class killed by the charge returns 0 (support violated).
    """
    classes = list(classes)
    if not classes:
        raise ZeroVector("support_constant needs at least one class")
    best = None
    for v in classes:
        coords = v.coords if isinstance(v, LatticeVector) else [Fraction(x) for x in v]
        norm = max((abs(c) for c in coords), default=Fraction(0))
        if norm == 0:
            raise ZeroVector("a class with zero norm was supplied")
        value = charge(coords)
        ratio = value.norm_squared() / (norm * norm)
        if value.is_zero():
            return Fraction(0)
        if best is None or ratio < best:
            best = ratio
    return best


class GlueProjection:
    """Projection of the full lattice onto (lattice without r) + quotient block."""

    __slots__ = ("r", "matrix", "block_rank", "quotient_rank")

    def __init__(self, r, matrix, block_rank, quotient_rank):
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in matrix))
        object.__setattr__(self, "block_rank", block_rank)
        object.__setattr__(self, "quotient_rank", quotient_rank)

    def __setattr__(self, *args):
        raise AttributeError("GlueProjection is immutable")

    def apply(self, coords):
        coords = list(coords.coords) if isinstance(coords, LatticeVector) else list(coords)
        return intlinalg.mat_vec([list(r) for r in self.matrix], coords)


def _reindex_map(n: int, r: int):
    """Positions of the lifted subsets: small-lattice label -> big-lattice columns.

    Returns (with_r, without_r): for each subset T of {1..n-1} in canonical
    order, the column index in the big lattice of lift(T) | {r} and of
    lift(T), where lift restores the omitted index r.
    """
    big_index = subset_index(n)
    with_r = []
    without_r = []
    for t in canonical_subsets(n - 1):
        lifted = frozenset(i if i < r else i + 1 for i in t)
        with_r.append(big_index[lifted | {r}])
        without_r.append(big_index[lifted])
    return with_r, without_r


def glue_projection(space: ProductSpace, r: int, B, omega) -> GlueProjection:
    """The projection used in the gluing argument, for the factor r.

    First block: identity on the coordinates of subsets containing r,
    reindexed by removing r.  Second block: the quotient projection by the
    kernel of the distinguished charge of the space without r, applied to
    the coordinates of subsets not containing r.
    """
    n = space.n
    if n < 2:
        raise InvalidSpace("the gluing projection needs at least two factors")
    space._check_index(r)
    small = space.omit(r)
    small_lattice = lattice_for(small)
    quotient = quotient_by_kernel(small_lattice, charge_functional(small, B, omega))
    with_r, without_r = _reindex_map(n, r)
    width = 2 ** n
    small_rank = small_lattice.rank
    rows = []
    for j in range(small_rank):
        row = [0] * width
        row[with_r[j]] = 1
        rows.append(row)
    for qi in range(quotient.rank):
        row = [0] * width
        for j in range(small_rank):
            row[without_r[j]] = quotient.projection[qi][j]
        rows.append(row)
    return GlueProjection(r, rows, small_rank, quotient.rank)


def stacked_kernel_report(matrices, width) -> dict:
    """Common kernel of a family of projection matrices, with witness.

    Returns trivial_intersection and, when the intersection is nonzero, a
    witness vector from the canonical kernel basis.
    """
    stacked = []
    for matrix in matrices:
        stacked.extend([list(row) for row in matrix])
    kernel = intlinalg.int_kernel_basis(stacked, ncols=width)
    report = {"trivial_intersection": not kernel}
    if kernel:
        report["witness"] = kernel[0]
    return report


def glue_check(space: ProductSpace, B, omega) -> dict:
    """Check the finitely verifiable gluing hypotheses for the distinguished charge.

    Stacks all n projections and decides whether the intersection of their
    kernels is zero (exact rank computation), and whether the skyscraper
    vector has nonzero image under every projection.  Emits a genus warning
    instead of refusing when some factor has genus 0, since the underlying
    positivity statements assume positive genus.
    """
    n = space.n
    if n < 2:
        raise InvalidSpace("the gluing check needs at least two factors")
    projections = [glue_projection(space, r, B, omega) for r in range(1, n + 1)]
    width = 2 ** n
    report = stacked_kernel_report([p.matrix for p in projections], width)
    sky = skyscraper_coords(n)
    images_nonzero = [any(x != 0 for x in p.apply(sky)) for p in projections]
    report["skyscraper_images_nonzero"] = images_nonzero
    report["pass"] = report["trivial_intersection"] and all(images_nonzero)
    report["genus_warning"] = not space.all_positive_genus
    return report
