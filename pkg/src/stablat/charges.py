"""Exact central-charge functionals on subset-indexed lattices.

The distinguished family of charges on the lattice of a product of n curves
has, at the basis subset S, the coefficient -(-(B + i*omega))^|S| for a
rational parameter pair with omega > 0.  Evaluated against the class map,
this computes minus the integral of exp(-(B + i*omega)(h_1 + ... + h_n))
times the class.  For n = 1 it reduces to
-deg + B*rk + i*omega*rk.

Also here: the four real functionals a, b, c, d obtained by splitting off
the last curve factor, the tilt-style weak charge built from them, the
two-parameter product charge, the exact identity check that the product
charge at (s, t, beta) = (omega, omega, B) reproduces the distinguished
charge, exact phase descriptors (rays), and the comparison of two charge/
class-map data down to their composite functionals and skyscraper phases.

Parameters are restricted to rationals (omega > 0); every comparison is an
exact coefficient comparison, never numeric.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cohomology import ProductSpace, canonical_subsets, ch_skyscraper, subset_index
from .errors import (
    DimensionMismatch,
    InvalidParameter,
    InvalidSpace,
    SpaceMismatch,
    ZeroCharge,
)
from .gaussian import GaussianRational, as_fraction
from .lattice import LatticeDesc, LatticeVector, lattice_for, v_map, v_matrix


class ChargeFunctional:
    """A Z-linear functional on a lattice with Gaussian-rational coefficients."""

    __slots__ = ("rank", "coeffs", "params")

    def __init__(self, rank: int, coeffs, params=None):
        coeffs = tuple(
            c if isinstance(c, GaussianRational) else GaussianRational(c)
            for c in coeffs
        )
        if len(coeffs) != rank:
            raise DimensionMismatch(f"expected {rank} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "params", dict(params) if params else None)

    def __setattr__(self, *args):
        raise AttributeError("ChargeFunctional is immutable")

    def __call__(self, v) -> GaussianRational:
        """Evaluate on a LatticeVector or plain coordinate sequence."""
        coords = v.coords if isinstance(v, LatticeVector) else tuple(v)
        if len(coords) != self.rank:
            raise DimensionMismatch(
                f"vector has {len(coords)} coordinates, functional rank {self.rank}"
            )
        total = GaussianRational(0)
        for c, x in zip(self.coeffs, coords):
            total = total + c * Fraction(x)
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def real_part(self) -> "ChargeFunctional":
        return ChargeFunctional(self.rank, [GaussianRational(c.re) for c in self.coeffs])

    def imag_part(self) -> "ChargeFunctional":
        return ChargeFunctional(self.rank, [GaussianRational(c.im) for c in self.coeffs])

    def compose_matrix(self, matrix) -> "ChargeFunctional":
        """The functional v -> self(M v): coefficients are self's row times M."""
        rows = len(matrix)
        if rows != self.rank:
            raise DimensionMismatch("matrix row count must equal functional rank")
        cols = len(matrix[0]) if rows else 0
        out = []
        for j in range(cols):
            total = GaussianRational(0)
            for i in range(rows):
                entry = matrix[i][j]
                if entry:
                    total = total + self.coeffs[i] * Fraction(entry)
            out.append(total)
        return ChargeFunctional(cols, out, params=self.params)

    def __eq__(self, other):
        return (
            isinstance(other, ChargeFunctional)
            and self.rank == other.rank
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.rank, self.coeffs))

    def __repr__(self):
        return f"ChargeFunctional(rank={self.rank}, coeffs={list(self.coeffs)!r})"


def _check_omega(omega: Fraction):
    if omega <= 0:
        raise InvalidParameter(f"omega must be positive, got {omega}")


def charge_functional(space: ProductSpace, B, omega) -> ChargeFunctional:
    """The distinguished charge: coefficient -(-(B + i*omega))^|S| at subset S."""
    B = as_fraction(B)
    omega = as_fraction(omega)
    _check_omega(omega)
    z = GaussianRational(B, omega)
    labels = canonical_subsets(space.n)
    coeffs = [-((-z) ** len(s)) for s in labels]
    return ChargeFunctional(
        len(labels), coeffs, params={"B": B, "omega": omega}
    )


def abcd_functionals(space: ProductSpace, B, omega):
    """Real functionals (a, b, c, d) splitting the charge along the last factor.

    a + i*c is the functional pairing against the extra point class of the
    last curve; b + i*d pairs without it.  Both are expressed directly on
    the rank-2^n lattice: subsets containing n carry the a + i*c
    coefficients, the rest carry b + i*d.
    """
    if space.n < 2:
        raise InvalidSpace("the a/b/c/d split needs at least two curve factors")
    B = as_fraction(B)
    omega = as_fraction(omega)
    _check_omega(omega)
    z = GaussianRational(B, omega)
    n = space.n
    labels = canonical_subsets(n)
    ac = []
    bd = []
    for s in labels:
        if n in s:
            ac.append(-((-z) ** (len(s) - 1)))
            bd.append(GaussianRational(0))
        else:
            ac.append(GaussianRational(0))
            bd.append(-((-z) ** len(s)))
    rank = len(labels)
    a = ChargeFunctional(rank, [GaussianRational(c.re) for c in ac])
    c = ChargeFunctional(rank, [GaussianRational(x.im) for x in ac])
    b = ChargeFunctional(rank, [GaussianRational(x.re) for x in bd])
    d = ChargeFunctional(rank, [GaussianRational(x.im) for x in bd])
    return a, b, c, d


def weak_charge(a, b, c, d, t, beta) -> ChargeFunctional:
    """The weak charge a*t - d + c*beta + i*c*t built from the four split functionals."""
    t = as_fraction(t)
    beta = as_fraction(beta)
    if t <= 0:
        raise InvalidParameter(f"t must be positive, got {t}")
    rank = a.rank
    coeffs = []
    for k in range(rank):
        av, cv, dv = a.coeffs[k].re, c.coeffs[k].re, d.coeffs[k].re
        coeffs.append(GaussianRational(av * t - dv + cv * beta, cv * t))
    return ChargeFunctional(rank, coeffs, params={"t": t, "beta": beta})


def product_charge(a, b, c, d, s, t, beta) -> ChargeFunctional:
    """The product charge b + s*c - beta*a + i*(d - t*a - beta*c)."""
    s = as_fraction(s)
    t = as_fraction(t)
    beta = as_fraction(beta)
    if s <= 0 or t <= 0:
        raise InvalidParameter(f"s and t must be positive, got s={s}, t={t}")
    rank = a.rank
    coeffs = []
    for k in range(rank):
        av, bv, cv, dv = (
            a.coeffs[k].re,
            b.coeffs[k].re,
            c.coeffs[k].re,
            d.coeffs[k].re,
        )
        coeffs.append(
            GaussianRational(bv + s * cv - beta * av, dv - t * av - beta * cv)
        )
    return ChargeFunctional(rank, coeffs, params={"s": s, "t": t, "beta": beta})


def verify_zbw(space: ProductSpace, B, omega) -> dict:
    """Check that the product charge at (omega, omega, B) equals the distinguished charge.

    Compares all 2^n coefficients exactly; on mismatch reports the first
    differing basis subset and both values.
    """
    B = as_fraction(B)
    omega = as_fraction(omega)
    if space.n < 2:
        raise InvalidSpace("the comparison needs at least two curve factors")
    a, b, c, d = abcd_functionals(space, B, omega)
    built = product_charge(a, b, c, d, s=omega, t=omega, beta=B)
    direct = charge_functional(space, B, omega)
    labels = canonical_subsets(space.n)
    for idx, s in enumerate(labels):
        if built.coeffs[idx] != direct.coeffs[idx]:
            return {
                "equal": False,
                "subset": sorted(s),
                "index": idx,
                "product_value": built.coeffs[idx],
                "direct_value": direct.coeffs[idx],
            }
    return {"equal": True}


# -- phases ----------------------------------------------------------------


_AXIS_PHASES = {
    (0, 1): Fraction(1, 2),
    (-1, 0): Fraction(1),
    (0, -1): Fraction(3, 2),
    (1, 0): Fraction(2),
}


class PhaseDescriptor:
    """Exact ray of a nonzero charge value, plus branch data.

    ray: the primitive integer pair (p, q) with the value in R_{>0}*(p + qi).
    phi: exact branch value in (0, 2] when the ray lies on an axis, else None.
    phi_approx: float approximation of the branch value (display only).
    """

    __slots__ = ("ray", "phi", "phi_approx")

    def __init__(self, ray, phi, phi_approx):
        object.__setattr__(self, "ray", ray)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "phi_approx", phi_approx)

    def __setattr__(self, *args):
        raise AttributeError("PhaseDescriptor is immutable")

    def __repr__(self):
        return f"PhaseDescriptor(ray={self.ray}, phi={self.phi}, ~{self.phi_approx:.6f})"


def ray_of(value: GaussianRational):
    """Primitive integer direction (p, q) of a nonzero Gaussian rational."""
    if value.is_zero():
        raise ZeroCharge("zero charge value has no ray")
    re, im = value.re, value.im
    lcm = re.denominator * im.denominator // math.gcd(
        re.denominator, im.denominator
    )
    a = int(re * lcm)
    b = int(im * lcm)
    g = math.gcd(a, b)
    return (a // g, b // g)


def phase(charge: ChargeFunctional, v) -> PhaseDescriptor:
    """Phase descriptor of charge(v); branch fixed to (0, 2].

    Values in the semi-closed upper half plane (positive imaginary part, or
    negative real axis) get phi in (0, 1]; the remaining rays get (1, 2].
    Only axis rays have rational phi; other rays report the ray itself and a
    display-only float.
    """
    value = charge(v) if isinstance(charge, ChargeFunctional) else charge
    if value.is_zero():
        raise ZeroCharge("cannot take the phase of a zero charge value")
    ray = ray_of(value)
    phi = _AXIS_PHASES.get(ray)
    theta = math.atan2(float(value.im), float(value.re)) / math.pi
    phi_approx = theta if theta > 0 else theta + 2.0
    if phi is not None:
        phi_approx = float(phi)
    return PhaseDescriptor(ray, phi, phi_approx)


def phase_equals(z1, v1, z2, v2) -> bool:
    """True iff the two charge values lie on the same ray from the origin.

    Exact: cross product zero and dot product positive.  Accepts functional/
    vector pairs or precomputed GaussianRational values (pass None for the
    vector).
    """
    w1 = z1(v1) if isinstance(z1, ChargeFunctional) else z1
    w2 = z2(v2) if isinstance(z2, ChargeFunctional) else z2
    if w1.is_zero() or w2.is_zero():
        raise ZeroCharge("phase comparison needs nonzero charge values")
    cross = w1.re * w2.im - w1.im * w2.re
    dot = w1.re * w2.re + w1.im * w2.im
    return cross == 0 and dot > 0


# -- stability data ---------------------------------------------------------


class StabilityDatum:
    """Linear data of a stability structure: a lattice, a charge, a class map.

    `v_matrix` is the matrix of the class map in the monomial-coefficient
    basis of the ambient ring: rows are indexed by the lattice basis and
    columns by the canonical subsets.  `skyscraper_phase` is the exact phase
    of the point class under the charge (1 for the distinguished family).
    """

    __slots__ = ("space", "charge", "v_matrix", "skyscraper_phase", "params")

    def __init__(self, space: ProductSpace, charge: ChargeFunctional, v_matrix_, skyscraper_phase=Fraction(1), params=None):
        v_rows = [tuple(Fraction(x) for x in row) for row in v_matrix_]
        if len(v_rows) != charge.rank:
            raise DimensionMismatch("v-matrix rows must match charge rank")
        width = 2 ** space.n
        if any(len(row) != width for row in v_rows):
            raise DimensionMismatch("v-matrix columns must match monomial basis size")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "charge", charge)
        object.__setattr__(self, "v_matrix", tuple(v_rows))
        object.__setattr__(self, "skyscraper_phase", Fraction(skyscraper_phase))
        object.__setattr__(self, "params", dict(params) if params else None)

    def __setattr__(self, *args):
        raise AttributeError("StabilityDatum is immutable")

    def composite(self) -> ChargeFunctional:
        """The functional charge∘v on the monomial-coefficient space."""
        return self.charge.compose_matrix([list(r) for r in self.v_matrix])

    def skyscraper_value(self) -> GaussianRational:
        """Charge of the class map applied to the point class."""
        index = subset_index(self.space.n)
        full = frozenset(range(1, self.space.n + 1))
        col = index[full]
        coords = [row[col] for row in self.v_matrix]
        return self.charge(coords)


def standard_datum(space: ProductSpace, B, omega) -> StabilityDatum:
    """The distinguished datum: full lattice, distinguished charge, closed-form v."""
    charge = charge_functional(space, B, omega)
    return StabilityDatum(
        space,
        charge,
        v_matrix(space),
        skyscraper_phase=Fraction(1),
        params=charge.params,
    )


def quotient_datum(space: ProductSpace, B, omega) -> StabilityDatum:
    """Same charge pushed to the quotient of the lattice by the charge kernel.

    Produces the reduced datum whose composite functional provably equals
    the standard one: v is replaced by projection∘v, the charge by its
    factorization through the quotient (computed via an integer section).
    """
    from .lattice import quotient_by_kernel

    charge = charge_functional(space, B, omega)
    lattice = lattice_for(space)
    quotient = quotient_by_kernel(lattice, charge)
    section_cols = quotient.section  # rank x q
    reduced_coeffs = []
    for j in range(quotient.rank):
        column = [section_cols[i][j] for i in range(lattice.rank)]
        reduced_coeffs.append(charge(column))
    reduced_charge = ChargeFunctional(quotient.rank, reduced_coeffs, params=charge.params)
    vm = v_matrix(space)
    projected = [
        [
            sum(Fraction(quotient.projection[i][k]) * vm[k][j] for k in range(lattice.rank))
            for j in range(len(vm[0]))
        ]
        for i in range(quotient.rank)
    ]
    return StabilityDatum(
        space, reduced_charge, projected, skyscraper_phase=Fraction(1), params=charge.params
    )


def linear_data_equal(d1: StabilityDatum, d2: StabilityDatum) -> dict:
    """Compare two data by composite functionals and skyscraper phases.

    The verdict covers exactly the linear data: (i) the composites charge∘v
    agree coefficientwise on the monomial basis, and (ii) the skyscraper
    phases agree as rays.  Whether that pins down anything beyond the linear
    data is out of computational scope and deliberately not claimed.
    """
    if d1.space != d2.space:
        raise SpaceMismatch("data live over different product spaces")
    comp1 = d1.composite()
    comp2 = d2.composite()
    labels = canonical_subsets(d1.space.n)
    witness = None
    for idx, s in enumerate(labels):
        if comp1.coeffs[idx] != comp2.coeffs[idx]:
            witness = {
                "subset": sorted(s),
                "index": idx,
                "value1": comp1.coeffs[idx],
                "value2": comp2.coeffs[idx],
            }
            break
    composites_equal = witness is None
    sky1 = d1.skyscraper_value()
    sky2 = d2.skyscraper_value()
    phases_equal = phase_equals(sky1, None, sky2, None)
    return {
        "composites_equal": composites_equal,
        "witness": witness,
        "skyscraper_phases_equal": phases_equal,
        "equal": composites_equal and phases_equal,
        "scope": "verdict covers central-charge composites and skyscraper phases only",
    }


def skyscraper_vector(space: ProductSpace) -> LatticeVector:
    """v of the point class: 1 at the empty subset, 0 elsewhere."""
    return v_map(ch_skyscraper(space))
