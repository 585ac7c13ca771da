"""Numerical cohomology ring of a product of curves.

For X = C_1 x ... x C_n the numerical Chow ring is generated by the point
classes h_1, ..., h_n of the factors, subject to h_i^2 = 0 and commutativity.
A basis is given by the square-free monomials h_S = prod_{i in S} h_i indexed
by subsets S of {1..n}; a class is a finite map from subsets to Gaussian
rationals.  Integration is the coefficient of the full monomial h_1...h_n
(point-class normalization).

Everything here is exact and immutable.  The canonical subset order --
by (|S|, then lexicographically on sorted elements) -- is fixed once and
reused by every matrix in the library.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import (
    InvalidIndex,
    InvalidSpace,
    NonNilpotentExponent,
    NotARealClass,
    SpaceMismatch,
)
from .gaussian import GR_ONE, GR_ZERO, GaussianRational


class ProductSpace:
    """A product of n smooth projective curves, known only by its genera."""

    __slots__ = ("genera",)

    def __init__(self, genera):
        genera = tuple(int(g) for g in genera)
        if len(genera) == 0:
            raise InvalidSpace("a product space needs at least one curve factor")
        if any(g < 0 for g in genera):
            raise InvalidSpace(f"genera must be non-negative, got {genera}")
        object.__setattr__(self, "genera", genera)

    def __setattr__(self, *args):
        raise AttributeError("ProductSpace is immutable")

    @property
    def n(self) -> int:
        return len(self.genera)

    @property
    def all_positive_genus(self) -> bool:
        """Gate for statements that assume every factor has genus >= 1."""
        return all(g >= 1 for g in self.genera)

    def omit(self, r: int) -> "ProductSpace":
        """The product of the remaining n-1 curves after dropping factor r (1-based)."""
        self._check_index(r)
        if self.n == 1:
            raise InvalidSpace("cannot omit the only curve factor")
        return ProductSpace(self.genera[: r - 1] + self.genera[r:])

    def _check_index(self, r: int):
        if not (1 <= r <= self.n):
            raise InvalidIndex(f"curve index {r} out of range 1..{self.n}")

    def __eq__(self, other):
        return isinstance(other, ProductSpace) and self.genera == other.genera

    def __hash__(self):
        return hash(self.genera)

    def __repr__(self):
        return f"ProductSpace(genera={list(self.genera)})"


def make_space(genera) -> ProductSpace:
    """Construct the product space with the given genus sequence."""
    return ProductSpace(genera)


@lru_cache(maxsize=None)
def canonical_subsets(n: int) -> tuple:
    """All subsets of {1..n}, ordered by (size, lexicographic)."""
    out = []
    for size in range(n + 1):
        for combo in combinations(range(1, n + 1), size):
            out.append(frozenset(combo))
    return tuple(out)


@lru_cache(maxsize=None)
def subset_index(n: int) -> dict:
    """Map each subset of {1..n} to its position in the canonical order."""
    return {s: i for i, s in enumerate(canonical_subsets(n))}


def _as_subset(n: int, indices) -> frozenset:
    s = frozenset(int(i) for i in indices)
    for i in s:
        if not (1 <= i <= n):
            raise InvalidIndex(f"curve index {i} out of range 1..{n}")
    return s


class CohClass:
    """A cohomology class: subset-indexed Gaussian-rational coefficients.

    Absent keys mean zero; stored coefficients are nonzero.  Supports +, -,
    * (both ring product and scalar product), and comparison.
    """

    __slots__ = ("space", "coeffs")

    def __init__(self, space: ProductSpace, coeffs: dict):
        clean = {}
        for key, value in coeffs.items():
            key = _as_subset(space.n, key)
            if not isinstance(value, GaussianRational):
                value = GaussianRational(value)
            if not value.is_zero():
                clean[key] = value
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *args):
        raise AttributeError("CohClass is immutable")

    def coefficient(self, indices) -> GaussianRational:
        """Coefficient of h_S for S given as any iterable of 1-based indices."""
        return self.coeffs.get(_as_subset(self.space.n, indices), GR_ZERO)

    def terms(self):
        """(subset, coefficient) pairs in canonical order."""
        for s in canonical_subsets(self.space.n):
            if s in self.coeffs:
                yield s, self.coeffs[s]

    def degree_component(self, d: int) -> "CohClass":
        return CohClass(self.space, {s: c for s, c in self.coeffs.items() if len(s) == d})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs.values())

    def is_integral(self) -> bool:
        """All coefficients real with denominator 1."""
        return all(
            c.is_real() and c.re.denominator == 1 for c in self.coeffs.values()
        )

    def _check_same_space(self, other: "CohClass"):
        if self.space != other.space:
            raise SpaceMismatch(
                f"classes live on different spaces: {self.space} vs {other.space}"
            )

    def __add__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        self._check_same_space(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, GR_ZERO) + c
        return CohClass(self.space, out)

    def __sub__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return CohClass(self.space, {s: -c for s, c in self.coeffs.items()})

    def scale(self, scalar) -> "CohClass":
        if not isinstance(scalar, GaussianRational):
            scalar = GaussianRational(scalar)
        return CohClass(self.space, {s: c * scalar for s, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return coh_mul(self, other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, CohClass)
            and self.space == other.space
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.space, frozenset(self.coeffs.items())))

    def __repr__(self):
        if self.is_zero():
            return "CohClass(0)"
        parts = []
        for s, c in self.terms():
            mono = "1" if not s else "*".join(f"h{i}" for i in sorted(s))
            parts.append(f"({c!r})*{mono}")
        return "CohClass(" + " + ".join(parts) + ")"


# -- constructors -------------------------------------------------------


def coh_zero(space: ProductSpace) -> CohClass:
    return CohClass(space, {})


def coh_one(space: ProductSpace) -> CohClass:
    return CohClass(space, {frozenset(): GR_ONE})


def coh_h(space: ProductSpace, i: int) -> CohClass:
    """The point class h_i of the i-th factor (1-based)."""
    space._check_index(i)
    return CohClass(space, {frozenset({i}): GR_ONE})


def coh_h_total(space: ProductSpace) -> CohClass:
    """h_1 + ... + h_n, the class of the product polarization."""
    return CohClass(space, {frozenset({i}): GR_ONE for i in range(1, space.n + 1)})


def ch_skyscraper(space: ProductSpace) -> CohClass:
    """Class of a point: the full monomial h_1 ... h_n."""
    return CohClass(space, {frozenset(range(1, space.n + 1)): GR_ONE})


def ch_line_bundle(space: ProductSpace, degrees) -> CohClass:
    """Chern character of the multidegree-(a_1..a_n) line bundle.

    Equals exp(sum a_i h_i) = prod (1 + a_i h_i); the coefficient of h_S is
    prod_{i in S} a_i.
    """
    degrees = [int(a) for a in degrees]
    if len(degrees) != space.n:
        raise SpaceMismatch(
            f"expected {space.n} degrees, got {len(degrees)}"
        )
    coeffs = {}
    for s in canonical_subsets(space.n):
        prod = 1
        for i in s:
            prod *= degrees[i - 1]
        coeffs[s] = GaussianRational(prod)
    return CohClass(space, coeffs)


def todd(space: ProductSpace) -> CohClass:
    """Todd class prod_i (1 + (1 - g_i) h_i)."""
    coeffs = {}
    for s in canonical_subsets(space.n):
        prod = 1
        for i in s:
            prod *= 1 - space.genera[i - 1]
        coeffs[s] = GaussianRational(prod)
    return CohClass(space, coeffs)


# -- ring operations ----------------------------------------------------


def coh_mul(x: CohClass, y: CohClass) -> CohClass:
    """Ring product: (S,T) contributes to S|T iff S and T are disjoint."""
    x._check_same_space(y)
    out = {}
    for s, cs in x.coeffs.items():
        for t, ct in y.coeffs.items():
            if s & t:
                continue  # h_i^2 = 0
            key = s | t
            prod = cs * ct
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return CohClass(x.space, out)


def coh_exp(x: CohClass) -> CohClass:
    """exp of a nilpotent class: sum_{l=0}^{n} x^l / l!  (terminates)."""
    if not x.coefficient(()).is_zero():
        raise NonNilpotentExponent("coh_exp needs a class with zero constant term")
    result = coh_one(x.space)
    power = coh_one(x.space)
    for l in range(1, x.space.n + 1):
        power = coh_mul(power, x)
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial(l)))
    return result


def integrate(x: CohClass) -> GaussianRational:
    """Integral over the product: coefficient of h_1 ... h_n."""
    return x.coefficient(range(1, x.space.n + 1))


def dualize(x: CohClass) -> CohClass:
    """Multiply the degree-d component by (-1)^d (numerical dual)."""
    return CohClass(
        x.space,
        {s: (c if len(s) % 2 == 0 else -c) for s, c in x.coeffs.items()},
    )


def pushforward(x: CohClass, r: int) -> CohClass:
    """Pushforward along the projection forgetting the r-th curve.

    Multiplies by the Todd factor (1 + (1 - g_r) h_r), then integrates along
    the fiber: keeps the h_r-part of each term, with r removed from the key
    and the remaining indices reindexed to 1..n-1.
    """
    space = x.space
    space._check_index(r)
    target = space.omit(r)
    g_r = space.genera[r - 1]
    factor = CohClass(
        space, {frozenset(): GR_ONE, frozenset({r}): GaussianRational(1 - g_r)}
    )
    y = coh_mul(x, factor)
    out = {}
    for s, c in y.coeffs.items():
        if r not in s:
            continue
        out[frozenset(i if i < r else i - 1 for i in s if i != r)] = c
    return CohClass(target, out)


def pullback(space: ProductSpace, x: CohClass, r: int) -> CohClass:
    """Pullback along the projection forgetting factor r: reindex subsets.

    `x` must live on space.omit(r); the result lives on `space`.
    """
    space._check_index(r)
    if x.space != space.omit(r):
        raise SpaceMismatch(
            "pullback source must live on the space with factor omitted"
        )
    out = {}
    for s, c in x.coeffs.items():
        out[frozenset(i if i < r else i + 1 for i in s)] = c
    return CohClass(space, out)


def permute_curves(x: CohClass, perm) -> CohClass:
    """Relabel h_i -> h_{perm(i)} for a permutation of {1..n} (1-based images).

    Requires the genus pattern to be invariant under the permutation, so the
    result lives on the same space.
    """
    from .errors import NotSymmetricSpace

    space = x.space
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, space.n + 1)):
        raise InvalidIndex(f"{perm} is not a permutation of 1..{space.n}")
    for i in range(1, space.n + 1):
        if space.genera[i - 1] != space.genera[perm[i - 1] - 1]:
            raise NotSymmetricSpace(
                f"genera {space.genera} not invariant under permutation {perm}"
            )
    out = {}
    for s, c in x.coeffs.items():
        out[frozenset(perm[i - 1] for i in s)] = c
    return CohClass(space, out)


def euler_form(x: CohClass, y: CohClass) -> GaussianRational:
    """Euler pairing chi(x, y) = integral of dual(x) * y * td.

    For integral inputs the result is validated to be an integer.
    """
    x._check_same_space(y)
    value = integrate(coh_mul(coh_mul(dualize(x), y), todd(x.space)))
    if x.is_integral() and y.is_integral():
        # Riemann-Roch output on integral classes must be an integer.
        assert value.is_real() and value.re.denominator == 1, (
            f"euler_form returned non-integer {value!r} on integral classes"
        )
    return value


def require_real(x: CohClass) -> CohClass:
    """Raise NotARealClass unless every coefficient has zero imaginary part."""
    if not x.is_real():
        raise NotARealClass("operation requires a class with rational coefficients")
    return x
