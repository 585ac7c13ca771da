"""Ring arithmetic, characteristic classes, pushforwards, Euler pairing."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from stablat import (
    CohClass,
    InvalidIndex,
    InvalidSpace,
    NonNilpotentExponent,
    SpaceMismatch,
    canonical_subsets,
    ch_line_bundle,
    ch_skyscraper,
    coh_exp,
    coh_h,
    coh_h_total,
    coh_mul,
    coh_one,
    dualize,
    euler_form,
    gr,
    integrate,
    make_space,
    pullback,
    pushforward,
    todd,
)


def random_class(rng, space, complex_ok=False, bound=6):
    coeffs = {}
    for s in canonical_subsets(space.n):
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) if complex_ok else 0
        coeffs[s] = gr(re, im)
    return CohClass(space, coeffs)


# -- spaces ------------------------------------------------------------------


def test_make_space_examples():
    s = make_space([1, 1])
    assert s.n == 2 and s.genera == (1, 1)
    assert make_space([2]).n == 1
    with pytest.raises(InvalidSpace):
        make_space([])


def test_space_genus_gate_flag():
    assert make_space([1, 2]).all_positive_genus
    assert not make_space([0, 3]).all_positive_genus


def test_space_omit():
    assert make_space([1, 2, 3]).omit(2) == make_space([1, 3])
    with pytest.raises(InvalidIndex):
        make_space([1, 2]).omit(3)
    with pytest.raises(InvalidSpace):
        make_space([5]).omit(1)


def test_canonical_subset_order():
    assert list(canonical_subsets(2)) == [
        frozenset(),
        frozenset({1}),
        frozenset({2}),
        frozenset({1, 2}),
    ]


# -- multiplication ----------------------------------------------------------


def test_mul_square_zero_expansion():
    s = make_space([1, 1])
    h12 = coh_h(s, 1) + coh_h(s, 2)
    sq = coh_mul(h12, h12)
    assert sq == CohClass(s, {frozenset({1, 2}): 2})


def test_mul_h_squared_is_zero():
    s = make_space([1, 1])
    assert coh_mul(coh_h(s, 1), coh_h(s, 1)).is_zero()


def test_mul_hand_expansion():
    s = make_space([1, 1])
    x = CohClass(s, {frozenset(): 1, frozenset({2}): 3})
    y = CohClass(s, {frozenset(): 1, frozenset({2}): -1})
    assert coh_mul(x, y) == CohClass(s, {frozenset(): 1, frozenset({2}): 2})


def test_mul_space_mismatch():
    with pytest.raises(SpaceMismatch):
        coh_mul(coh_one(make_space([1])), coh_one(make_space([2])))


def test_monomial_products_exhaustive():
    # disjoint subsets multiply to the union, overlapping ones to zero
    for n in range(1, 5):
        s = make_space([1] * n)
        for a in canonical_subsets(n):
            for b in canonical_subsets(n):
                prod = coh_mul(CohClass(s, {a: 1}), CohClass(s, {b: 1}))
                if a & b:
                    assert prod.is_zero()
                else:
                    assert prod == CohClass(s, {a | b: 1})


def test_ring_axioms_random():
    rng = random.Random(21)
    for n in (1, 2, 3):
        s = make_space([rng.randint(0, 3) for _ in range(n)])
        for _ in range(20):
            x = random_class(rng, s, complex_ok=True)
            y = random_class(rng, s, complex_ok=True)
            z = random_class(rng, s, complex_ok=True)
            assert coh_mul(x, y) == coh_mul(y, x)
            assert coh_mul(coh_mul(x, y), z) == coh_mul(x, coh_mul(y, z))
            assert coh_mul(x, y + z) == coh_mul(x, y) + coh_mul(x, z)


# -- exponential ---------------------------------------------------------------


def test_exp_example():
    s = make_space([1, 1])
    x = (coh_h(s, 1) + coh_h(s, 2)).scale(gr(0, -1))
    expected = CohClass(
        s,
        {
            frozenset(): 1,
            frozenset({1}): gr(0, -1),
            frozenset({2}): gr(0, -1),
            frozenset({1, 2}): -1,
        },
    )
    assert coh_exp(x) == expected


def test_exp_zero_and_rank_one():
    s1 = make_space([2])
    assert coh_exp(CohClass(s1, {})) == coh_one(s1)
    a = Fraction(5, 3)
    got = coh_exp(coh_h(s1, 1).scale(a))
    assert got == CohClass(s1, {frozenset(): 1, frozenset({1}): a})


def test_exp_rejects_constant_term():
    s = make_space([1])
    with pytest.raises(NonNilpotentExponent):
        coh_exp(coh_one(s))


def test_exp_inverse_property():
    rng = random.Random(22)
    for n in (1, 2, 3, 4):
        s = make_space([1] * n)
        for _ in range(10):
            x = random_class(rng, s, complex_ok=True)
            nilpotent = x - x.degree_component(0)
            prod = coh_mul(coh_exp(nilpotent), coh_exp(-nilpotent))
            assert prod == coh_one(s)


# -- integration -----------------------------------------------------------------


def test_integrate_examples():
    s = make_space([1, 1])
    assert integrate(CohClass(s, {frozenset({1, 2}): 1})) == gr(1)
    assert integrate(CohClass(s, {frozenset(): 1, frozenset({1}): 5})) == gr(0)
    s3 = make_space([1, 1, 1])
    assert integrate(CohClass(s3, {frozenset({1, 2, 3}): gr(2, 3)})) == gr(2, 3)


# -- characteristic classes --------------------------------------------------------


def test_ch_line_bundle_closed_form():
    s = make_space([1, 1])
    a, b = 4, -7
    x = ch_line_bundle(s, (a, b))
    assert x == CohClass(
        s,
        {
            frozenset(): 1,
            frozenset({1}): a,
            frozenset({2}): b,
            frozenset({1, 2}): a * b,
        },
    )
    assert ch_line_bundle(make_space([3]), (0,)) == coh_one(make_space([3]))
    assert x == coh_exp(coh_h(s, 1).scale(a) + coh_h(s, 2).scale(b))


def test_ch_line_bundle_length_mismatch():
    with pytest.raises(SpaceMismatch):
        ch_line_bundle(make_space([1, 1]), (1,))


def test_skyscraper_class():
    s = make_space([1, 1])
    assert ch_skyscraper(s) == CohClass(s, {frozenset({1, 2}): 1})


def test_todd_examples():
    assert todd(make_space([1, 1])) == coh_one(make_space([1, 1]))
    g2 = make_space([2])
    assert todd(g2) == CohClass(g2, {frozenset(): 1, frozenset({1}): -1})
    s = make_space([0, 3])
    assert todd(s) == CohClass(
        s,
        {
            frozenset(): 1,
            frozenset({1}): 1,
            frozenset({2}): -2,
            frozenset({1, 2}): -2,
        },
    )


# -- pushforward / pullback ------------------------------------------------------


def test_pushforward_riemann_roch_fiber():
    s = make_space([1, 2])
    x = ch_line_bundle(s, (0, 3))
    assert x == CohClass(s, {frozenset(): 1, frozenset({2}): 3})
    pushed = pushforward(x, 2)
    assert pushed == CohClass(make_space([1]), {frozenset(): 2})


def test_pushforward_point_and_miss():
    s = make_space([1, 1])
    assert pushforward(coh_h(s, 2), 2) == coh_one(make_space([1]))
    assert pushforward(coh_one(s), 2).is_zero()
    with pytest.raises(InvalidIndex):
        pushforward(coh_one(s), 3)


def test_pushforward_reindexes_middle_factor():
    s = make_space([1, 2, 3])
    x = CohClass(s, {frozenset({2, 3}): 5})
    pushed = pushforward(x, 2)
    assert pushed == CohClass(make_space([1, 3]), {frozenset({2}): 5})


def test_pushforward_linear():
    rng = random.Random(23)
    s = make_space([1, 2, 0])
    for _ in range(15):
        x = random_class(rng, s)
        y = random_class(rng, s)
        r = rng.randint(1, 3)
        assert pushforward(x + y, r) == pushforward(x, r) + pushforward(y, r)


def test_projection_formula_on_monomials():
    # push(x * pull(y), r) == push(x, r) * y, exhaustively on monomials
    for genera in ((1, 2), (2, 0, 3)):
        space = make_space(genera)
        n = space.n
        for r in range(1, n + 1):
            small = space.omit(r)
            for a in canonical_subsets(n):
                for b in canonical_subsets(n - 1):
                    x = CohClass(space, {a: 1})
                    y = CohClass(small, {b: 1})
                    left = pushforward(coh_mul(x, pullback(space, y, r)), r)
                    right = coh_mul(pushforward(x, r), y)
                    assert left == right


def test_pullback_space_check():
    with pytest.raises(SpaceMismatch):
        pullback(make_space([1, 2]), coh_one(make_space([3])), 1)


# -- dual and Euler form ------------------------------------------------------------


def test_dualize_sign_rule():
    s = make_space([1, 1])
    x = CohClass(s, {frozenset(): 1, frozenset({1}): 4})
    assert dualize(x) == CohClass(s, {frozenset(): 1, frozenset({1}): -4})
    point = ch_skyscraper(s)
    assert dualize(point) == point


def test_dualize_involution_random():
    rng = random.Random(24)
    for _ in range(20):
        s = make_space([rng.randint(0, 3) for _ in range(rng.randint(1, 3))])
        x = random_class(rng, s, complex_ok=True)
        assert dualize(dualize(x)) == x


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_euler_structure_sheaf(g):
    s = make_space([g])
    assert euler_form(coh_one(s), coh_one(s)) == gr(1 - g)
    assert euler_form(coh_one(s), ch_skyscraper(s)) == gr(1)


def test_euler_symmetry_on_abelian_surface():
    rng = random.Random(25)
    s = make_space([1, 1])
    for _ in range(50):
        x = random_class(rng, s)
        y = random_class(rng, s)
        assert euler_form(x, y) == euler_form(y, x)


def test_euler_integrality_on_integral_classes():
    rng = random.Random(26)
    for _ in range(30):
        s = make_space([rng.randint(0, 3), rng.randint(0, 3)])
        x = ch_line_bundle(s, (rng.randint(-4, 4), rng.randint(-4, 4)))
        y = ch_skyscraper(s).scale(rng.randint(-3, 3)) + ch_line_bundle(
            s, (rng.randint(-4, 4), rng.randint(-4, 4))
        )
        value = euler_form(x, y)
        assert value.is_real() and value.re.denominator == 1


def test_euler_space_mismatch():
    with pytest.raises(SpaceMismatch):
        euler_form(coh_one(make_space([1])), coh_one(make_space([1, 1])))
