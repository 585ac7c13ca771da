"""JSON round trips are bit-exact; malformed payloads are rejected."""

import json
import random
from fractions import Fraction

import pytest

from stablat import (
    ChargeFunctional,
    CohClass,
    IntegerMatrixAction,
    LatticeDesc,
    LatticeVector,
    ParseError,
    QuadraticForm,
    canonical_subsets,
    charge_functional,
    descend,
    gr,
    hilbert_setup,
    lattice_for,
    make_space,
    permutation_matrix,
    standard_datum,
    v_map,
)
from stablat import serialize


def random_coh(rng, space):
    return CohClass(
        space,
        {
            s: gr(
                Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
            )
            for s in canonical_subsets(space.n)
        },
    )


def test_coh_roundtrip():
    rng = random.Random(71)
    for _ in range(20):
        space = make_space([rng.randint(0, 3) for _ in range(rng.randint(1, 3))])
        x = random_coh(rng, space)
        blob = json.dumps(serialize.coh_to_json(x))
        assert serialize.coh_from_json(json.loads(blob)) == x


def test_coh_json_shape():
    s = make_space([1, 1])
    x = CohClass(s, {frozenset({2, 1}): gr(Fraction(1, 2), -3)})
    d = serialize.coh_to_json(x)
    assert d == {
        "genera": [1, 1],
        "terms": [{"S": [1, 2], "re": "1/2", "im": "-3"}],
    }


def test_coh_rejects_duplicates_and_bad_fractions():
    base = {"genera": [1], "terms": [{"S": [1], "re": "1"}, {"S": [1], "re": "2"}]}
    with pytest.raises(ParseError):
        serialize.coh_from_json(base)
    with pytest.raises(ParseError):
        serialize.coh_from_json({"genera": [1], "terms": [{"S": [], "re": "1/0"}]})


def test_vector_roundtrip():
    s = make_space([1, 2])
    v = v_map(CohClass(s, {frozenset(): Fraction(3, 7), frozenset({1}): 2}))
    blob = serialize.vector_to_json(v)
    back = serialize.vector_from_json(blob)
    assert back == v
    assert blob["coords"] == [str(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}" for c in v.coords]


def test_vector_abstract_lattice():
    back = serialize.vector_from_json({"coords": ["1", "-2/3"]})
    assert back.lattice.rank == 2
    assert back.coords == (1, Fraction(-2, 3))


def test_action_roundtrip_flat_and_nested():
    s = make_space([1, 1])
    action = IntegerMatrixAction(
        lattice_for(s), [permutation_matrix(s, (2, 1))], curve_permutations=[(2, 1)]
    )
    blob = serialize.action_to_json(action)
    assert all(isinstance(x, int) for x in blob["generators"][0])
    back = serialize.action_from_json(blob, lattice_for(s))
    assert back.generators == action.generators
    assert back.curve_permutations == action.curve_permutations
    nested = {
        "generators": [[list(row) for row in action.generators[0]]],
        "curve_permutations": [[2, 1]],
    }
    back2 = serialize.action_from_json(nested, lattice_for(s))
    assert back2.generators == action.generators


def test_charge_roundtrip_with_params():
    s = make_space([1, 1, 1])
    z = charge_functional(s, Fraction(-2, 3), Fraction(5, 4))
    blob = json.dumps(serialize.charge_to_json(z))
    back = serialize.charge_from_json(json.loads(blob))
    assert back == z
    assert back.params == {"B": Fraction(-2, 3), "omega": Fraction(5, 4)}


def test_datum_roundtrip():
    s = make_space([1, 1])
    d = standard_datum(s, Fraction(1, 2), 1)
    blob = json.dumps(serialize.datum_to_json(d))
    back = serialize.datum_from_json(json.loads(blob))
    assert back.charge == d.charge
    assert back.v_matrix == d.v_matrix
    assert back.skyscraper_phase == 1


def test_form_roundtrip_and_dim_check():
    q = QuadraticForm([[Fraction(1, 2), 3], [3, -1]])
    blob = serialize.form_to_json(q)
    assert blob["dim"] == 2
    back = serialize.form_from_json(blob)
    assert back.matrix == q.matrix
    with pytest.raises(ParseError):
        serialize.form_from_json({"dim": 3, "matrix": [["1"]]})


def test_descent_result_json_shape():
    result = descend(hilbert_setup(1, 1, 2), 0, 1)
    blob = serialize.descent_to_json(result)
    assert blob["invariant_rank"] == 10
    assert len(blob["basis"]) == 10
    assert all(isinstance(x, int) for row in blob["basis"] for x in row)
    assert all(isinstance(x, str) for x in blob["skyscraper"])
    assert blob["restricted_charge"]["rank"] == 10
