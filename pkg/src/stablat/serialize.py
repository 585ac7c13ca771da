"""JSON interchange for every value type.

Rationals are strings "p/q" (or "p") in lowest terms; integer matrices are
plain JSON integers.  Every encoder/decoder pair round-trips bit-exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .charges import ChargeFunctional, StabilityDatum
from .cohomology import CohClass, ProductSpace
from .descent import DescentResult
from .errors import ParseError
from .gaussian import GaussianRational, format_rational, parse_rational
from .lattice import IntegerMatrixAction, LatticeDesc, LatticeVector, lattice_for
from .support import QuadraticForm


def _expect(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"missing key {key!r}")
    value = d[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"key {key!r} has wrong type")
    return value


def genera_from_json(d) -> ProductSpace:
    genera = _expect(d, "genera", list)
    return ProductSpace(genera)


# -- CohClass ---------------------------------------------------------------


def coh_to_json(x: CohClass) -> dict:
    terms = []
    for s, c in x.terms():
        terms.append(
            {
                "S": sorted(s),
                "re": format_rational(c.re),
                "im": format_rational(c.im),
            }
        )
    return {"genera": list(x.space.genera), "terms": terms}


def coh_from_json(d) -> CohClass:
    space = genera_from_json(d)
    terms = _expect(d, "terms", list)
    coeffs = {}
    for term in terms:
        s = frozenset(int(i) for i in _expect(term, "S", list))
        re = parse_rational(_expect(term, "re"))
        im = parse_rational(term.get("im", "0"))
        if s in coeffs:
            raise ParseError(f"duplicate subset {sorted(s)} in terms")
        coeffs[s] = GaussianRational(re, im)
    return CohClass(space, coeffs)


# -- LatticeVector ------------------------------------------------------------


def vector_to_json(v: LatticeVector) -> dict:
    out = {"coords": [format_rational(c) for c in v.coords]}
    if v.lattice.space is not None:
        out["genera"] = list(v.lattice.space.genera)
    return out


def vector_from_json(d, lattice: LatticeDesc = None) -> LatticeVector:
    coords = [parse_rational(c) for c in _expect(d, "coords", list)]
    if lattice is None:
        if "genera" in d:
            lattice = lattice_for(ProductSpace(d["genera"]))
        else:
            lattice = LatticeDesc(rank=len(coords))
    return LatticeVector(lattice, coords)


# -- IntegerMatrixAction ------------------------------------------------------


def _matrix_from_json(entry, rank=None):
    """Accept a nested row list or a flat row-major list of integers."""
    if not isinstance(entry, list) or not entry:
        raise ParseError("generator must be a non-empty list")
    if isinstance(entry[0], list):
        return [[int(x) for x in row] for row in entry]
    size = len(entry)
    if rank is None:
        rank = int(round(size ** 0.5))
    if rank * rank != size:
        raise ParseError(f"flat generator of length {size} is not square")
    return [
        [int(entry[i * rank + j]) for j in range(rank)] for i in range(rank)
    ]


def action_to_json(a: IntegerMatrixAction) -> dict:
    out = {
        "generators": [
            [x for row in g for x in row] for g in a.generators
        ]
    }
    if a.curve_permutations is not None:
        out["curve_permutations"] = [list(p) for p in a.curve_permutations]
    return out


def action_from_json(d, lattice: LatticeDesc = None) -> IntegerMatrixAction:
    gens_json = _expect(d, "generators", list)
    rank = lattice.rank if lattice is not None else None
    generators = [_matrix_from_json(g, rank) for g in gens_json]
    if lattice is None:
        if not generators:
            raise ParseError("cannot infer rank from an empty generator list")
        if "genera" in d:
            lattice = lattice_for(ProductSpace(d["genera"]))
        else:
            lattice = LatticeDesc(rank=len(generators[0]))
    perms = d.get("curve_permutations")
    return IntegerMatrixAction(lattice, generators, curve_permutations=perms)


# -- ChargeFunctional ---------------------------------------------------------


def charge_to_json(z: ChargeFunctional) -> dict:
    out = {
        "rank": z.rank,
        "coeffs": [
            {"re": format_rational(c.re), "im": format_rational(c.im)}
            for c in z.coeffs
        ],
    }
    if z.params:
        out["params"] = {
            k: format_rational(v) if isinstance(v, Fraction) else v
            for k, v in z.params.items()
        }
    return out


def charge_from_json(d) -> ChargeFunctional:
    rank = int(_expect(d, "rank"))
    coeffs = [
        GaussianRational(
            parse_rational(_expect(c, "re")), parse_rational(c.get("im", "0"))
        )
        for c in _expect(d, "coeffs", list)
    ]
    params = None
    if "params" in d and isinstance(d["params"], dict):
        params = {k: parse_rational(v) for k, v in d["params"].items()}
    return ChargeFunctional(rank, coeffs, params=params)


# -- StabilityDatum -----------------------------------------------------------


def datum_to_json(datum: StabilityDatum) -> dict:
    return {
        "genera": list(datum.space.genera),
        "charge": charge_to_json(datum.charge),
        "v_matrix": [
            [format_rational(x) for x in row] for row in datum.v_matrix
        ],
        "skyscraper_phase": format_rational(datum.skyscraper_phase),
    }


def datum_from_json(d) -> StabilityDatum:
    space = genera_from_json(d)
    charge = charge_from_json(_expect(d, "charge", dict))
    vm = [
        [parse_rational(x) for x in row] for row in _expect(d, "v_matrix", list)
    ]
    phase = parse_rational(d.get("skyscraper_phase", "1"))
    return StabilityDatum(space, charge, vm, skyscraper_phase=phase)


# -- QuadraticForm --------------------------------------------------------------


def form_to_json(q: QuadraticForm) -> dict:
    return {
        "dim": q.dimension,
        "matrix": [[format_rational(x) for x in row] for row in q.matrix],
    }


def form_from_json(d) -> QuadraticForm:
    matrix = [
        [parse_rational(x) for x in row] for row in _expect(d, "matrix", list)
    ]
    form = QuadraticForm(matrix)
    if "dim" in d and int(d["dim"]) != form.dimension:
        raise ParseError("declared dim does not match matrix size")
    return form


# -- DescentResult ---------------------------------------------------------------


def descent_to_json(result: DescentResult) -> dict:
    return {
        "invariant_rank": result.invariant_rank,
        "basis": [[int(x) for x in v] for v in result.invariant_basis],
        "restricted_charge": charge_to_json(result.restricted_charge),
        "skyscraper": [str(int(x)) for x in result.skyscraper_in_invariants],
    }


# -- GaussianRational leaf ----------------------------------------------------------


def value_to_json(z: GaussianRational) -> dict:
    return {"re": format_rational(z.re), "im": format_rational(z.im)}
