import numpy as np
import orjson
import pytest

from cfkinv.core.cfk_algebra import (
    Arrow,
    CfkComplex,
    Generator,
    GradedMap,
    alexander_polynomial,
    change_basis,
    decompose_differential,
    dual_map,
    format_laurent,
    format_poincare,
    hfk_hat,
    load_complex,
    mirror_dual,
    read_complex,
    reduce,
    save_complex,
    summands,
    verify_complex,
    vertically_simplified_basis,
)
from cfkinv.core.type_mapping import FiltrationKind
from cfkinv.errors import GradingInconsistent, ParseError, VerificationFailed
from tests.conftest import TEN_161_BASIS


def test_verify_shipped_complexes(trefoil, figure_eight, unknot, knot_11n57, knot_10_161):
    for c in (trefoil, figure_eight, unknot, knot_11n57, knot_10_161):
        assert verify_complex(c).ok


def test_verify_reports_every_broken_axiom(trefoil):
    broken = CfkComplex(trefoil.generators, (Arrow("b", "c", 0),))
    report = verify_complex(broken)
    assert not report.ok
    assert any("horizontal homology" in violation for violation in report.violations)

    inhomogeneous = CfkComplex(trefoil.generators, (Arrow("a", "c", 0),))
    assert any("Maslov" in violation for violation in verify_complex(inhomogeneous).violations)


def test_differential_squares_to_zero_check():
    generators = (Generator("x", 0, 0), Generator("y", 0, -1), Generator("z", 0, -2))
    c = CfkComplex(generators, (Arrow("x", "y", 0), Arrow("y", "z", 0)))
    assert verify_complex(c).violations == ("differential does not square to zero",)


def test_decomposition_of_trefoil(trefoil):
    components = decompose_differential(trefoil)
    assert set(components) == {(0, 1), (1, 0)}
    assert components.horizontal.describe()["b"] == "Ua"
    assert components.vertical.describe()["b"] == "c"


def test_alexander_polynomial(trefoil, figure_eight, knot_10_161):
    assert alexander_polynomial(trefoil) == {-1: 1, 0: -1, 1: 1}
    assert format_laurent(alexander_polynomial(knot_10_161)) == "t^-3 - 2t^-1 + 3 - 2t + t^3"
    figure_eight_poly = alexander_polynomial(figure_eight)
    assert figure_eight_poly in ({-1: -1, 0: 3, 1: -1}, {-1: 1, 0: -3, 1: 1})


def test_hfk_of_11n57(knot_11n57):
    ranks = hfk_hat(knot_11n57)
    assert sum(ranks.values()) == 17
    assert format_poincare(ranks) == (
        "q^-7t^-4 + 3q^-6t^-3 + 2q^-5t^-2 + q^-3t^-1 + 3q^-2 + q^-1t + 2q^-1t^2 + 3t^3 + qt^4"
    )


def test_mirror_dual(trefoil):
    mirror = mirror_dual(trefoil)
    assert verify_complex(mirror).ok
    assert mirror.generator("a").maslov == 0
    assert mirror.generator("c").alexander == 1
    assert Arrow("a", "b", 1) in mirror.arrows
    assert mirror_dual(mirror) == trefoil


def test_dual_map_transposes(trefoil):
    iota = GradedMap.from_entries(
        trefoil, trefoil, [("a", "c", -1), ("b", "b", 0), ("c", "a", 1)], 0, FiltrationKind.skew
    )
    dual = dual_map(iota)
    assert dual.source.names == trefoil.names
    assert np.array_equal(dual.matrix, iota.matrix.T)
    assert dual.describe() == {"a": "Uc", "b": "b", "c": "U^-1a"}


def test_graded_map_rejects_inhomogeneous_entries(trefoil):
    with pytest.raises(GradingInconsistent):
        GradedMap.from_entries(trefoil, trefoil, [("a", "b", 0)], 0)


def test_composition_and_sum(trefoil):
    identity = GradedMap.identity(trefoil)
    assert (identity @ identity) == identity
    assert (identity + identity).is_zero()
    assert identity.is_invertible()


def test_reduce_cancels_equal_alexander_arrows(trefoil):
    extra = (Generator("u", 0, 5), Generator("v", 0, 4))
    padded = CfkComplex(trefoil.generators + extra, trefoil.arrows + (Arrow("u", "v", 0),))
    reduced, change = reduce(padded)
    assert reduced == trefoil
    assert verify_complex(reduced).ok
    assert (change.to_new @ change.to_old) == GradedMap.identity(reduced)


def test_reduce_keeps_reduced_complex(trefoil):
    reduced, _ = reduce(trefoil)
    assert reduced == trefoil


def test_vertically_simplified_basis(knot_11n57):
    new, change = vertically_simplified_basis(knot_11n57)
    assert verify_complex(new).ok
    vertical = decompose_differential(new).vertical.matrix
    assert (vertical.sum(axis=0) <= 1).all()
    assert (vertical.sum(axis=1) <= 1).all()
    assert not change.to_new.violations()


def test_change_basis(figure_eight):
    new, change = change_basis(figure_eight, {"x2": {"x": 0, "e": 0}})
    assert "x2" in new.names and "x" not in new.names
    assert verify_complex(new).ok
    assert change.new is new
    assert not change.to_old.violations()


def test_change_basis_requires_u0_lead(trefoil):
    with pytest.raises(GradingInconsistent):
        change_basis(trefoil, {"a2": {"a": 1}})


def test_change_basis_splits_10_161(knot_10_161):
    new, change = change_basis(knot_10_161, TEN_161_BASIS)
    assert verify_complex(new).ok
    assert "x0" in new.names and "x-5'" in new.names and "x-5" not in new.names
    parts = sorted(summands(new), key=len)
    assert [len(part) for part in parts] == [4, 4, 5]
    assert set(parts[2]) == {"x0", "x3", "x-3", "x-4", "x4"}
    assert set(new.arrows) >= {Arrow("x6", "x5'", 0), Arrow("x6", "x1'", 1), Arrow("x-6", "x-5'", 1)}
    assert (change.to_new @ change.to_old) == GradedMap.identity(new)


def test_change_basis_named_replacement(knot_10_161):
    new, _ = change_basis(knot_10_161, {"y": {"x-5": 0, "x0": 0}}, replaces={"y": "x-5"})
    assert "x0" in new.names and "x-5" not in new.names
    with pytest.raises(GradingInconsistent):
        change_basis(knot_10_161, {"y": {"x-5": 0, "x0": 0}}, replaces={"y": "x6"})


def test_change_basis_rejects_lower_lead(knot_10_161):
    with pytest.raises(GradingInconsistent):
        change_basis(knot_10_161, {"y": {"x-1": 0, "x4": 0}}, replaces={"y": "x4"})


def test_summands(knot_11n57):
    parts = summands(knot_11n57)
    assert parts[0] == ("c", "e", "h", "m", "o")
    assert sorted(len(part) for part in parts) == [4, 4, 4, 5]


def test_file_round_trip(knot_10_161, complex_path):
    save_complex(knot_10_161, complex_path)
    assert load_complex(complex_path) == knot_10_161


def test_parse_errors(complex_path):
    complex_path.write_text("{not json")
    with pytest.raises(ParseError):
        read_complex(complex_path)

    complex_path.write_bytes(orjson.dumps({"generators": [{"name": "x", "alexander": 0}]}))
    with pytest.raises(ParseError) as excinfo:
        read_complex(complex_path)
    assert excinfo.value.field == "generators.0.maslov"

    complex_path.write_bytes(
        orjson.dumps(
            {
                "generators": [{"name": "x", "alexander": 0, "maslov": 0}],
                "arrows": [{"from": "x", "to": "y", "upower": 0}],
            }
        )
    )
    with pytest.raises(ParseError, match="unknown generators"):
        read_complex(complex_path)

    with pytest.raises(ParseError):
        read_complex(complex_path.parent / "missing.json")


def test_load_complex_verifies(trefoil, complex_path):
    save_complex(CfkComplex(trefoil.generators, (Arrow("b", "c", 0),)), complex_path)
    assert len(read_complex(complex_path)) == 3
    with pytest.raises(VerificationFailed):
        load_complex(complex_path)
