import numpy as np
import pytest

from cfkinv.core.cfk_algebra import GradedMap, change_basis, mirror_dual, reduce
from cfkinv.core.diagram import Parameterization, build_diagram
from cfkinv.core.floer_from_diagram import diagram_complex
from cfkinv.core.gf2 import gf2_matmul
from cfkinv.core.involution import (
    IotaValidator,
    SquareRootSearch,
    SquareSystem,
    allowed_positions,
    drop_equivariant_acyclic_summands,
    maps_homotopic,
    phi_psi,
    sarkar_map,
    solve_iota,
    validate_iota,
)
from cfkinv.core.involutive_invariants import compute_involutive_v0s
from cfkinv.core.type_mapping import FiltrationKind
from cfkinv.errors import NoSolution, SolutionSpaceTooLarge
from tests.conftest import TEN_161_BASIS


def trefoil_iota(c):
    return GradedMap.from_entries(c, c, [("a", "c", -1), ("b", "b", 0), ("c", "a", 1)], 0, FiltrationKind.skew)


def test_phi_psi_of_trefoil(trefoil):
    phi, psi = phi_psi(trefoil)
    assert phi.describe() == {"a": "0", "b": "Ua", "c": "0"}
    assert psi.describe() == {"a": "0", "b": "c", "c": "0"}
    assert sarkar_map(trefoil) == GradedMap.identity(trefoil)


def test_sarkar_map_of_figure_eight(figure_eight):
    sigma = sarkar_map(figure_eight)
    # Φ∘Ψ(a) = Φ(c) = Ue
    assert sigma.describe()["a"] == "a + e"
    assert (sigma @ sigma) == GradedMap.identity(figure_eight)


def test_reflection_is_iota_of_trefoil(trefoil):
    iota = trefoil_iota(trefoil)
    assert not iota.violations()
    assert validate_iota(trefoil, iota)
    assert not validate_iota(trefoil, GradedMap.zero(trefoil, trefoil, 0, FiltrationKind.skew))


def test_validator_names_the_failures(trefoil):
    swap = GradedMap.from_entries(trefoil, trefoil, [("a", "c", -1), ("c", "a", 1)], 0, FiltrationKind.skew)
    assert "ι is not a chain map" in IotaValidator(trefoil).violations(swap)


def test_allowed_positions_are_skew_filtered(trefoil):
    positions = allowed_positions(trefoil, trefoil, 0, FiltrationKind.skew)
    index = trefoil.index
    assert (index["a"], index["c"]) in positions
    assert (index["c"], index["a"]) in positions
    assert (index["a"], index["a"]) not in positions


def test_solve_iota_trefoil(trefoil):
    solutions = solve_iota(trefoil)
    assert solutions.exhaustive
    assert len(solutions.equivalence_classes) == 1
    assert solutions.class_of(trefoil_iota(trefoil)) == 0
    assert solutions.is_candidate(trefoil_iota(trefoil))
    particular, kernel = solutions.basis_of_affine_space
    assert particular.is_zero()
    assert all(validate_iota(trefoil, iota) for iota in solutions.validated)
    assert kernel


def test_solve_iota_11n57(knot_11n57):
    reduced, _ = reduce(knot_11n57)
    solutions = solve_iota(reduced)
    for iota in solutions.representatives:
        assert validate_iota(reduced, iota)
        assert not iota.violations(FiltrationKind.skew)


def test_solve_iota_without_solution(monkeypatch, trefoil):
    monkeypatch.setattr(IotaValidator, "accepts_matrix", lambda self, matrix: False)
    with pytest.raises(NoSolution):
        solve_iota(trefoil)
    # with no search budget nothing is tried
    with pytest.raises(SolutionSpaceTooLarge):
        solve_iota(trefoil, cap=0)


def test_maps_homotopic(trefoil):
    iota = trefoil_iota(trefoil)
    homotopy = maps_homotopic(iota, iota)
    assert homotopy is not None and homotopy.is_zero()
    identity = GradedMap.identity(trefoil).with_kind(FiltrationKind.skew)
    assert maps_homotopic(iota, identity) is None


def test_drop_equivariant_acyclic_summands(knot_11n57):
    iota = GradedMap.identity(knot_11n57).with_kind(FiltrationKind.skew)
    reduced, (restricted,) = drop_equivariant_acyclic_summands(knot_11n57, [iota])
    assert sorted(reduced.names) == ["c", "e", "h", "m", "o"]
    assert restricted == GradedMap.identity(reduced).with_kind(FiltrationKind.skew)


def test_mirror_iota_classes(trefoil):
    assert len(solve_iota(mirror_dual(trefoil)).equivalence_classes) == 1
    assert np.array_equal(sarkar_map(mirror_dual(trefoil)).matrix, np.eye(3, dtype=np.uint8))


HAND_DERIVED_11N57_IOTA = [
    ("a", "q", -4),
    ("b", "n", -3),
    ("c", "o", -3),
    ("d", "p", -3),
    ("e", "k", -1),
    ("e", "m", -2),
    ("f", "l", -2),
    ("g", "k", -1),
    ("h", "i", 0),
    ("h", "h", 0),
    ("i", "i", 0),
    ("j", "j", 0),
    ("j", "h", 0),
    ("k", "g", 1),
    ("l", "f", 2),
    ("m", "e", 2),
    ("m", "g", 2),
    ("n", "b", 3),
    ("o", "c", 3),
    ("p", "d", 3),
    ("p", "b", 3),
    ("q", "a", 4),
]


def test_hand_derived_iota_of_11n57(knot_11n57):
    iota = GradedMap.from_entries(knot_11n57, knot_11n57, HAND_DERIVED_11N57_IOTA, 0, FiltrationKind.skew)
    assert IotaValidator(knot_11n57).violations(iota) == []
    assert (iota @ iota) == sarkar_map(knot_11n57)
    assert solve_iota(knot_11n57).class_of(iota) is not None


def test_solve_iota_11n57_classes(knot_11n57):
    solutions = solve_iota(knot_11n57)
    assert solutions.exhaustive
    # skew-filtered homotopy classes, not classes up to filtered automorphism
    assert len(solutions.equivalence_classes) == 16
    assert compute_involutive_v0s(knot_11n57, solutions, drop_summands=True) == (2, 1)


def test_square_root_search_finds_every_class(knot_11n57, knot_10_161):
    for c in (knot_11n57, reduce(knot_10_161)[0]):
        enumerated = solve_iota(c)
        searched = solve_iota(c, cap=1, class_limit=2**20, search_budget=2**20)
        assert searched.exhaustive
        assert {iota.matrix.tobytes() for iota in searched.validated} == {
            iota.matrix.tobytes() for iota in enumerated.validated
        }


def test_square_system_cover_meets_every_quadratic_term(knot_11n57):
    solutions = solve_iota(knot_11n57)
    system = SquareSystem.build(IotaValidator(knot_11n57), solutions.directions)
    assert system.dimension == len(solutions.directions)
    cover = set(system.cover())
    for i, j in zip(*np.nonzero(system.quadratic.any(axis=2))):
        assert i in cover or j in cover


def test_square_root_search_respects_budget(knot_11n57):
    solutions = solve_iota(knot_11n57)
    search = SquareRootSearch(SquareSystem.build(IotaValidator(knot_11n57), solutions.directions), budget=0)
    assert list(search.solutions()) == []
    assert not search.complete


def test_solve_iota_12n404():
    reduced, _ = reduce(diagram_complex(build_diagram(Parameterization(14, 7, -7, 1))))
    solutions = solve_iota(reduced)
    assert solutions.validated
    validator = IotaValidator(reduced)
    for iota in solutions.representatives:
        assert validator.violations(iota) == []


def test_10_161_iota_choices_are_homotopic(knot_10_161):
    c, _ = change_basis(knot_10_161, TEN_161_BASIS)
    # ι and ι' differ on x6 by U⁻¹x3; G(x1') = U⁻²x3 is the homotopy between them
    difference = GradedMap.from_entries(c, c, [("x6", "x3", -1)], 0, FiltrationKind.skew)
    homotopy = GradedMap.from_entries(c, c, [("x1'", "x3", -2)], 1, FiltrationKind.skew)
    assert difference.violations() == []
    assert homotopy.violations() == []
    bracket = gf2_matmul(c.differential, homotopy.matrix) ^ gf2_matmul(homotopy.matrix, c.differential)
    assert np.array_equal(bracket, difference.matrix)

    solutions = solve_iota(c)
    iota = solutions.representatives[0]
    other = iota + difference
    assert other != iota
    assert IotaValidator(c).violations(other) == []
    assert solutions.class_of(other) == solutions.class_of(iota) == 0
    assert maps_homotopic(iota, other) is not None


def test_class_limit_stops_the_search(knot_11n57):
    solutions = solve_iota(knot_11n57, cap=1, class_limit=3, search_budget=2**20)
    assert len(solutions.validated) == 3
    assert not solutions.exhaustive
