"""Sarkar map and the involution ι_K.

Candidate maps ι are skew-filtered Maslov preserving chain maps. Every linear condition is a
GF(2) system over the entries of a bit matrix: an entry ``(t, s)`` is a variable when the
gradings allow ``s → U^n t`` for the requested filtration kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from cfkinv.core.cfk_algebra import CfkComplex, GradedMap, decompose_differential
from cfkinv.core.gf2 import SpanBasis, gf2_inverse, gf2_is_consistent, gf2_matmul, gf2_nullspace_basis, gf2_solve
from cfkinv.core.homology import FreeGradedComplex, snf_homology
from cfkinv.core.type_mapping import FiltrationKind
from cfkinv.errors import NoSolution, SolutionSpaceTooLarge

logger = logging.getLogger(__name__)

Position = Tuple[int, int]

DEFAULT_ENUMERATION_CAP = 2**20
DEFAULT_CLASS_LIMIT = 64


def phi_psi(c: CfkComplex) -> Tuple[GradedMap, GradedMap]:
    """Φ = Σ ∂_{i0} over odd i, Ψ = Σ ∂_{0j} over odd j."""
    components = decompose_differential(c)
    phi = components.total(lambda i, j: j == 0 and i % 2 == 1)
    psi = components.total(lambda i, j: i == 0 and j % 2 == 1)
    return phi, psi


def sarkar_map(c: CfkComplex) -> GradedMap:
    """σ = Id + U⁻¹ · Φ∘Ψ."""
    phi, psi = phi_psi(c)
    return GradedMap.identity(c) + (phi @ psi).times_u(-1)


def allowed_positions(
    source: CfkComplex, target: CfkComplex, maslov_shift: int, kind: FiltrationKind
) -> List[Position]:
    """Matrix entries ``(t, s)`` a homogeneous map of the given shift and kind may use."""
    gap = target.maslov[:, None] - source.maslov[None, :] - maslov_shift
    upower = gap // 2
    a_target = target.alexander[:, None]
    a_source = source.alexander[None, :]
    if kind == FiltrationKind.filtered:
        ok = (upower >= 0) & (a_target - upower <= a_source)
    else:
        ok = upower >= np.maximum(-a_source, a_target)
    rows, cols = np.nonzero((gap % 2 == 0) & ok)
    return list(zip(rows.tolist(), cols.tolist()))


def _bracket_matrix(source: CfkComplex, target: CfkComplex, positions: Sequence[Position]) -> np.ndarray:
    """Matrix of ``H ↦ ∂H + H∂`` from the given entries of H to flattened ``target × source`` maps."""
    d_target, d_source = target.differential, source.differential
    width = len(source)
    out = np.zeros((len(target) * width, len(positions)), dtype=np.uint8)
    for column, (t, s) in enumerate(positions):
        for w in np.flatnonzero(d_target[:, t]):
            out[w * width + s, column] ^= 1
        for x in np.flatnonzero(d_source[s]):
            out[t * width + x, column] ^= 1
    return out


def _homotopy_span(c: CfkComplex, maslov_shift: int, kind: FiltrationKind) -> SpanBasis:
    positions = allowed_positions(c, c, maslov_shift + 1, kind)
    span = SpanBasis(len(c) ** 2)
    for column in _bracket_matrix(c, c, positions).T:
        span.add(column)
    return span


def maps_homotopic(
    f: GradedMap, g: GradedMap, kind: FiltrationKind = FiltrationKind.skew
) -> Optional[GradedMap]:
    """A homotopy ``H`` of the given kind with ``f + g = ∂H + H∂``, or ``None`` if there is none."""
    if f.maslov_shift != g.maslov_shift:
        raise ValueError(f"Maslov shifts differ: {f.maslov_shift} != {g.maslov_shift}")
    source, target = f.source, f.target
    shift = f.maslov_shift + 1
    difference = (f.matrix ^ g.matrix).reshape(-1)
    positions = allowed_positions(source, target, shift, kind)
    if not difference.any():
        return GradedMap.zero(source, target, shift, kind)
    if not positions:
        return None
    solution = gf2_solve(_bracket_matrix(source, target, positions), difference)
    if solution is None:
        return None
    matrix = np.zeros((len(target), len(source)), dtype=np.uint8)
    for bit, (t, s) in zip(solution, positions):
        matrix[t, s] = bit
    return GradedMap(source, target, matrix, shift, kind)


class IotaValidator:
    """Checks the defining properties of ι: skew-filtered chain automorphism with ι² ≃ σ."""

    def __init__(self, c: CfkComplex, sarkar: Optional[GradedMap] = None):
        self.complex = c
        self.sarkar = sarkar or sarkar_map(c)
        self.filtered_homotopies = _homotopy_span(c, 0, FiltrationKind.filtered)

    def violations(self, iota: GradedMap) -> List[str]:
        problems = iota.violations(FiltrationKind.skew)
        if iota.maslov_shift != 0:
            problems.append(f"ι shifts Maslov grading by {iota.maslov_shift}")
        d = self.complex.differential
        if (gf2_matmul(d, iota.matrix) ^ gf2_matmul(iota.matrix, d)).any():
            problems.append("ι is not a chain map")
        problems.extend(self._matrix_violations(iota.matrix))
        return problems

    def _matrix_violations(self, matrix: np.ndarray) -> List[str]:
        if gf2_inverse(matrix) is None:
            return ["ι is not invertible"]
        defect = gf2_matmul(matrix, matrix) ^ self.sarkar.matrix
        if defect.reshape(-1) not in self.filtered_homotopies:
            return ["ι² is not filtered homotopic to σ"]
        return []

    def accepts_matrix(self, matrix: np.ndarray) -> bool:
        return not self._matrix_violations(matrix)

    def __call__(self, iota: GradedMap) -> bool:
        return not self.violations(iota)


def validate_iota(c: CfkComplex, iota: GradedMap) -> bool:
    return IotaValidator(c)(iota)


@dataclass(frozen=True, eq=False)
class SquareSystem:
    """The condition ι² ≃ σ on ``ι = Σ aᵢ·Dᵢ`` as quadratic equations over GF(2).

    With P the reduction modulo filtered null-homotopic maps, every kept coordinate ``b`` gives
    ``Σ aᵢ·P(Dᵢ²)[b] + Σ_{i<j} aᵢaⱼ·P(DᵢDⱼ + DⱼDᵢ)[b] = P(σ)[b]``.
    """

    linear: np.ndarray
    quadratic: np.ndarray
    target: np.ndarray

    @classmethod
    def build(cls, validator: IotaValidator, directions: Sequence[np.ndarray]) -> SquareSystem:
        n = len(validator.complex)
        span = validator.filtered_homotopies
        mats = [np.asarray(row).reshape(n, n) for row in directions]
        d = len(mats)
        linear = np.zeros((d, n * n), dtype=np.uint8)
        quadratic = np.zeros((d, d, n * n), dtype=np.uint8)
        for i, left in enumerate(mats):
            linear[i] = span.reduce(gf2_matmul(left, left))
            for j in range(i + 1, d):
                right = mats[j]
                quadratic[i, j] = quadratic[j, i] = span.reduce(gf2_matmul(left, right) ^ gf2_matmul(right, left))
        target = span.reduce(validator.sarkar.matrix)
        keep = linear.any(axis=0) | quadratic.any(axis=(0, 1)) | target.astype(bool)
        return cls(linear[:, keep], quadratic[:, :, keep], target[keep])

    @property
    def dimension(self) -> int:
        return len(self.linear)

    @cached_property
    def _symmetric(self) -> np.ndarray:
        return self.quadratic.astype(np.int64)

    @cached_property
    def _upper(self) -> np.ndarray:
        return self._symmetric * np.triu(np.ones((self.dimension, self.dimension), dtype=np.int64), 1)[:, :, None]

    def cover(self) -> List[int]:
        """Variables meeting every quadratic monomial, chosen greedily by degree."""
        edges = {(i, j) for i, j in zip(*np.nonzero(self.quadratic.any(axis=2))) if i < j}
        chosen: List[int] = []
        while edges:
            degree: Dict[int, int] = {}
            for i, j in edges:
                degree[i] = degree.get(i, 0) + 1
                degree[j] = degree.get(j, 0) + 1
            pick = min(degree, key=lambda k: (-degree[k], k))
            chosen.append(int(pick))
            edges = {edge for edge in edges if pick not in edge}
        return chosen

    def linearized(self, values: np.ndarray, assigned: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Equations linear in the unassigned variables: (rows, right hand side, free variables)."""
        fixed = np.where(assigned, values, 0).astype(np.int64)
        free = np.flatnonzero(~assigned)
        upper = self._upper
        mixed = np.tensordot(fixed, self._symmetric, axes=(0, 0)) % 2
        coefficients = (self.linear.astype(np.int64) + mixed) % 2
        constant = (
            self.target.astype(np.int64)
            + fixed @ self.linear.astype(np.int64)
            + np.tensordot(fixed, np.tensordot(fixed, upper, axes=(0, 0)), axes=(0, 0))
        ) % 2
        open_pairs = (~assigned).astype(np.int64)
        blocked = np.tensordot(open_pairs, np.tensordot(open_pairs, upper, axes=(0, 0)), axes=(0, 0)) > 0
        rows = coefficients[free][:, ~blocked].T.astype(np.uint8)
        return rows, constant[~blocked].astype(np.uint8), free


class SquareRootSearch:
    """Depth first search for every solution of a :class:`SquareSystem`.

    Variables of the cover are branched on, the rest solved linearly at each leaf. Each node and
    each emitted solution spends one unit of ``budget``; ``complete`` turns false once it runs out.
    """

    def __init__(self, system: SquareSystem, budget: int):
        self.system = system
        self.budget = budget
        self.spent = 0
        self.complete = True

    def _spend(self) -> bool:
        self.spent += 1
        if self.spent > self.budget:
            self.complete = False
            return False
        return True

    def solutions(self) -> Iterator[np.ndarray]:
        d = self.system.dimension
        yield from self._descend(self.system.cover(), 0, np.zeros(d, dtype=np.uint8), np.zeros(d, dtype=bool))

    def _descend(self, cover: List[int], depth: int, values: np.ndarray, assigned: np.ndarray) -> Iterator[np.ndarray]:
        if not self._spend():
            return
        rows, rhs, free = self.system.linearized(values, assigned)
        if depth < len(cover):
            if not gf2_is_consistent(rows, rhs):
                return
            variable = cover[depth]
            assigned[variable] = True
            for bit in (0, 1):
                values[variable] = bit
                yield from self._descend(cover, depth + 1, values, assigned)
            assigned[variable] = False
            values[variable] = 0
            return

        particular = gf2_solve(rows, rhs)
        if particular is None:
            return
        kernel = gf2_nullspace_basis(rows, len(free))
        solution = values.copy()
        solution[free] = particular
        for step in range(2 ** len(kernel)):
            if step:
                solution[free] ^= kernel[(step & -step).bit_length() - 1]
            if not self._spend():
                return
            yield solution.copy()


@dataclass(frozen=True, eq=False)
class IotaSolutionSet:
    """Solutions for ι on a complex.

    ``chain_maps`` spans the skew-filtered grading preserving chain maps (the affine space of
    candidates, with the zero map as particular solution); ``directions`` complete the
    skew-filtered null-homotopic maps to a basis of it, so that every combination of directions
    represents exactly one homotopy class. ``validated`` holds one representative per class that
    satisfies every property of ι.
    """

    complex: CfkComplex
    sarkar: GradedMap
    chain_maps: np.ndarray
    null_homotopic: SpanBasis
    directions: np.ndarray
    validated: Tuple[GradedMap, ...]
    exhaustive: bool = True

    def _as_map(self, vector: np.ndarray) -> GradedMap:
        n = len(self.complex)
        return GradedMap(self.complex, self.complex, vector.reshape(n, n), 0, FiltrationKind.skew)

    @property
    def basis_of_affine_space(self) -> Tuple[GradedMap, Tuple[GradedMap, ...]]:
        """(particular solution, kernel basis)."""
        zero = GradedMap.zero(self.complex, self.complex, 0, FiltrationKind.skew)
        return zero, tuple(self._as_map(row) for row in self.chain_maps)

    def residue(self, iota: GradedMap) -> bytes:
        return self.null_homotopic.reduce(iota.matrix.reshape(-1)).tobytes()

    @property
    def equivalence_classes(self) -> Tuple[Tuple[GradedMap, ...], ...]:
        grouped: Dict[bytes, List[GradedMap]] = {}
        for iota in self.validated:
            grouped.setdefault(self.residue(iota), []).append(iota)
        return tuple(tuple(group) for group in grouped.values())

    @property
    def representatives(self) -> Tuple[GradedMap, ...]:
        return tuple(group[0] for group in self.equivalence_classes)

    def is_candidate(self, iota: GradedMap) -> bool:
        """``iota`` lies in the span of the candidate chain maps."""
        span = SpanBasis(len(self.complex) ** 2)
        for row in self.chain_maps:
            span.add(row)
        return iota.matrix.reshape(-1) in span

    def class_of(self, iota: GradedMap) -> Optional[int]:
        """Index of the equivalence class homotopic to ``iota``, if any."""
        key = self.residue(iota)
        for index, group in enumerate(self.equivalence_classes):
            if self.residue(group[0]) == key:
                return index
        return None


def solve_iota(
    c: CfkComplex,
    cap: int = DEFAULT_ENUMERATION_CAP,
    class_limit: int = DEFAULT_CLASS_LIMIT,
    search_budget: Optional[int] = None,
) -> IotaSolutionSet:
    """Homotopy classes of maps satisfying the properties of ι on a reduced complex.

    Up to ``cap`` candidate classes are enumerated one by one. Larger spaces are searched through
    the quadratic equations of ι² ≃ σ (:class:`SquareSystem`) within ``search_budget`` steps (default ``cap``),
    stopping after ``class_limit`` classes; ``exhaustive`` then says whether every class was found.

    Classes are skew-filtered homotopy classes, not classes up to conjugation by filtered
    automorphisms, so a complex with box summands can have several (16 for 11n57).
    """
    n = len(c)
    positions = allowed_positions(c, c, 0, FiltrationKind.skew)
    flat = np.array([t * n + s for t, s in positions], dtype=np.int64)
    equations = _bracket_matrix(c, c, positions)
    kernel = gf2_nullspace_basis(equations, len(positions))
    chain_maps = np.zeros((len(kernel), n * n), dtype=np.uint8)
    if len(kernel):
        chain_maps[:, flat] = kernel

    null_homotopic = _homotopy_span(c, 0, FiltrationKind.skew)
    quotient = SpanBasis(n * n, list(null_homotopic.rows), list(null_homotopic.leads))
    directions = [row for row in chain_maps if quotient.add(row)]
    dimension = len(directions)
    logger.debug(
        "iota system: %s unknowns, %s equations, kernel %s, %s null-homotopic, %s classes to test",
        len(positions),
        len(equations),
        len(chain_maps),
        null_homotopic.rank,
        2**dimension,
    )

    validator = IotaValidator(c)
    found: List[np.ndarray] = []
    exhaustive = 2**dimension <= cap
    if exhaustive:
        vector = np.zeros(n * n, dtype=np.uint8)
        for step in range(2**dimension):
            if step:
                vector = vector ^ directions[(step & -step).bit_length() - 1]
            if validator.accepts_matrix(vector.reshape(n, n)):
                found.append(vector.copy())
    else:
        logger.warning("%s candidate classes exceed the cap %s, solving ι² ≃ σ", 2**dimension, cap)
        system = SquareSystem.build(validator, directions)
        budget = cap if search_budget is None else search_budget
        search = SquareRootSearch(system, budget)
        basis = np.array(directions, dtype=np.int64).reshape(dimension, n * n)
        for coefficients in search.solutions():
            vector = ((coefficients.astype(np.int64) @ basis) % 2).astype(np.uint8)
            if validator.accepts_matrix(vector.reshape(n, n)):
                found.append(vector)
                if len(found) >= class_limit:
                    break
        exhaustive = search.complete and len(found) < class_limit
        logger.debug("ι search: cover %s, %s steps, %s classes", len(system.cover()), search.spent, len(found))

    if not found:
        if exhaustive:
            raise NoSolution("no skew-filtered chain automorphism squares to σ up to homotopy")
        raise SolutionSpaceTooLarge(f"{dimension} free directions, no ι found within the search budget")

    solutions = IotaSolutionSet(
        complex=c,
        sarkar=validator.sarkar,
        chain_maps=chain_maps,
        null_homotopic=null_homotopic,
        directions=np.array(directions, dtype=np.uint8).reshape(dimension, n * n),
        validated=tuple(GradedMap(c, c, vector.reshape(n, n), 0, FiltrationKind.skew) for vector in found),
        exhaustive=exhaustive,
    )
    logger.info("iota: %s homotopy class(es)", len(solutions.equivalence_classes))
    return solutions


def drop_equivariant_acyclic_summands(
    c: CfkComplex, iotas: Sequence[GradedMap]
) -> Tuple[CfkComplex, Tuple[GradedMap, ...]]:
    """Remove direct summands preserved by every ι whose localized homology vanishes."""
    parent = list(range(len(c)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    links = [np.nonzero(c.differential)] + [np.nonzero(iota.matrix) for iota in iotas]
    for rows, cols in links:
        for t, s in zip(rows.tolist(), cols.tolist()):
            parent[find(t)] = find(s)

    groups: Dict[int, List[int]] = {}
    for k in range(len(c)):
        groups.setdefault(find(k), []).append(k)

    keep: List[int] = []
    for members in groups.values():
        sub = c.restrict(c.names[k] for k in members)
        towers = snf_homology(FreeGradedComplex(sub.names, sub.maslov, sub.differential)).rank
        if towers:
            keep.extend(members)
    keep.sort()
    if len(keep) == len(c):
        return c, tuple(iotas)

    reduced = c.restrict(c.names[k] for k in keep)
    restricted = tuple(
        GradedMap(reduced, reduced, iota.matrix[np.ix_(keep, keep)], iota.maslov_shift, iota.kind) for iota in iotas
    )
    logger.debug("dropped %s generators in equivariant acyclic summands", len(c) - len(keep))
    return reduced, restricted


__all__ = [
    "IotaSolutionSet",
    "IotaValidator",
    "SquareRootSearch",
    "SquareSystem",
    "allowed_positions",
    "drop_equivariant_acyclic_summands",
    "maps_homotopic",
    "phi_psi",
    "sarkar_map",
    "solve_iota",
    "validate_iota",
]
