"""Filtered complexes over F₂[U, U⁻¹] and grading homogeneous maps between them.

A complex is stored by its generators (Alexander grading ``A``, Maslov grading ``M``) and by
monomial arrows ``s → U^n t``. Homogeneity forces ``n = (M(t) − M(s) + 1) / 2``, so every map is
stored as a plain bit matrix ``matrix[t, s]`` and the U-powers are recovered from the gradings.
"""

from __future__ import annotations

from collections.abc import Mapping as MappingABC
from dataclasses import dataclass
from functools import cached_property
import logging
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import orjson
from pydantic import ValidationError

from cfkinv.core.gf2 import bigraded_homology_ranks, gf2_inverse, gf2_matmul, graded_homology_ranks, to_gf2
from cfkinv.core.schema import ArrowRecord, ComplexFile, GeneratorRecord
from cfkinv.core.type_mapping import FiltrationKind
from cfkinv.errors import GradingInconsistent, ParseError, ValidationReport, VerificationFailed

logger = logging.getLogger(__name__)

Laurent = Dict[int, int]
Entry = Tuple[str, str, int]


def format_monomial(upower: int, name: str) -> str:
    """
    >>> format_monomial(0, "a"), format_monomial(1, "a"), format_monomial(-2, "x1")
    ('a', 'Ua', 'U^-2x1')
    """
    if upower == 0:
        return name
    if upower == 1:
        return f"U{name}"
    return f"U^{upower}{name}"


@dataclass(frozen=True)
class Generator:
    name: str
    alexander: int
    maslov: int


@dataclass(frozen=True, order=True)
class Arrow:
    """``∂(source)`` contains ``U^upower · target``."""

    source: str
    target: str
    upower: int


@dataclass(frozen=True, eq=False)
class CfkComplex:
    generators: Tuple[Generator, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CfkComplex):
            return NotImplemented
        return set(self.generators) == set(other.generators) and set(self.arrows) == set(other.arrows)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CfkComplex(generators={len(self.generators)}, arrows={len(self.arrows)})"

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {name: position for position, name in enumerate(self.names)}

    @cached_property
    def alexander(self) -> np.ndarray:
        return np.array([g.alexander for g in self.generators], dtype=np.int64)

    @cached_property
    def maslov(self) -> np.ndarray:
        return np.array([g.maslov for g in self.generators], dtype=np.int64)

    @cached_property
    def differential(self) -> np.ndarray:
        """Bit matrix of ∂; ``differential[t, s] = 1`` iff there is an arrow ``s → t``."""
        mat = np.zeros((len(self), len(self)), dtype=np.uint8)
        for arrow in self.arrows:
            mat[self.index[arrow.target], self.index[arrow.source]] ^= 1
        return mat

    def generator(self, name: str) -> Generator:
        return self.generators[self.index[name]]

    @classmethod
    def from_matrix(cls, generators: Sequence[Generator], matrix: np.ndarray) -> CfkComplex:
        """Build a complex whose arrows are the nonzero entries of ``matrix``."""
        gens = tuple(generators)
        arrows = []
        for t, s in zip(*np.nonzero(matrix)):
            doubled = gens[t].maslov - gens[s].maslov + 1
            if doubled % 2:
                raise GradingInconsistent(f"arrow {gens[s].name} -> {gens[t].name} has odd Maslov difference")
            arrows.append(Arrow(gens[s].name, gens[t].name, doubled // 2))
        return cls(gens, tuple(arrows))

    def restrict(self, names: Iterable[str]) -> CfkComplex:
        """Sub-quotient spanned by ``names`` (the arrows among them)."""
        keep = set(names)
        return CfkComplex(
            tuple(g for g in self.generators if g.name in keep),
            tuple(a for a in self.arrows if a.source in keep and a.target in keep),
        )

    def to_file(self) -> ComplexFile:
        return ComplexFile(
            generators=[GeneratorRecord(name=g.name, alexander=g.alexander, maslov=g.maslov) for g in self.generators],
            arrows=[ArrowRecord(**{"from": a.source, "to": a.target, "upower": a.upower}) for a in self.arrows],
        )


def _filtration_ok(kind: FiltrationKind, a_source: int, a_target: int, upower: int) -> bool:
    if kind == FiltrationKind.filtered:
        return upower >= 0 and a_target - upower <= a_source
    return upower >= max(-a_source, a_target)


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Grading homogeneous F₂[U, U⁻¹]-linear map ``source → target``.

    An entry ``s → U^n t`` satisfies ``M(t) − 2n − M(s) = maslov_shift``.
    """

    source: CfkComplex
    target: CfkComplex
    matrix: np.ndarray
    maslov_shift: int = 0
    kind: FiltrationKind = FiltrationKind.filtered

    def __post_init__(self):
        matrix = to_gf2(self.matrix).reshape(len(self.target), len(self.source))
        object.__setattr__(self, "matrix", matrix)
        rows, cols = np.nonzero(matrix)
        parity = (self.target.maslov[rows] - self.source.maslov[cols] - self.maslov_shift) % 2
        if parity.any():
            raise GradingInconsistent("map entry with odd Maslov difference")

    @classmethod
    def from_entries(
        cls,
        source: CfkComplex,
        target: CfkComplex,
        entries: Iterable[Entry],
        maslov_shift: int = 0,
        kind: FiltrationKind = FiltrationKind.filtered,
    ) -> GradedMap:
        """Build from ``(source name, target name, upower)`` triples; repeated entries cancel."""
        matrix = np.zeros((len(target), len(source)), dtype=np.uint8)
        for s, t, upower in entries:
            gap = target.generator(t).maslov - 2 * upower - source.generator(s).maslov
            if gap != maslov_shift:
                raise GradingInconsistent(
                    f"entry {s} -> {format_monomial(upower, t)} shifts Maslov by {gap}, expected {maslov_shift}"
                )
            matrix[target.index[t], source.index[s]] ^= 1
        return cls(source, target, matrix, maslov_shift, kind)

    @classmethod
    def identity(cls, c: CfkComplex) -> GradedMap:
        return cls(c, c, np.eye(len(c), dtype=np.uint8))

    @classmethod
    def zero(
        cls, source: CfkComplex, target: CfkComplex, maslov_shift: int = 0, kind=FiltrationKind.filtered
    ) -> GradedMap:
        return cls(source, target, np.zeros((len(target), len(source)), dtype=np.uint8), maslov_shift, kind)

    def upower(self, t: int, s: int) -> int:
        return int(self.target.maslov[t] - self.source.maslov[s] - self.maslov_shift) // 2

    @property
    def entries(self) -> Tuple[Entry, ...]:
        return tuple(
            sorted(
                (self.source.names[s], self.target.names[t], self.upower(t, s))
                for t, s in zip(*np.nonzero(self.matrix))
            )
        )

    def apply(self, name: str) -> Dict[str, int]:
        """Image of a single generator as ``{target name: upower}``."""
        s = self.source.index[name]
        return {self.target.names[t]: self.upower(t, s) for t in np.flatnonzero(self.matrix[:, s])}

    def describe(self) -> Dict[str, str]:
        out = {}
        for name in self.source.names:
            image = self.apply(name)
            out[name] = " + ".join(format_monomial(n, t) for t, n in sorted(image.items())) or "0"
        return out

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def is_invertible(self) -> bool:
        return len(self.source) == len(self.target) and gf2_inverse(self.matrix) is not None

    def violations(self, kind: Optional[FiltrationKind] = None) -> List[str]:
        kind = kind or self.kind
        bad = []
        for s, t, upower in self.entries:
            a_s = self.source.generator(s).alexander
            a_t = self.target.generator(t).alexander
            if not _filtration_ok(kind, a_s, a_t, upower):
                bad.append(f"{s} -> {format_monomial(upower, t)} is not {kind.value}")
        return bad

    def with_kind(self, kind: FiltrationKind) -> GradedMap:
        return GradedMap(self.source, self.target, self.matrix, self.maslov_shift, kind)

    def times_u(self, power: int) -> GradedMap:
        """Multiply by ``U^power``."""
        return GradedMap(self.source, self.target, self.matrix, self.maslov_shift - 2 * power, self.kind)

    def _check_same_shape(self, other: GradedMap):
        if (self.source.names, self.target.names) != (other.source.names, other.target.names):
            raise ValueError("maps act between different complexes")
        if self.maslov_shift != other.maslov_shift:
            raise ValueError(f"Maslov shifts differ: {self.maslov_shift} != {other.maslov_shift}")

    def __add__(self, other: GradedMap) -> GradedMap:
        self._check_same_shape(other)
        return GradedMap(self.source, self.target, self.matrix ^ other.matrix, self.maslov_shift, self.kind)

    def __matmul__(self, other: GradedMap) -> GradedMap:
        """Composition ``self ∘ other``."""
        if other.target.names != self.source.names:
            raise ValueError("maps are not composable")
        kind = FiltrationKind.filtered if self.kind == other.kind else FiltrationKind.skew
        return GradedMap(
            other.source,
            self.target,
            gf2_matmul(self.matrix, other.matrix),
            self.maslov_shift + other.maslov_shift,
            kind,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (
            self.source.names == other.source.names
            and self.target.names == other.target.names
            and self.maslov_shift == other.maslov_shift
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GradedMap({self.kind.value}, shift={self.maslov_shift}, {self.describe()})"


def differential_map(c: CfkComplex) -> GradedMap:
    return GradedMap(c, c, c.differential, -1, FiltrationKind.filtered)


def arrow_component(c: CfkComplex, arrow: Arrow) -> Tuple[int, int]:
    """Planar component ``(i, j)`` of an arrow: ``∂_{ij}`` lowers i by i and j by j."""
    return arrow.upower, c.generator(arrow.source).alexander - c.generator(arrow.target).alexander + arrow.upower


class DifferentialDecomposition(MappingABC):
    """The components ``∂_{ij}`` of a differential, keyed by ``(i, j)``."""

    def __init__(self, c: CfkComplex):
        self.complex = c
        grouped: Dict[Tuple[int, int], List[Arrow]] = {}
        for arrow in c.arrows:
            grouped.setdefault(arrow_component(c, arrow), []).append(arrow)
        self._components = {
            key: GradedMap.from_entries(c, c, ((a.source, a.target, a.upower) for a in arrows), -1)
            for key, arrows in sorted(grouped.items())
        }

    def __getitem__(self, key: Tuple[int, int]) -> GradedMap:
        return self._components[key]

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._components)

    def __len__(self) -> int:
        return len(self._components)

    def total(self, predicate=lambda i, j: True) -> GradedMap:
        out = GradedMap.zero(self.complex, self.complex, -1)
        for (i, j), component in self._components.items():
            if predicate(i, j):
                out = out + component
        return out

    @property
    def horizontal(self) -> GradedMap:
        """∂_horz = Σ ∂_{i0}."""
        return self.total(lambda i, j: j == 0)

    @property
    def vertical(self) -> GradedMap:
        """∂_vert = Σ ∂_{0j}."""
        return self.total(lambda i, j: i == 0)


def decompose_differential(c: CfkComplex) -> DifferentialDecomposition:
    return DifferentialDecomposition(c)


def verify_complex(c: CfkComplex) -> ValidationReport:
    """Check every axiom of a knot complex; never raises."""
    violations: List[str] = []
    if len(set(c.names)) != len(c.names):
        violations.append("duplicate generator names")
        return ValidationReport(tuple(violations))
    seen = set()
    arrows_ok = True
    for arrow in c.arrows:
        label = f"{arrow.source} -> {format_monomial(arrow.upower, arrow.target)}"
        if (arrow.source, arrow.target) in seen:
            violations.append(f"duplicate arrow {label}")
        seen.add((arrow.source, arrow.target))
        if arrow.source not in c.index or arrow.target not in c.index:
            violations.append(f"arrow {label} references an unknown generator")
            arrows_ok = False
            continue
        source, target = c.generator(arrow.source), c.generator(arrow.target)
        if arrow.upower < 0:
            violations.append(f"arrow {label} has a negative U-power")
        if source.maslov - 1 != target.maslov - 2 * arrow.upower:
            violations.append(f"arrow {label} is not Maslov homogeneous")
            arrows_ok = False
        if target.alexander - arrow.upower > source.alexander:
            violations.append(f"arrow {label} violates the filtration")
    if not arrows_ok:
        return ValidationReport(tuple(violations))

    d = c.differential
    if gf2_matmul(d, d).any():
        violations.append("differential does not square to zero")
        return ValidationReport(tuple(violations))

    decomposition = decompose_differential(c)
    vertical = graded_homology_ranks(c.maslov.tolist(), decomposition.total(lambda i, j: i == 0).matrix)
    if vertical != {0: 1}:
        violations.append(f"vertical homology is {vertical}, expected rank 1 in grading 0")
    horizontal = graded_homology_ranks(
        (c.maslov - 2 * c.alexander).tolist(), decomposition.total(lambda i, j: j == 0).matrix
    )
    if horizontal != {0: 1}:
        violations.append(f"horizontal homology is {horizontal}, expected rank 1 in grading 0")
    return ValidationReport(tuple(violations))


def require_verified(c: CfkComplex, what: str = "complex") -> CfkComplex:
    report = verify_complex(c)
    if not report.ok:
        raise VerificationFailed(f"{what} failed verification", report)
    return c


def mirror_dual(c: CfkComplex) -> CfkComplex:
    """Complex of the mirror: gradings negated, arrows transposed (same U-powers)."""
    return CfkComplex(
        tuple(Generator(g.name, -g.alexander, -g.maslov) for g in c.generators),
        tuple(Arrow(a.target, a.source, a.upower) for a in c.arrows),
    )


def dual_map(f: GradedMap, source: Optional[CfkComplex] = None, target: Optional[CfkComplex] = None) -> GradedMap:
    """Transpose of ``f: C → D`` as a map ``D* → C*`` between the mirror complexes."""
    return GradedMap(
        source or mirror_dual(f.target),
        target or mirror_dual(f.source),
        f.matrix.T.copy(),
        f.maslov_shift,
        f.kind,
    )


@dataclass(frozen=True, eq=False)
class BasisChange:
    """Mutually inverse (up to filtered homotopy) maps between two models of a complex."""

    to_new: GradedMap
    to_old: GradedMap

    @classmethod
    def identity(cls, c: CfkComplex) -> BasisChange:
        return cls(GradedMap.identity(c), GradedMap.identity(c))

    @property
    def old(self) -> CfkComplex:
        return self.to_new.source

    @property
    def new(self) -> CfkComplex:
        return self.to_new.target

    def then(self, other: BasisChange) -> BasisChange:
        return BasisChange(other.to_new @ self.to_new, self.to_old @ other.to_old)

    def transport(self, f: GradedMap) -> GradedMap:
        """Conjugate an endomorphism of the old complex onto the new one."""
        return (self.to_new @ f) @ self.to_old


def _conjugated_complex(
    c: CfkComplex, generators: Sequence[Generator], basis: np.ndarray
) -> Tuple[CfkComplex, BasisChange]:
    inverse = gf2_inverse(basis)
    if inverse is None:
        raise VerificationFailed("basis change", ValidationReport(("basis change is not invertible",)))
    new = CfkComplex.from_matrix(generators, gf2_matmul(inverse, gf2_matmul(c.differential, basis)))
    change = BasisChange(GradedMap(c, new, inverse), GradedMap(new, c, basis))
    bad = change.to_new.violations() + change.to_old.violations()
    if bad:
        raise VerificationFailed("basis change", ValidationReport(tuple(bad)))
    return new, change


def _replaced_term(c: CfkComplex, new_name: str, combination: Mapping[str, int], named: Optional[str]) -> str:
    level = {old: c.generator(old).alexander - upower for old, upower in combination.items()}
    top = max(level.values())
    if named is not None:
        if named not in combination:
            raise GradingInconsistent(f"{new_name} replaces {named}, which is not one of its terms")
        lead = named
    else:
        stem = new_name.rstrip("'")
        candidates = [old for old in combination if combination[old] == 0 and level[old] == top]
        if stem in candidates:
            lead = stem
        elif candidates:
            lead = max(candidates)
        else:
            raise GradingInconsistent(f"leading term of {new_name} must carry U^0")
    if combination[lead] != 0:
        raise GradingInconsistent(f"leading term of {new_name} must carry U^0")
    if level[lead] != top:
        raise GradingInconsistent(f"{lead} is not at the top filtration level of {new_name}")
    return lead


def change_basis(
    c: CfkComplex, basis: Mapping[str, Mapping[str, int]], replaces: Optional[Mapping[str, str]] = None
) -> Tuple[CfkComplex, BasisChange]:
    """Apply a filtered change of basis.

    ``basis`` maps each new generator name to its expansion ``{old name: upower}``. ``replaces``
    names the old generator each new one takes the place of. Without it the new generator
    replaces the term whose name it extends (``x-5'`` replaces ``x-5``), else the largest name
    among its ``U^0`` terms of top filtration level. Generators not replaced keep their names.
    """
    replaced: Dict[str, str] = {}
    for new_name, combination in basis.items():
        lead = _replaced_term(c, new_name, combination, (replaces or {}).get(new_name))
        if lead in replaced:
            raise GradingInconsistent(f"{lead} is the leading term of both {replaced[lead]} and {new_name}")
        replaced[lead] = new_name

    generators = []
    for g in c.generators:
        new_name = replaced.get(g.name, g.name)
        generators.append(Generator(new_name, g.alexander, g.maslov))
    matrix = np.eye(len(c), dtype=np.uint8)
    for lead, new_name in replaced.items():
        column = c.index[lead]
        matrix[:, column] = 0
        for old, upower in basis[new_name].items():
            if c.generator(old).maslov - 2 * upower != c.generator(lead).maslov:
                raise GradingInconsistent(f"term {format_monomial(upower, old)} of {new_name} is not homogeneous")
            matrix[c.index[old], column] ^= 1
    new, change = _conjugated_complex(c, generators, matrix)
    logger.debug("basis change: %s", {name: dict(combination) for name, combination in basis.items()})
    return new, change


def vertically_simplified_basis(c: CfkComplex) -> Tuple[CfkComplex, BasisChange]:
    """Filtered basis in which the vertical differential is a matching plus one survivor.

    Column reduction of the vertical differential with generators ordered by Alexander grading;
    a reduced column keeps the name of its own generator, and its boundary takes the name of
    its lowest-filtration-first pivot row.
    """
    order = sorted(range(len(c)), key=lambda g: (c.alexander[g], c.names[g]))
    vertical = decompose_differential(c).vertical.matrix
    reduced = vertical[np.ix_(order, order)].copy()
    combos = np.eye(len(c), dtype=np.uint8)
    low_owner: Dict[int, int] = {}
    for col in range(len(c)):
        while reduced[:, col].any():
            low = int(np.flatnonzero(reduced[:, col])[-1])
            if low not in low_owner:
                low_owner[low] = col
                break
            other = low_owner[low]
            reduced[:, col] ^= reduced[:, other]
            combos[:, col] ^= combos[:, other]

    basis = np.zeros((len(c), len(c)), dtype=np.uint8)
    for p in range(len(c)):
        g = order[p]
        if p in low_owner:
            column = reduced[:, low_owner[p]]
        else:
            column = combos[:, p]
        basis[np.array(order)[np.flatnonzero(column)], g] = 1
    new, change = _conjugated_complex(c, c.generators, basis)
    logger.debug("vertical pairs: %s", len(low_owner))
    return new, change


def reduce(c: CfkComplex) -> Tuple[CfkComplex, BasisChange]:
    """Cancel every ``U^0`` arrow between generators of equal Alexander grading.

    The smallest eligible ``(source, target)`` pair by name is cancelled first. Returns the
    reduced complex with the projection and inclusion homotopy equivalences.
    """
    names = list(c.names)
    gens = {g.name: g for g in c.generators}
    d = c.differential.copy()
    projection = np.eye(len(c), dtype=np.uint8)
    inclusion = np.eye(len(c), dtype=np.uint8)
    cancelled = 0
    while True:
        eligible = []
        for t, s in zip(*np.nonzero(d)):
            source, target = gens[names[s]], gens[names[t]]
            if source.maslov - 1 == target.maslov and source.alexander == target.alexander:
                eligible.append((names[s], names[t], s, t))
        if not eligible:
            break
        _, _, x, y = min(eligible)
        keep = [z for z in range(len(names)) if z not in (x, y)]
        dx = d[keep, x]
        dy = d[y, keep]
        step_projection = np.zeros((len(keep), len(names)), dtype=np.uint8)
        step_projection[np.arange(len(keep)), keep] = 1
        step_projection[:, y] = dx
        step_inclusion = np.zeros((len(names), len(keep)), dtype=np.uint8)
        step_inclusion[keep, np.arange(len(keep))] = 1
        step_inclusion[x, :] = dy
        d = d[np.ix_(keep, keep)] ^ np.outer(dx, dy).astype(np.uint8)
        projection = gf2_matmul(step_projection, projection)
        inclusion = gf2_matmul(inclusion, step_inclusion)
        names = [names[z] for z in keep]
        cancelled += 1
    reduced = CfkComplex.from_matrix([gens[name] for name in names], d)
    logger.debug("reduce cancelled %s pairs, %s generators left", cancelled, len(reduced))
    return reduced, BasisChange(GradedMap(c, reduced, projection), GradedMap(reduced, c, inclusion))


def summands(c: CfkComplex) -> List[Tuple[str, ...]]:
    """Arrow connected components, largest first."""
    parent = {name: name for name in c.names}

    def find(name: str) -> str:
        while parent[name] != name:
            parent[name] = parent[parent[name]]
            name = parent[name]
        return name

    for arrow in c.arrows:
        parent[find(arrow.source)] = find(arrow.target)
    groups: Dict[str, List[str]] = {}
    for name in c.names:
        groups.setdefault(find(name), []).append(name)
    return sorted((tuple(group) for group in groups.values()), key=lambda group: (-len(group), group))


def alexander_polynomial(c: CfkComplex) -> Laurent:
    """Σ (−1)^M t^A as ``{exponent: coefficient}`` without zero terms."""
    poly: Laurent = {}
    for g in c.generators:
        poly[g.alexander] = poly.get(g.alexander, 0) + (-1) ** (g.maslov % 2)
    return {exponent: coeff for exponent, coeff in sorted(poly.items()) if coeff}


def laurent_from_coefficients(coefficients: Sequence[int]) -> Laurent:
    """Symmetric coefficient list (lowest degree first) to a Laurent polynomial.

    >>> laurent_from_coefficients([1, -1, 1])
    {-1: 1, 0: -1, 1: 1}
    """
    if len(coefficients) % 2 == 0:
        raise ValueError("a symmetric Laurent polynomial has an odd number of coefficients")
    offset = len(coefficients) // 2
    return {degree - offset: coeff for degree, coeff in enumerate(coefficients) if coeff}


def format_laurent(poly: Laurent, variable: str = "t") -> str:
    """
    >>> format_laurent({-1: 1, 0: -1, 1: 1})
    't^-1 - 1 + t'
    """
    terms = []
    for exponent, coeff in sorted(poly.items()):
        power = "" if exponent == 0 else variable if exponent == 1 else f"{variable}^{exponent}"
        magnitude = abs(coeff)
        body = power if magnitude == 1 and power else f"{magnitude}{power}"
        terms.append(("-" if coeff < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def hfk_hat(c: CfkComplex) -> Dict[Tuple[int, int], int]:
    """Ranks of the homology of ∂₀₀ keyed by ``(maslov, alexander)``."""
    components = decompose_differential(c)
    d00 = components[(0, 0)].matrix if (0, 0) in components else np.zeros((len(c), len(c)), dtype=np.uint8)
    bidegrees = list(zip(c.maslov.tolist(), c.alexander.tolist()))
    return dict(sorted(bigraded_homology_ranks(bidegrees, d00).items(), key=lambda kv: (kv[0][1], kv[0][0])))


def format_poincare(ranks: Mapping[Tuple[int, int], int]) -> str:
    """Poincaré polynomial in ``q`` (Maslov) and ``t`` (Alexander).

    >>> format_poincare({(-7, -4): 1, (-6, -3): 3, (0, 0): 1})
    'q^-7t^-4 + 3q^-6t^-3 + 1'
    """
    terms = []
    for (maslov, alexander), rank in sorted(ranks.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        monomial = "".join(
            "" if exponent == 0 else var if exponent == 1 else f"{var}^{exponent}"
            for var, exponent in (("q", maslov), ("t", alexander))
        )
        terms.append(f"{rank if rank != 1 or not monomial else ''}{monomial}")
    return " + ".join(terms) or "0"


def read_complex(path: Union[str, Path]) -> CfkComplex:
    """Parse a complex interchange file without verifying it."""
    path = Path(path)
    try:
        raw = orjson.loads(path.read_bytes())
    except orjson.JSONDecodeError as e:
        raise ParseError(f"{path.name}: invalid JSON: {e.msg}", line=e.lineno, path=str(path)) from e
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}", path=str(path)) from e
    try:
        record = ComplexFile.model_validate(raw)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise ParseError(f"{path.name}: {error['msg']}", field=location, path=str(path)) from e
    c = complex_from_file(record)
    logger.debug("read %s from %s", c, path)
    return c


def load_complex(path: Union[str, Path]) -> CfkComplex:
    """Read and verify a complex interchange file."""
    path = Path(path)
    c = read_complex(path)
    report = verify_complex(c)
    if not report.ok:
        raise VerificationFailed(f"{path.name} failed verification", report, path=str(path))
    logger.debug("loaded %s from %s", c, path)
    return c


def complex_from_file(record: ComplexFile) -> CfkComplex:
    pairs = [(a.source, a.target) for a in record.arrows]
    duplicates = sorted({pair for pair in pairs if pairs.count(pair) > 1})
    if duplicates:
        raise ParseError(f"duplicate arrows {duplicates}", field="arrows")
    names = [g.name for g in record.generators]
    repeated = sorted({name for name in names if names.count(name) > 1})
    if repeated:
        raise ParseError(f"duplicate generators {repeated}", field="generators")
    unknown = sorted({end for a in record.arrows for end in (a.source, a.target)} - set(names))
    if unknown:
        raise ParseError(f"arrows mention unknown generators {unknown}", field="arrows")
    return CfkComplex(
        tuple(Generator(g.name, g.alexander, g.maslov) for g in record.generators),
        tuple(Arrow(a.source, a.target, a.upower) for a in record.arrows),
    )


def save_complex(c: CfkComplex, path: Union[str, Path]) -> None:
    payload = c.to_file().model_dump(by_alias=True)
    Path(path).write_bytes(orjson.dumps(payload, option=orjson.OPT_INDENT_2))


__all__ = [
    "Arrow",
    "BasisChange",
    "CfkComplex",
    "DifferentialDecomposition",
    "Generator",
    "GradedMap",
    "alexander_polynomial",
    "change_basis",
    "decompose_differential",
    "differential_map",
    "dual_map",
    "format_laurent",
    "format_poincare",
    "hfk_hat",
    "load_complex",
    "read_complex",
    "mirror_dual",
    "reduce",
    "save_complex",
    "summands",
    "verify_complex",
    "vertically_simplified_basis",
]
