"""File formats: complex interchange files, knot results and expected tables."""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter


class GeneratorRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    alexander: int
    maslov: int


class ArrowRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    upower: int = Field(ge=0)


class ComplexFile(BaseModel):
    """``{"generators": [...], "arrows": [...]}``."""

    model_config = ConfigDict(extra="forbid")

    generators: List[GeneratorRecord]
    arrows: List[ArrowRecord] = Field(default_factory=list)


Triple = Tuple[int, int, int]


class KnotResult(BaseModel):
    """(V₀, V̲₀, V̄₀) of a knot and of its mirror."""

    name: str
    V0: Optional[int] = None
    V0under: Optional[int] = None
    V0over: Optional[int] = None
    mirror_V0: Optional[int] = None
    mirror_V0under: Optional[int] = None
    mirror_V0over: Optional[int] = None
    source: Optional[str] = None
    iota_classes: Optional[int] = None
    mirror_iota_classes: Optional[int] = None
    status: str = "ok"
    error: Optional[str] = None
    timings: Dict[str, float] = Field(default_factory=dict)

    @property
    def triple(self) -> Optional[Triple]:
        values = (self.V0, self.V0under, self.V0over)
        return None if None in values else values  # type: ignore[return-value]

    @property
    def mirror_triple(self) -> Optional[Triple]:
        values = (self.mirror_V0, self.mirror_V0under, self.mirror_V0over)
        return None if None in values else values  # type: ignore[return-value]

    def ordering_ok(self) -> bool:
        """V̲₀ ≥ V₀ ≥ V̄₀ for both the knot and its mirror."""
        return all(t is None or t[1] >= t[0] >= t[2] for t in (self.triple, self.mirror_triple))


class ExpectedRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    V0: int
    V0under: int
    V0over: int
    mirror_V0: int
    mirror_V0under: int
    mirror_V0over: int

    @property
    def triple(self) -> Triple:
        return self.V0, self.V0under, self.V0over

    @property
    def mirror_triple(self) -> Triple:
        return self.mirror_V0, self.mirror_V0under, self.mirror_V0over


KnotResults = TypeAdapter(List[KnotResult])
ExpectedTable = TypeAdapter(List[ExpectedRow])
