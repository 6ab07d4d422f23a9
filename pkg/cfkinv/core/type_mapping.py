from __future__ import annotations

from enum import Enum, EnumMeta


class MetaEnum(EnumMeta):
    def __contains__(cls, item):
        try:
            cls(item)
        except ValueError:
            return False
        return True


class FiltrationKind(Enum, metaclass=MetaEnum):
    """How a graded map interacts with the planar (i, j) filtration."""

    filtered = "filtered"
    skew = "skew-filtered"


class SourceKind(Enum, metaclass=MetaEnum):
    """Where the complex of a knot table entry comes from."""

    params = "params"
    complex = "complex"
    pending = "pending"


class ArcKind(Enum, metaclass=MetaEnum):
    """α arcs of a (1,1) diagram, in serialization order."""

    loop_left = "loop-left"
    loop_right = "loop-right"
    bridge_1 = "bridge-family-1"
    bridge_2 = "bridge-family-2"


class ResultSource(Enum, metaclass=MetaEnum):
    diagram = "diagram"
    complex_file = "complex-file"


class RowStatus(Enum, metaclass=MetaEnum):
    """Outcome of one knot in a table run."""

    ok = "ok"
    match = "match"
    swapped = "swapped"
    mismatch = "mismatch"
    skipped = "skipped"
    error = "error"
    missing = "missing"
