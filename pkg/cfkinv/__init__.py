"""Involutive knot Floer invariants V0, V0 under and V0 over of (1,1)-knots."""  # noqa: RST303 D205

__version__ = "0.1.0"
