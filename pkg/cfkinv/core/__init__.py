"""Knot complexes, (1,1) diagrams, homology and the involutive invariants."""
