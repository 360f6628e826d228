"""Quivers, monomial ideals and path combinatorics."""

from quiver.paths import (
    AdmissibilityError, Arrow, BoundQuiver, MonomialIdeal, Path, Quiver, QuiverError,
    Vertex, enumerate_nonzero_paths, in_ideal,
)
