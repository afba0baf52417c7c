"""Exact invariants of intermediate Kato surfaces from their Dloussky sequences."""

from __future__ import annotations

from .anticanonical import (
    MultiplicityAssignment,
    solve,
    solve_adjunction_system,
    solve_chase,
    solve_closed_form,
    surface_index,
    tip_multiplicity,
)
from .errors import InternalConsistencyError, KatoError
from .germ import germ_index, germ_of, lattice_invariants, moduli_dimensions
from .graph import DualGraph, build_graph, graph_determinant, intersection_matrix
from .sequence import DlousskySequence, SimpleComponent, enumerate_sequences, parse_any, parse_text

__version__ = "0.1.0"

__all__ = [
    "DlousskySequence",
    "DualGraph",
    "InternalConsistencyError",
    "KatoError",
    "MultiplicityAssignment",
    "SimpleComponent",
    "build_graph",
    "enumerate_sequences",
    "germ_index",
    "germ_of",
    "graph_determinant",
    "intersection_matrix",
    "lattice_invariants",
    "moduli_dimensions",
    "parse_any",
    "parse_text",
    "solve",
    "solve_adjunction_system",
    "solve_chase",
    "solve_closed_form",
    "surface_index",
    "tip_multiplicity",
]
