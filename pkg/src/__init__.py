"""Newton-polyhedron weight toolkit: exact weights, Hodge numbers and monodromy certificates."""

__version__ = "0.1.0"
