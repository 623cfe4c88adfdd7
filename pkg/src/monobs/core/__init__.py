"""Core computations: ideals, polyhedra, optimization, invariants and roots."""
