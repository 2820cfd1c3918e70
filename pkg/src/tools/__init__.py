"""Exact computational modules: polytopes, weights, Hodge numbers, monodromy and finite-field checks."""
