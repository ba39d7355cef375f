"""Quantum nilpotent algebras: PBW arithmetic, GY elements, centers and derivations."""
