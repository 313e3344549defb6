"""Rigidity certificates for configurations of equal cylinders touching a unit ball."""
