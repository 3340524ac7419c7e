"""Exceptions shared across the package."""


class GaplessError(ValueError):
    """A band gap required by the computation is closed (phase-transition point)."""


class NotHighSymmetryError(ValueError):
    """The requested momentum does not have the structure of a mass-type high-symmetry point."""
