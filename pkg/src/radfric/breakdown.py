"""Result containers for the force integrals."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PieceValue:
    """One reported force component, split into its two fluctuation pieces.

    piece1 is sourced by field fluctuations acting on the induced dipole,
    piece2 by dipole fluctuations radiating into the field.  The total is
    piece1 + piece2 by construction.
    """

    piece1: float
    piece2: float
    error1: float
    error2: float
    evaluations: int
    converged: bool

    def __post_init__(self):
        if self.error1 < 0 or self.error2 < 0:
            raise ValueError("error estimates must be non-negative")

    @property
    def total(self) -> float:
        return self.piece1 + self.piece2

    @property
    def error(self) -> float:
        return self.error1 + self.error2


@dataclass(frozen=True)
class ForceBreakdown:
    """Force components keyed by name ('fx', 'fz' or 'f0')."""

    components: dict
    note: str = ""

    def __getitem__(self, key: str) -> PieceValue:
        return self.components[key]

    def keys(self):
        return self.components.keys()

    @property
    def evaluations(self) -> int:
        return sum(p.evaluations for p in self.components.values())

    @property
    def converged(self) -> bool:
        return all(p.converged for p in self.components.values())


class AccuracyError(RuntimeError):
    """Quadrature failed to reach the requested accuracy.

    Carries the best available breakdown so callers can still report the
    partial result together with its achieved error estimates.
    """

    def __init__(self, message: str, breakdown: ForceBreakdown):
        super().__init__(message)
        self.breakdown = breakdown
