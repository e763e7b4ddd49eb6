"""Model-agreement metrics between block channel matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .green import BlockChannelMatrix

__all__ = ["ModelComparison", "nmse", "compare"]


@dataclass(frozen=True)
class ModelComparison:
    """NMSE of one candidate model against a reference, with context."""

    reference_variant: str
    candidate_variant: str
    nmse: float
    frob_ref: float


def nmse(candidate: BlockChannelMatrix, reference: BlockChannelMatrix) -> float:
    """Normalized mean squared error |C - R|_F^2 / |R|_F^2.

    Both matrices must have identical block dimensions and the same
    scaling state; the squared-magnitude sums accumulate in extended
    precision.  Scaling both matrices by a common factor leaves the
    result unchanged.
    """
    if candidate.matrix.shape != reference.matrix.shape:
        raise ValueError(
            f"dimension mismatch: candidate {candidate.matrix.shape} "
            f"vs reference {reference.matrix.shape}"
        )
    if candidate.scale_applied != reference.scale_applied:
        raise ValueError("mixed scaling: candidate and reference differ in scale_applied")
    den = np.sum(np.abs(reference.matrix) ** 2, dtype=np.longdouble)
    if den == 0.0:
        raise ValueError("degenerate reference: zero matrix")
    num = np.sum(np.abs(candidate.matrix - reference.matrix) ** 2, dtype=np.longdouble)
    return float(num / den)


def compare(candidate: BlockChannelMatrix, reference: BlockChannelMatrix) -> ModelComparison:
    """NMSE bundled with the variants and the reference Frobenius norm."""
    value = nmse(candidate, reference)
    return ModelComparison(
        reference_variant=reference.variant,
        candidate_variant=candidate.variant,
        nmse=value,
        frob_ref=float(np.linalg.norm(reference.matrix)),
    )
