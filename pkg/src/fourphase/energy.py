"""The four-phase piecewise-constant segmentation objective.

An image is split into four regions by two relaxed indicator functions
u1, u2 with values in [0, 1]; the pair of bits (u1 > tau, u2 > tau) selects
a phase. Each phase carries a constant mean intensity and a fidelity weight;
the two indicators each pay a total-variation penalty. This module evaluates
the objective, the closed-form mean refresh, and the two pointwise fitting
fields that drive the indicator updates.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .grid import total_variation

__all__ = [
    "PhaseMeans",
    "FittingWeights",
    "update_means",
    "fitting_r1",
    "fitting_r2",
    "segmentation_energy",
    "box_penalty",
    "penalty_weight_bound",
]


class PhaseMeans(NamedTuple):
    """Mean intensities of the four phases, indexed by the indicator bits."""

    c11: float
    c10: float
    c01: float
    c00: float


@dataclass(frozen=True)
class FittingWeights:
    """Fidelity weights (one per phase) and TV weights (one per indicator).

    The defaults suit images normalized to [0, 1]: equal unit fidelity for
    all phases and a TV weight of 0.01, strong enough to remove speckle noise
    while keeping the indicator dynamics fast.
    """

    lambda11: float = 1.0
    lambda10: float = 1.0
    lambda01: float = 1.0
    lambda00: float = 1.0
    mu1: float = 0.01
    mu2: float = 0.01

    def __post_init__(self):
        lams = (self.lambda11, self.lambda10, self.lambda01, self.lambda00)
        if min(lams) < 0 or max(lams) <= 0:
            raise ValueError(
                "fidelity weights must be nonnegative with at least one positive"
            )
        if self.mu1 <= 0 or self.mu2 <= 0:
            raise ValueError(
                f"TV weights must be positive, got mu1={self.mu1}, mu2={self.mu2}"
            )


def update_means(image, u1, u2, previous, eps=1e-8):
    """Closed-form refresh of the four region means.

    Each mean is the average of ``image`` weighted by the soft membership of
    its phase: u1*u2, u1*(1-u2), (1-u1)*u2, (1-u1)*(1-u2). A phase whose
    total membership falls below ``eps`` keeps its value from ``previous``,
    which keeps the objective well defined when a phase empties out.
    """
    weights = (
        u1 * u2,
        u1 * (1.0 - u2),
        (1.0 - u1) * u2,
        (1.0 - u1) * (1.0 - u2),
    )
    means = []
    for w, prev in zip(weights, previous):
        den = float(w.sum())
        means.append(float((image * w).sum() / den) if den >= eps else prev)
    return PhaseMeans(*means)


def fitting_r1(image, c, u2, w):
    """Pointwise fitting field for the first indicator.

    Positive values push u1 toward 0, negative toward 1; the sign compares
    the fidelity of the two phases reachable by flipping u1 at the current u2.
    """
    d11 = w.lambda11 * (image - c.c11) ** 2
    d10 = w.lambda10 * (image - c.c10) ** 2
    d01 = w.lambda01 * (image - c.c01) ** 2
    d00 = w.lambda00 * (image - c.c00) ** 2
    return (d11 - d01) * u2 + (d10 - d00) * (1.0 - u2)


def fitting_r2(image, c, u1, w):
    """Pointwise fitting field for the second indicator (mirror of fitting_r1)."""
    d11 = w.lambda11 * (image - c.c11) ** 2
    d10 = w.lambda10 * (image - c.c10) ** 2
    d01 = w.lambda01 * (image - c.c01) ** 2
    d00 = w.lambda00 * (image - c.c00) ** 2
    return (d11 - d10) * u1 + (d01 - d00) * (1.0 - u1)


def segmentation_energy(image, c, u1, u2, w):
    """Total objective: weighted TV of both indicators plus the four fidelity sums.

    Used for monitoring and testing only; the solver never evaluates it in its
    inner loop. On binary u1, u2 it coincides with the unrelaxed objective.
    """
    fidelity = (
        w.lambda11 * ((image - c.c11) ** 2 * u1 * u2).sum()
        + w.lambda10 * ((image - c.c10) ** 2 * u1 * (1.0 - u2)).sum()
        + w.lambda01 * ((image - c.c01) ** 2 * (1.0 - u1) * u2).sum()
        + w.lambda00 * ((image - c.c00) ** 2 * (1.0 - u1) * (1.0 - u2)).sum()
    )
    return w.mu1 * total_variation(u1) + w.mu2 * total_variation(u2) + float(fidelity)


def box_penalty(xi):
    """Exact penalty max{0, 2|xi - 1/2| - 1}: zero on [0, 1], positive outside.

    Monitoring helper; the solver enforces the box constraint by clamping, so
    this never enters the iteration.
    """
    return np.maximum(0.0, 2.0 * np.abs(np.asarray(xi, dtype=np.float64) - 0.5) - 1.0)


def penalty_weight_bound(r, margin):
    """A penalty weight strictly above half the sup-norm of the fitting field.

    ``margin`` must exceed 1 so the returned value clears the threshold that
    makes the box penalty exact.
    """
    if margin <= 1.0:
        raise ValueError(f"margin must exceed 1, got {margin}")
    return margin * 0.5 * float(np.abs(r).max())
