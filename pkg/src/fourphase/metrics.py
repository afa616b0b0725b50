"""Agreement metrics between integer label maps.

All pairwise metrics reduce to the contingency table of joint label counts.
Dice compares one binary mask per phase; the Rand index counts compatible
pixel pairs; the global consistency error measures one-directional region
refinement; the variation of information sums the two conditional entropies
(natural log, lower is better, 0 means identical up to relabeling).
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "dice",
    "contingency",
    "rand_index",
    "gce",
    "variation_of_information",
    "MetricReport",
    "full_report",
]


def _check_shapes(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def dice(a, b):
    """Dice coefficient 2|A∩B| / (|A| + |B|) of two binary masks.

    Both empty counts as perfect agreement (1.0); empty versus nonempty is 0.
    """
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    _check_shapes(a, b)
    total = int(a.sum()) + int(b.sum())
    if total == 0:
        return 1.0
    return 2.0 * int((a & b).sum()) / total


def contingency(l1, l2):
    """Joint label count matrix: entry (k, l) counts cells labeled k in l1 and l in l2."""
    l1 = np.asarray(l1)
    l2 = np.asarray(l2)
    _check_shapes(l1, l2)
    if l1.size == 0 or l1.min() < 0 or l2.min() < 0:
        raise ValueError("labelings must be nonempty with nonnegative labels")
    k1 = int(l1.max()) + 1
    k2 = int(l2.max()) + 1
    counts = np.zeros((k1, k2), dtype=np.int64)
    np.add.at(counts, (l1.ravel(), l2.ravel()), 1)
    return counts


def _pairs(x):
    """Number of unordered pairs within each count, summed (exact integers)."""
    x = x.astype(np.int64)
    return int((x * (x - 1) // 2).sum())


def rand_index(l1, l2):
    """Fraction of unordered cell pairs whose same/different relation agrees."""
    counts = contingency(l1, l2)
    n = int(counts.sum())
    if n < 2:
        raise ValueError("rand index needs at least 2 cells")
    total = n * (n - 1) // 2
    same_both = _pairs(counts)
    same_1 = _pairs(counts.sum(axis=1))
    same_2 = _pairs(counts.sum(axis=0))
    agree = same_both + (total - same_1 - same_2 + same_both)
    return agree / total


def gce(l1, l2):
    """Global consistency error: min over directions of the mean refinement error.

    The per-cell error in one direction is |R1(x) \\ R2(x)| / |R1(x)| with
    R(x) the label class of x; 0 when either labeling refines the other.
    """
    counts = contingency(l1, l2).astype(np.float64)
    n = counts.sum()
    row = counts.sum(axis=1, keepdims=True)
    col = counts.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        e12 = np.where(row > 0, counts * (row - counts) / row, 0.0).sum()
        e21 = np.where(col > 0, counts * (col - counts) / col, 0.0).sum()
    return float(min(e12, e21) / n)


def variation_of_information(l1, l2):
    """Sum of the two conditional entropies H(S1|S2) + H(S2|S1), natural log."""
    counts = contingency(l1, l2)
    n = float(counts.sum())
    ks, ls = counts.nonzero()
    joint = counts[ks, ls] / n
    row = counts.sum(axis=1) / n
    col = counts.sum(axis=0) / n
    h1_given_2 = -float((joint * np.log(joint / col[ls])).sum())
    h2_given_1 = -float((joint * np.log(joint / row[ks])).sum())
    return h1_given_2 + h2_given_1


@dataclass(frozen=True)
class MetricReport:
    """Per-phase Dice plus the three clustering metrics against a reference labeling."""

    dice_per_phase: tuple
    rand_index: float
    gce: float
    variation_of_information: float


def full_report(labels, truth):
    """Evaluate a four-phase labeling against ground truth.

    Per-phase Dice uses the binary mask of each label value 0..3 in both maps;
    RI, GCE and VI compare the labelings as partitions.
    """
    labels = np.asarray(labels)
    truth = np.asarray(truth)
    _check_shapes(labels, truth)
    per_phase = tuple(dice(labels == k, truth == k) for k in range(4))
    return MetricReport(
        dice_per_phase=per_phase,
        rand_index=rand_index(labels, truth),
        gce=gce(labels, truth),
        variation_of_information=variation_of_information(labels, truth),
    )
