"""Dense 2-D field primitives: discrete gradient, divergence, and total variation.

Scalar fields are float arrays of shape ``(height, width)``. Vector fields
stack the column (x) and row (y) components into shape ``(2, height, width)``.
The gradient uses forward differences with a replicate (Neumann) boundary, so
the difference in the last column/row is zero; the divergence uses the matching
backward stencil chosen so that

    <gradient(f), p> == -<f, divergence(p)>

holds exactly in the discrete inner product. The dual fixed-point iteration
relies on this adjointness.
"""

import numpy as np

__all__ = ["gradient", "divergence", "magnitude", "total_variation"]


def gradient(f):
    """Forward-difference gradient of a scalar field.

    Returns an array of shape (2, H, W): component 0 holds the column (x)
    differences f[i, j+1] - f[i, j], component 1 the row (y) differences.
    The final column / row of each component is zero.
    """
    f = np.asarray(f, dtype=np.float64)
    g = np.zeros((2,) + f.shape)
    g[0, :, :-1] = f[:, 1:] - f[:, :-1]
    g[1, :-1, :] = f[1:, :] - f[:-1, :]
    return g


def divergence(p):
    """Discrete divergence of a vector field, the negative adjoint of gradient."""
    p = np.asarray(p, dtype=np.float64)
    px, py = p[0], p[1]
    h, w = px.shape
    out = np.zeros((h, w))
    if w > 1:
        out[:, 0] += px[:, 0]
        out[:, 1:-1] += px[:, 1:-1] - px[:, :-2]
        out[:, -1] -= px[:, -2]
    if h > 1:
        out[0, :] += py[0, :]
        out[1:-1, :] += py[1:-1, :] - py[:-2, :]
        out[-1, :] -= py[-2, :]
    return out


def magnitude(p):
    """Pointwise Euclidean norm of a vector field, shape (H, W)."""
    return np.hypot(p[0], p[1])


def total_variation(f):
    """Isotropic discrete total variation: the sum of gradient magnitudes.

    For a binary indicator this equals the discrete perimeter of its support
    under the forward-difference stencil.
    """
    return float(magnitude(gradient(f)).sum())
