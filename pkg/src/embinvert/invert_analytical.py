"""Analytical embedding inversion through the limiting-PMI linear relations.

Undoes the log/exp link between a finite-window PPMI and the closed-form
walk limit, then solves the limiting relations for the adjacency: one
pseudoinverse to get back the normalized Laplacian, one congruence to peel
the degree scaling off. Exact when the input is the true limiting matrix
and the adjacency is full rank; an approximation otherwise.
"""

from dataclasses import dataclass

import numpy as np

from .netmf import pinv_symmetric


class DegreeRecoveryError(ValueError):
    """Degree system is rank-deficient or left a large residual.

    Carries the least-squares solution (already scaled to degrees) and the
    normalized residual so callers can inspect how close the flagged
    answer came.
    """

    def __init__(self, message, solution, residual):
        super().__init__(message)
        self.solution = solution
        self.residual = residual


def recover_degrees(m_inf, v_g):
    """Degree vector from a limiting-PMI matrix by least squares.

    Solves (m_inf - J) x = -1 and rescales by the volume: the true degree
    profile d / v_G always satisfies the system, and it is the unique
    solution exactly when the adjacency is nonsingular. Rank deficiency or
    a normalized residual above 1e-6 raises DegreeRecoveryError.
    """
    m = np.asarray(m_inf, dtype=float)
    n = m.shape[0]
    sys_mat = m - 1.0
    rhs = -np.ones(n)
    x, _, rank, _ = np.linalg.lstsq(sys_mat, rhs, rcond=None)
    residual = float(np.linalg.norm(sys_mat @ x - rhs) / np.sqrt(n))
    degrees = float(v_g) * x
    if rank < n:
        raise DegreeRecoveryError(
            f"degree system is rank-deficient (rank {rank} < {n}); "
            "the adjacency is singular and the solution is not unique",
            degrees,
            residual,
        )
    if residual > 1e-6:
        raise DegreeRecoveryError(
            f"degree system residual {residual:.3e} exceeds 1e-6; "
            "input is too far from a limiting-PMI matrix",
            degrees,
            residual,
        )
    return degrees


def invert_limiting(m_inf, degrees, v_g, clip=True):
    """Adjacency scores from a limiting-PMI matrix and known degrees.

    Rebuilds the pseudoinverse of the normalized Laplacian from m_inf,
    pseudoinverts it back, and unscales to adjacency scores. With exact
    inputs and a full-rank adjacency the scores equal A; clip=False skips
    the final [0, 1] clamp so rank-based binarization can see the raw
    ordering.
    """
    m = np.asarray(m_inf, dtype=float)
    d = np.asarray(degrees, dtype=float)
    n = m.shape[0]
    if np.any(d <= 0.0):
        raise ValueError("degrees must be positive")
    dsq = np.sqrt(d)
    outer = np.outer(dsq, dsq)
    lbar_pinv = (m - 1.0) / float(v_g) * outer + np.eye(n)
    lbar_pinv = (lbar_pinv + lbar_pinv.T) / 2.0
    lbar = pinv_symmetric(lbar_pinv)
    scores = outer * (np.eye(n) - lbar)
    scores = (scores + scores.T) / 2.0
    if clip:
        return np.clip(scores, 0.0, 1.0)
    return scores


@dataclass(frozen=True)
class AnalyticalInversionInput:
    """Everything the analytical route needs: the (approximate) rank-k PPMI
    reconstruction, its window size, and the degree/volume side data."""

    m_tk: np.ndarray
    T: int
    degrees: np.ndarray
    v_g: float

    def __post_init__(self):
        m = np.asarray(self.m_tk, dtype=float)
        d = np.asarray(self.degrees, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("m_tk must be square")
        if not np.allclose(m, m.T, atol=1e-8):
            raise ValueError("m_tk must be symmetric")
        if d.shape != (m.shape[0],):
            raise ValueError("degrees length must match m_tk size")
        if np.any(d <= 0.0):
            raise ValueError("degrees must be positive")
        if self.T < 1:
            raise ValueError("window size must be >= 1")
        total = float(d.sum())
        if abs(total - float(self.v_g)) > 1e-6 * max(1.0, abs(float(self.v_g))):
            raise ValueError(
                f"degree sum {total} does not match volume {self.v_g}"
            )
        object.__setattr__(self, "m_tk", m)
        object.__setattr__(self, "degrees", d)


def deepwalk_backwards_analytical(inp, clip=True):
    """Full analytical inversion of an approximate PPMI matrix.

    Entrywise exp undoes the log link to get an approximate limiting
    matrix, T (exp(m_tk) - J); the limiting relations then produce the
    adjacency scores, clipped to [0, 1] unless clip=False.
    """
    with np.errstate(over="ignore"):
        e = np.exp(inp.m_tk)
    if np.any(np.isinf(e)):
        i, j = np.argwhere(np.isinf(e))[0]
        raise ValueError(
            f"exp overflow at entry ({i}, {j}); input is not a log-scale PPMI"
        )
    m_inf_hat = float(inp.T) * (e - 1.0)
    return invert_limiting(m_inf_hat, inp.degrees, inp.v_g, clip=clip)
