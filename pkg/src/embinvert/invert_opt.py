"""Gradient-based embedding inversion with a volume-projected logistic map.

Edge logits map through a logistic whose scalar shift is Newton-matched to
the target volume; L-BFGS then drives the squared Frobenius mismatch
between the candidate's PPMI and the given rank-k PPMI reconstruction. The
gradient is hand-accumulated in reverse through the walk-power recursion,
the degree/volume coupling, and the implicit dependence of the shift on
the logits. The search itself runs over one logit per ordered node pair
(self-loops excluded); the two halves of a pair agree at the optimum and
the returned adjacency is their symmetrized average.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .optim import minimize_lbfgs


class LogitMatrix:
    """Symmetric edge-logit parameters; the diagonal is excluded.

    Only strictly-above-diagonal entries are free; the matrix view mirrors
    them. Self-loops are never represented, matching the simple graphs the
    reconstructions target.
    """

    def __init__(self, n, upper):
        upper = np.array(upper, dtype=float).ravel()
        expected = n * (n - 1) // 2
        if upper.shape[0] != expected:
            raise ValueError(
                f"need {expected} upper-triangle entries for n={n}, "
                f"got {upper.shape[0]}"
            )
        if not np.all(np.isfinite(upper)):
            raise ValueError("logits must be finite")
        upper.setflags(write=False)
        self.n = int(n)
        self.upper = upper

    @classmethod
    def zeros(cls, n):
        return cls(n, np.zeros(n * (n - 1) // 2))

    @classmethod
    def from_matrix(cls, x):
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ValueError("logit matrix must be square")
        if not np.allclose(x, x.T, atol=1e-8):
            raise ValueError("logit matrix must be symmetric")
        n = x.shape[0]
        iu, ju = np.triu_indices(n, k=1)
        return cls(n, x[iu, ju])

    def matrix(self):
        iu, ju = np.triu_indices(self.n, k=1)
        x = np.zeros((self.n, self.n))
        x[iu, ju] = self.upper
        return x + x.T

    def __repr__(self):
        return f"LogitMatrix(n={self.n})"


def _volume_shift(logits, v, iters):
    """sigma(logits + s) with the scalar s Newton-matched so the sum is v."""
    s = 0.0
    for _ in range(iters):
        a = expit(logits + s)
        den = (a * (1.0 - a)).sum()
        if not np.isfinite(den) or den <= 0.0:
            raise ValueError(
                "volume shift update degenerate: every logit is saturated"
            )
        s += (v - a.sum()) / den
    a = expit(logits + s)
    if not (a * (1.0 - a)).sum() > 0.0:
        raise ValueError("volume shift left every entry saturated")
    return a, s


def _volume_matched_upper(upper, v, iters):
    """Upper-triangle probabilities whose mirrored total matches v.

    Both mirror copies of every entry count toward the volume, so the
    upper half alone is matched to v/2.
    """
    return _volume_shift(upper, v / 2.0, iters)


def shifted_logistic(x, v, iters=10, return_shift=False):
    """Entrywise logistic of x + s, with s matching the off-diagonal sum to v.

    Newton's method on the scalar shift; ten iterations cover the bounded
    logits this pipeline produces. v may equal the full off-diagonal
    capacity n(n-1), where the output saturates toward all ones.
    """
    lm = x if isinstance(x, LogitMatrix) else LogitMatrix.from_matrix(x)
    if iters < 1:
        raise ValueError("need at least one shift iteration")
    cap = lm.n * (lm.n - 1)
    v = float(v)
    if not 0.0 < v <= cap:
        raise ValueError(f"target volume must lie in (0, {cap}], got {v}")
    a_up, s = _volume_matched_upper(lm.upper, v, iters)
    iu, ju = np.triu_indices(lm.n, k=1)
    out = np.zeros((lm.n, lm.n))
    out[iu, ju] = a_up
    out = out + out.T
    if return_shift:
        return out, s
    return out


def ppmi_loss(adj, m_tk, T):
    """Squared Frobenius distance between the PPMI of adj and a target.

    Builds degrees and volume from adj itself, so the returned gradient
    covers every entry's full influence: through the walk powers, through
    the degree normalizations, and through the volume prefactor. The
    clamp's subgradient at and below the kink is 0.

    Returns
    -------
    (float, ndarray)
        Loss and the n x n gradient with respect to adj.
    """
    a = np.asarray(adj, dtype=float)
    target = np.asarray(m_tk, dtype=float)
    if a.shape != target.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adj and m_tk must be square matrices of equal size")
    if not isinstance(T, (int, np.integer)) or T < 1:
        raise ValueError(f"window size must be a positive integer, got {T!r}")
    T = int(T)
    n = a.shape[0]
    d = a.sum(axis=1)
    if np.any(d <= 0.0):
        bad = int(np.argmax(d <= 0.0))
        raise ValueError(f"row {bad} has nonpositive sum; degrees must stay positive")
    v = float(d.sum())
    b = 1.0 / d
    bmat = np.diag(b)
    p = b[:, None] * a

    # forward Horner chain: h[t] = B + P h[t-1], h[1] = B, so P h[T] is
    # sum_{r=1..T} P^r B
    hs = [None, bmat]
    for _ in range(T - 1):
        hs.append(bmat + p @ hs[-1])
    s_mat = p @ hs[T]
    c = (v / T) * s_mat
    active = c > 1.0
    safe_c = np.where(active, c, 1.0)
    m = np.where(active, np.log(safe_c), 0.0)
    r = m - target
    loss = float((r * r).sum())

    # reverse pass
    g_m = 2.0 * r
    g_c = np.where(active, g_m / safe_c, 0.0)
    g_v = float((g_c * s_mat).sum()) / T
    g_s = (v / T) * g_c
    g_p = g_s @ hs[T].T
    g_h = p.T @ g_s
    g_bdiag = np.zeros(n)
    for t in range(T, 1, -1):
        g_bdiag += g_h.diagonal()
        g_p += g_h @ hs[t - 1].T
        g_h = p.T @ g_h
    g_bdiag += g_h.diagonal()
    g_b = g_bdiag + (g_p * a).sum(axis=1)
    g_d = -g_b * b * b + g_v
    grad = b[:, None] * g_p + g_d[:, None]
    return loss, grad


@dataclass
class OptimizationReport:
    """Outcome of one optimization-route inversion run."""

    adj_weighted: np.ndarray  # entries in (0, 1), off-diagonal sum = v_G
    loss_trace: list
    grad_norm_trace: list
    iterations_used: int
    converged: bool
    final_gradient_norm: float


def _pair_objective(target, T, v_g):
    """Loss and gradient over one logit per ordered off-diagonal pair.

    Untying the two logits of each pair costs nothing at the optimum,
    where both halves agree, but gives the search freedom the mirrored
    parametrization lacks: tied logits reliably stall on the plateaus the
    PPMI clamp creates, while the untied search walks around them. The
    scalar volume shift spans all off-diagonal entries; its gradient
    enters by implicit differentiation of the volume constraint.
    """
    n = target.shape[0]
    off = ~np.eye(n, dtype=bool)

    def objective(u):
        try:
            a_vec, _ = _volume_shift(u, v_g, 10)
            a = np.zeros((n, n))
            a[off] = a_vec
            loss, g_a = ppmi_loss(a, target, T)
        except ValueError:
            # saturated logits or an underflowed degree during the line
            # search: report an infinitely bad point so the search backs off
            return np.inf, np.zeros_like(u)
        g_vec = g_a[off]
        w = a_vec * (1.0 - a_vec)
        tot = float((g_vec * w).sum())
        grad_u = w * (g_vec - tot / float(w.sum()))
        return loss, grad_u

    return objective


def _pair_adjacency(u, n, v_g):
    """Symmetrized adjacency for a vector of ordered-pair logits."""
    a_vec, _ = _volume_shift(u, v_g, 10)
    a = np.zeros((n, n))
    a[~np.eye(n, dtype=bool)] = a_vec
    return (a + a.T) / 2.0


def deepwalk_backwards_opt(m_tk, T, v_g, max_iters=500):
    """Recover a weighted adjacency from a rank-k PPMI by optimization.

    Logits start at zero, one per ordered node pair; every evaluation
    projects them to the target volume (ten Newton shift iterations),
    scores the PPMI mismatch, and chains the exact gradient back through
    the shift by implicit differentiation. L-BFGS with history 10 and a
    strong Wolfe search drives the logits until the gradient inf-norm
    reaches 1e-8 or the iteration budget runs out. A failed line search
    returns the best iterate with converged=False. The returned matrix is
    the symmetrized pair average, zero on the diagonal, with off-diagonal
    sum matched to v_g.
    """
    target = np.asarray(m_tk, dtype=float)
    if target.ndim != 2 or target.shape[0] != target.shape[1]:
        raise ValueError("m_tk must be square")
    if not np.allclose(target, target.T, atol=1e-8):
        raise ValueError("m_tk must be symmetric")
    n = target.shape[0]
    cap = n * (n - 1)
    v_g = float(v_g)
    if not 0.0 < v_g <= cap:
        raise ValueError(f"volume must lie in (0, {cap}], got {v_g}")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")

    res = minimize_lbfgs(
        _pair_objective(target, T, v_g),
        np.zeros(n * (n - 1)),
        max_iters=max_iters,
        memory=10,
        c1=1e-4,
        c2=0.9,
        grad_tol=1e-8,
    )
    adj = _pair_adjacency(res.x, n, v_g)
    return OptimizationReport(
        adj_weighted=adj,
        loss_trace=res.loss_trace,
        grad_norm_trace=res.grad_norm_trace,
        iterations_used=res.iterations,
        converged=res.converged,
        final_gradient_norm=res.grad_norm,
    )


def loss_trace_to_csv(report):
    """Loss trace as CSV text with columns iteration,loss,grad_norm."""
    lines = ["iteration,loss,grad_norm"]
    for i, (loss, gn) in enumerate(zip(report.loss_trace, report.grad_norm_trace)):
        lines.append(f"{i},{float(loss)!r},{float(gn)!r}")
    return "\n".join(lines) + "\n"
