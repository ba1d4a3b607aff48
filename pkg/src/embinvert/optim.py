"""Limited-memory BFGS with a strong Wolfe line search.

Self-contained flat-vector driver so the inversion code pins every
hyperparameter (history size, Wolfe constants, stopping rule) explicitly
instead of inheriting whatever a library default happens to be.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class LbfgsResult:
    x: np.ndarray
    loss: float
    grad_norm: float  # inf-norm at the returned iterate
    loss_trace: list  # loss at x0 followed by each accepted iterate
    grad_norm_trace: list
    iterations: int
    converged: bool


def _cubic_min(a, fa, ga, b, fb, gb):
    """Minimizer of the cubic Hermite interpolant on the segment [a, b].

    Falls back to bisection when the discriminant goes negative or the
    candidate escapes the bracket.
    """
    if a == b:
        return a
    if not (np.isfinite(fa) and np.isfinite(fb)):
        return 0.5 * (a + b)
    d1 = ga + gb - 3.0 * (fa - fb) / (a - b)
    disc = d1 * d1 - ga * gb
    if disc < 0.0:
        return 0.5 * (a + b)
    sq = np.sqrt(disc)
    if b < a:
        sq = -sq
    denom = gb - ga + 2.0 * sq
    if denom == 0.0:
        return 0.5 * (a + b)
    t = b - (b - a) * (gb + sq - d1) / denom
    lo, hi = min(a, b), max(a, b)
    if not np.isfinite(t) or t <= lo or t >= hi:
        return 0.5 * (a + b)
    return t


def _strong_wolfe(fun, x, d, f0, gd0, t, c1, c2, max_evals=30):
    """Line search for f(x + t d) satisfying the strong Wolfe conditions.

    Returns (status, t, f_t, g_t, evals). status is "wolfe" when both
    conditions hold, "decrease" when only sufficient decrease could be
    secured before the evaluation budget ran out, and "fail" when no step
    with sufficient decrease exists at machine scale.
    """

    def phi(step):
        f_s, g_s = fun(x + step * d)
        f_s = float(f_s)
        if not np.isfinite(f_s):
            # treat blow-ups as infinitely bad so the search backs off
            return np.inf, g_s, 0.0
        return f_s, g_s, float(g_s.dot(d))

    evals = 0
    t_prev, f_prev, gd_prev = 0.0, f0, gd0
    g_prev = None
    bracket = None
    for ls_iter in range(max_evals):
        f_t, g_t, gd_t = phi(t)
        evals += 1
        if f_t > f0 + c1 * t * gd0 or (ls_iter > 0 and f_t >= f_prev):
            # sufficient decrease broke down past t_prev: bracket [prev, t]
            bracket = (t_prev, f_prev, gd_prev, t, f_t, gd_t)
            break
        if abs(gd_t) <= -c2 * gd0:
            return "wolfe", t, f_t, g_t, evals
        if gd_t >= 0.0:
            # slope turned positive: minimum is between t and t_prev
            bracket = (t, f_t, gd_t, t_prev, f_prev, gd_prev)
            g_prev = g_t
            break
        t_prev, f_prev, gd_prev = t, f_t, gd_t
        g_prev = g_t
        t = min(2.0 * t, 1e10)
    else:
        # slope stayed negative and Armijo held at every probe
        return "decrease", t_prev, f_prev, g_prev, evals

    t_lo, f_lo, gd_lo, t_hi, f_hi, gd_hi = bracket
    g_lo = g_prev  # gradient at t_lo when it was evaluated (None at t=0)
    while evals < max_evals:
        span = abs(t_hi - t_lo)
        if span < 1e-14 * max(1.0, abs(t_lo)):
            break
        t_z = _cubic_min(t_lo, f_lo, gd_lo, t_hi, f_hi, gd_hi)
        t_z = min(max(t_z, min(t_lo, t_hi) + 0.1 * span), max(t_lo, t_hi) - 0.1 * span)
        f_z, g_z, gd_z = phi(t_z)
        evals += 1
        if f_z > f0 + c1 * t_z * gd0 or f_z >= f_lo:
            t_hi, f_hi, gd_hi = t_z, f_z, gd_z
        else:
            if abs(gd_z) <= -c2 * gd0:
                return "wolfe", t_z, f_z, g_z, evals
            if gd_z * (t_hi - t_lo) >= 0.0:
                t_hi, f_hi, gd_hi = t_lo, f_lo, gd_lo
            t_lo, f_lo, gd_lo, g_lo = t_z, f_z, gd_z, g_z
    if t_lo > 0.0 and g_lo is not None and f_lo <= f0 + c1 * t_lo * gd0:
        return "decrease", t_lo, f_lo, g_lo, evals
    return "fail", 0.0, f0, None, evals


def _two_loop(g, s_hist, y_hist, rho_hist):
    """Inverse-Hessian application H g from the stored curvature pairs."""
    q = g.copy()
    alphas = []
    for s, y, rho in zip(reversed(s_hist), reversed(y_hist), reversed(rho_hist)):
        a = rho * s.dot(q)
        alphas.append(a)
        q -= a * y
    if y_hist:
        q *= s_hist[-1].dot(y_hist[-1]) / y_hist[-1].dot(y_hist[-1])
    for (s, y, rho), a in zip(
        zip(s_hist, y_hist, rho_hist), reversed(alphas)
    ):
        b = rho * y.dot(q)
        q += (a - b) * s
    return q


def minimize_lbfgs(
    fun,
    x0,
    max_iters=500,
    memory=10,
    c1=1e-4,
    c2=0.9,
    grad_tol=1e-8,
):
    """Minimize fun(x) -> (loss, grad) from x0.

    Stops when the gradient inf-norm drops to grad_tol, the iteration
    budget runs out, or the line search cannot find sufficient decrease
    (converged=False, best iterate returned; never an exception). The loss
    trace holds the initial loss plus one value per accepted iterate and is
    non-increasing by construction.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if memory < 1:
        raise ValueError("memory must be >= 1")
    x = np.array(x0, dtype=float).ravel()
    f, g = fun(x)
    f = float(f)
    g = np.asarray(g, dtype=float).ravel()
    if not np.isfinite(f) or not np.all(np.isfinite(g)):
        raise ValueError("objective returned a non-finite loss or gradient at x0")
    ginf = float(np.max(np.abs(g))) if g.size else 0.0
    loss_trace = [f]
    grad_norm_trace = [ginf]
    if ginf <= grad_tol:
        return LbfgsResult(x, f, ginf, loss_trace, grad_norm_trace, 0, True)

    s_hist, y_hist, rho_hist = [], [], []
    iterations = 0
    converged = False
    for _ in range(max_iters):
        d = -_two_loop(g, s_hist, y_hist, rho_hist)
        gd = float(g.dot(d))
        if gd >= 0.0:  # stale curvature turned the direction uphill
            s_hist.clear()
            y_hist.clear()
            rho_hist.clear()
            d = -g
            gd = -float(g.dot(g))
        t0 = 1.0
        if not s_hist:
            t0 = min(1.0, 1.0 / float(np.abs(g).sum()))
        status, t, f_new, g_new, _ = _strong_wolfe(fun, x, d, f, gd, t0, c1, c2)
        if status == "fail":
            break
        x_new = x + t * d
        s = x_new - x
        y = g_new - g
        sy = float(s.dot(y))
        if sy > 1e-10 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
            s_hist.append(s)
            y_hist.append(y)
            rho_hist.append(1.0 / sy)
            if len(s_hist) > memory:
                s_hist.pop(0)
                y_hist.pop(0)
                rho_hist.pop(0)
        x, f, g = x_new, float(f_new), np.asarray(g_new, dtype=float).ravel()
        ginf = float(np.max(np.abs(g)))
        iterations += 1
        loss_trace.append(f)
        grad_norm_trace.append(ginf)
        if ginf <= grad_tol:
            converged = True
            break
    return LbfgsResult(x, f, ginf, loss_trace, grad_norm_trace, iterations, converged)
