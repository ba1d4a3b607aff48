"""Shared fixtures-in-spirit: tiny graph builders and independent oracles.

Everything here is deliberately naive (triple loops, bisection, central
differences) so the tests check the library against re-derivations rather
than against itself.
"""

import numpy as np
from scipy.special import expit

from embinvert import Graph, is_bipartite, is_connected
from embinvert.netmf import pinv_symmetric


def k3():
    return Graph(np.ones((3, 3)) - np.eye(3))


def complete_graph(n):
    return Graph(np.ones((n, n)) - np.eye(n))


def path_graph(n):
    adj = np.zeros((n, n))
    for i in range(n - 1):
        adj[i, i + 1] = adj[i + 1, i] = 1.0
    return Graph(adj)


def cycle_graph(n):
    adj = np.zeros((n, n))
    for i in range(n):
        j = (i + 1) % n
        adj[i, j] = adj[j, i] = 1.0
    return Graph(adj)


def star_graph(leaves):
    n = leaves + 1
    adj = np.zeros((n, n))
    adj[0, 1:] = 1.0
    adj[1:, 0] = 1.0
    return Graph(adj)


def random_graph(rng, n, p):
    """One G(n, p) draw as a Graph (possibly disconnected)."""
    iu, ju = np.triu_indices(n, k=1)
    hit = rng.random(iu.size) < p
    adj = np.zeros((n, n))
    adj[iu, ju] = hit.astype(float)
    return Graph(adj + adj.T)


def random_connected_graph(
    rng, n, p=0.3, require_nonbipartite=False, require_fullrank=False
):
    """Rejection-sample G(n, p) until the requested structure shows up."""
    for _ in range(1000):
        g = random_graph(rng, n, p)
        if not is_connected(g):
            continue
        if require_nonbipartite and is_bipartite(g):
            continue
        if require_fullrank:
            sv = np.linalg.svd(g.adj, compute_uv=False)
            if sv.min() < 1e-8:
                continue
        return g
    raise RuntimeError(f"no admissible graph found for n={n}, p={p}")


def floyd_warshall_oracle(adj):
    """All-pairs shortest path lengths by the O(n^3) recurrence."""
    n = adj.shape[0]
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for i in range(n):
        for j in range(n):
            if i != j and adj[i, j] > 0:
                dist[i, j] = 1.0
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = dist[i, k] + dist[k, j]
                if via < dist[i, j]:
                    dist[i, j] = via
    return dist


def triangle_oracle(adj):
    """Triangles by explicit triple enumeration."""
    n = adj.shape[0]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if adj[i, j] == 0:
                continue
            for k in range(j + 1, n):
                if adj[i, k] > 0 and adj[j, k] > 0:
                    count += 1
    return count


def bisect_shift(logits, v, lo=-60.0, hi=60.0, tol=1e-12):
    """Shift s with sum(expit(logits + s)) = v, found by plain bisection."""
    logits = np.asarray(logits, dtype=float).ravel()

    def total(s):
        return float(expit(logits + s).sum())

    if not total(lo) < v < total(hi):
        raise ValueError("volume target outside the bisection bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if total(mid) < v:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def limiting_from_definition(g):
    """Assemble v D^-1/2 (Lbar^+ - I) D^-1/2 + J without connectivity gates.

    Lets tests build the limiting matrix for graphs the library refuses
    (bipartite stars) so the error paths downstream can be exercised.
    """
    dis = 1.0 / np.sqrt(g.degrees)
    nlap = np.eye(g.n) - dis[:, None] * g.adj * dis[None, :]
    lp = pinv_symmetric((nlap + nlap.T) / 2.0)
    return g.volume * (dis[:, None] * (lp - np.eye(g.n)) * dis[None, :]) + 1.0


def walk_clamp_argument(a, T):
    """Naive re-derivation of the quantity the PPMI clamp compares to 1."""
    d = a.sum(axis=1)
    v = d.sum()
    p = a / d[:, None]
    acc = np.zeros_like(a)
    power = np.eye(a.shape[0])
    for _ in range(T):
        power = power @ p
        acc += power
    return (v / T) * (acc / d[None, :])


def fd_gradient(fun, x, h=1e-5):
    """Central-difference gradient of a scalar function of a flat vector."""
    x = np.asarray(x, dtype=float).ravel()
    out = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (fun(x + e) - fun(x - e)) / (2.0 * h)
    return out
