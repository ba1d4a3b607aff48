"""Forward NetMF pipeline: random-walk PMI matrices and spectral embeddings.

The T-window co-occurrence statistics of a degree-normalized random walk,
their positive/plain/limiting log transforms, the magnitude-ordered
truncated eigendecomposition, and the node embedding it induces.
"""

import numpy as np

from .graph_core import is_bipartite, is_connected


class PpmiMatrix:
    """Dense symmetric nonnegative PPMI matrix with its window size."""

    def __init__(self, m, window_size):
        m = np.array(m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("PPMI matrix must be square")
        if not np.array_equal(m, m.T):
            raise ValueError("PPMI matrix must be symmetric")
        if np.any(m < 0.0):
            raise ValueError("PPMI entries must be nonnegative")
        m.setflags(write=False)
        self.m = m
        self.window_size = int(window_size)

    @property
    def n(self):
        return self.m.shape[0]

    def __repr__(self):
        return f"PpmiMatrix(n={self.n}, T={self.window_size})"


class LowRankPpmi:
    """Truncated eigen-factorization V diag(W) V^T of a PPMI matrix.

    Eigenpairs are ordered by descending |eigenvalue|; columns of V are
    orthonormal. The sign pattern of W is what the embedding carries as a
    sidecar.
    """

    def __init__(self, eigvecs, eigvals, window_size):
        v = np.array(eigvecs, dtype=float)
        w = np.array(eigvals, dtype=float)
        if v.ndim != 2 or w.ndim != 1 or v.shape[1] != w.shape[0]:
            raise ValueError("eigvecs must be n x k and eigvals length k")
        gram = v.T @ v
        if not np.allclose(gram, np.eye(w.shape[0]), atol=1e-8):
            raise ValueError("eigenvector columns must be orthonormal")
        mags = np.abs(w)
        if np.any(np.diff(mags) > 1e-12):
            raise ValueError("eigenvalues must be ordered by descending magnitude")
        v.setflags(write=False)
        w.setflags(write=False)
        self.eigvecs = v
        self.eigvals = w
        self.window_size = int(window_size)

    @property
    def rank(self):
        return self.eigvals.shape[0]

    @property
    def n(self):
        return self.eigvecs.shape[0]

    def reconstruct(self):
        """V diag(W) V^T, symmetrized against matmul rounding drift."""
        m = (self.eigvecs * self.eigvals) @ self.eigvecs.T
        return (m + m.T) / 2.0

    def __repr__(self):
        return f"LowRankPpmi(n={self.n}, rank={self.rank}, T={self.window_size})"


class Embedding:
    """Node embedding E = V sqrt(|W|) with the eigenvalue sign vector."""

    def __init__(self, vectors, signs):
        vec = np.array(vectors, dtype=float)
        sg = np.array(signs, dtype=float)
        if vec.ndim != 2 or sg.ndim != 1 or vec.shape[1] != sg.shape[0]:
            raise ValueError("vectors must be n x k and signs length k")
        if not np.all(np.isin(sg, (-1.0, 0.0, 1.0))):
            raise ValueError("signs must be -1, 0, or +1")
        vec.setflags(write=False)
        sg.setflags(write=False)
        self.vectors = vec
        self.signs = sg

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def rank(self):
        return self.vectors.shape[1]

    def reconstruct(self):
        """E diag(signs) E^T, the rank-k PPMI this embedding encodes."""
        m = (self.vectors * self.signs) @ self.vectors.T
        return (m + m.T) / 2.0

    def __repr__(self):
        return f"Embedding(n={self.n}, rank={self.rank})"


def _walk_sum_symmetric(adj, degrees, T):
    """sum_{r=1..T} (D^-1 A)^r D^-1 in the conjugated symmetric form.

    Evaluates D^-1/2 (sum_r (D^-1/2 A D^-1/2)^r) D^-1/2 so the result is
    symmetric up to a final drift-killing symmetrization.
    """
    dis = 1.0 / np.sqrt(degrees)
    p_sym = dis[:, None] * adj * dis[None, :]
    term = p_sym.copy()
    acc = p_sym.copy()
    for _ in range(T - 1):
        term = p_sym @ term
        acc += term
    out = dis[:, None] * acc * dis[None, :]
    # rescaling is the last rounding step, so symmetrize after it
    return (out + out.T) / 2.0


def _check_window(T):
    if not isinstance(T, (int, np.integer)):
        raise ValueError(f"window size must be an integer, got {T!r}")
    if T < 1:
        raise ValueError(f"window size must be >= 1, got {T}")
    return int(T)


def ppmi(g, T):
    """T-window PPMI matrix of a graph.

    Entrywise log(max(1, (v_G / T) * sum_{r=1}^T (D^-1 A)^r D^-1)). The
    clamp keeps node pairs with too little co-occurrence mass (for example
    pairs farther apart than T) at exactly zero.
    """
    T = _check_window(T)
    degrees = g.degrees
    if np.any(degrees <= 0.0):
        bad = int(np.argmax(degrees <= 0.0))
        raise ValueError(f"node {bad} is isolated; every degree must be positive")
    s = _walk_sum_symmetric(g.adj, degrees, T)
    arg = (g.volume / T) * s
    return PpmiMatrix(np.log(np.maximum(arg, 1.0)), T)


def pmi(g, T):
    """Unclamped T-window PMI matrix; defined only when every entry is positive."""
    T = _check_window(T)
    degrees = g.degrees
    if np.any(degrees <= 0.0):
        bad = int(np.argmax(degrees <= 0.0))
        raise ValueError(f"node {bad} is isolated; every degree must be positive")
    s = _walk_sum_symmetric(g.adj, degrees, T)
    arg = (g.volume / T) * s
    if np.any(arg <= 0.0):
        i, j = np.argwhere(arg <= 0.0)[0]
        raise ValueError(
            f"pair ({i}, {j}) has no walk of length <= {T}: "
            "diameter exceeds T, PMI is undefined"
        )
    return np.log(arg)


def pinv_symmetric(m, rel_tol=1e-10):
    """Moore-Penrose pseudoinverse of a symmetric matrix via eigh.

    Eigenvalues below rel_tol times the largest magnitude are treated as
    exact zeros, which keeps the cutoff scale-free.
    """
    m = np.asarray(m, dtype=float)
    lam, vec = np.linalg.eigh(m)
    cutoff = rel_tol * np.abs(lam).max(initial=0.0)
    inv = np.divide(
        1.0, lam, out=np.zeros_like(lam), where=np.abs(lam) > cutoff
    )
    out = (vec * inv) @ vec.T
    return (out + out.T) / 2.0


def limiting_pmi(g):
    """Closed-form limit of T times the PMI matrix as the window grows.

    v_G D^-1/2 (Lbar^+ - I) D^-1/2 + J, with Lbar the normalized Laplacian
    I - D^-1/2 A D^-1/2. Requires a connected non-bipartite graph so the
    walk mixes and the limit exists.
    """
    if g.n < 1:
        raise ValueError("graph is empty")
    degrees = g.degrees
    if np.any(degrees <= 0.0):
        raise ValueError("every degree must be positive")
    if not is_connected(g):
        raise ValueError("graph must be connected for the limiting PMI")
    if is_bipartite(g):
        raise ValueError("graph must not be bipartite for the limiting PMI")
    dis = 1.0 / np.sqrt(degrees)
    nlap = np.eye(g.n) - dis[:, None] * g.adj * dis[None, :]
    nlap = (nlap + nlap.T) / 2.0
    lbar_pinv = pinv_symmetric(nlap)
    core = dis[:, None] * (lbar_pinv - np.eye(g.n)) * dis[None, :]
    return g.volume * (core + core.T) / 2.0 + 1.0


def low_rank_approx(p, k):
    """Best rank-k approximation of a PPMI matrix, by eigenvalue magnitude.

    Retains the k eigenpairs of largest |eigenvalue|; on magnitude ties the
    positive eigenvalue comes first so results are reproducible.
    """
    n = p.n
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
        raise ValueError(f"rank must be an integer in [1, {n}], got {k!r}")
    lam, vec = np.linalg.eigh(p.m)
    order = np.lexsort((-lam, -np.abs(lam)))
    keep = order[:k]
    return LowRankPpmi(vec[:, keep], lam[keep], p.window_size)


def embedding_from_lowrank(lr):
    """E = V sqrt(|W|) plus the sign vector of W."""
    vectors = lr.eigvecs * np.sqrt(np.abs(lr.eigvals))
    return Embedding(vectors, np.sign(lr.eigvals))


def write_embedding(emb, vectors_path, signs_path):
    """Write an embedding as CSV (header dim_0..dim_{k-1}) plus a one-line
    sign sidecar. Full float precision, so reads round-trip exactly."""
    k = emb.rank
    lines = [",".join(f"dim_{j}" for j in range(k))]
    for row in emb.vectors:
        lines.append(",".join(repr(float(x)) for x in row))
    with open(vectors_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(signs_path, "w") as fh:
        fh.write(",".join(str(int(s)) for s in emb.signs) + "\n")


def read_embedding(vectors_path, signs_path):
    """Inverse of write_embedding."""
    with open(vectors_path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{vectors_path}: empty embedding file")
    header = lines[0].split(",")
    k = len(header)
    if header != [f"dim_{j}" for j in range(k)]:
        raise ValueError(f"{vectors_path}: unexpected header {lines[0]!r}")
    vectors = np.array(
        [[float(x) for x in ln.split(",")] for ln in lines[1:]], dtype=float
    )
    if vectors.ndim != 2 or vectors.shape[1] != k:
        raise ValueError(f"{vectors_path}: ragged embedding rows")
    with open(signs_path) as fh:
        signs = np.array([float(x) for x in fh.read().strip().split(",")])
    return Embedding(vectors, signs)
