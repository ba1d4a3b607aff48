"""Graph container, edge-list and label IO, SBM generation, binarization.

Dense numpy adjacency throughout: the graphs this code targets stay well
under ~10k nodes, where dense spectral operations are the simplest thing
that works and sparse fast paths only add surface area.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


class EdgeListError(ValueError):
    """Malformed edge-list or label text."""


class Graph:
    """Undirected simple graph with edge weights in [0, 1].

    The adjacency matrix is validated (symmetry, empty diagonal, weight
    range) and frozen at construction, so instances can be shared freely
    across threads.

    Parameters
    ----------
    adj : (n, n) array_like
        Symmetric adjacency with zero diagonal and entries in [0, 1].
        Binary graphs use {0, 1}.
    node_ids : sequence, optional
        Original node identifiers, carried through relabeling.
    """

    def __init__(self, adj, node_ids=None):
        adj = np.array(adj, dtype=float)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(adj) != 0.0):
            raise ValueError("self-loops are not allowed (nonzero diagonal)")
        if np.any(adj < 0.0) or np.any(adj > 1.0):
            raise ValueError("edge weights must lie in [0, 1]")
        adj.setflags(write=False)
        self._adj = adj
        if node_ids is not None:
            node_ids = list(node_ids)
            if len(node_ids) != adj.shape[0]:
                raise ValueError("node_ids length does not match adjacency size")
        self.node_ids = node_ids

    @property
    def n(self):
        return self._adj.shape[0]

    @property
    def adj(self):
        return self._adj

    @property
    def degrees(self):
        """Weighted degree vector (row sums), the diagonal of D."""
        return self._adj.sum(axis=1)

    @property
    def volume(self):
        """Total weight v_G = sum of all degrees = 2x edge weight."""
        return float(self._adj.sum())

    def laplacian(self):
        """Unnormalized Laplacian D - A."""
        return np.diag(self.degrees) - self._adj

    def is_binary(self):
        a = self._adj
        return bool(np.all((a == 0.0) | (a == 1.0)))

    def num_edges(self):
        return int(np.count_nonzero(np.triu(self._adj, k=1)))

    def __repr__(self):
        kind = "binary" if self.is_binary() else "weighted"
        return f"Graph(n={self.n}, edges={self.num_edges()}, {kind})"


class NodeLabels:
    """Per-node label sets for a companion graph (multi-label allowed).

    Accepts one label or an iterable of labels per node; stored as
    frozensets so instances are safe to share.
    """

    def __init__(self, labels):
        out = []
        for entry in labels:
            if isinstance(entry, (str, int, np.integer)):
                out.append(frozenset([_canon_label(entry)]))
            else:
                out.append(frozenset(_canon_label(l) for l in entry))
        self.labels = out

    @property
    def n(self):
        return len(self.labels)

    def distinct(self):
        """Sorted list of all label identifiers in use."""
        seen = set()
        for s in self.labels:
            seen.update(s)
        try:
            return sorted(seen)
        except TypeError:  # mixed int/str label ids
            return sorted(seen, key=str)

    @property
    def num_distinct(self):
        return len(self.distinct())

    def subset(self, idx):
        return NodeLabels([self.labels[int(i)] for i in idx])

    def communities(self):
        """Map label -> sorted node index list; multi-label nodes join each."""
        out = {}
        for i, s in enumerate(self.labels):
            for lab in s:
                out.setdefault(lab, []).append(i)
        return out

    def __repr__(self):
        return f"NodeLabels(n={self.n}, num_distinct={self.num_distinct})"


def _canon_label(lab):
    if isinstance(lab, np.integer):
        return int(lab)
    return lab


@dataclass(frozen=True)
class SbmConfig:
    """Stochastic block model parameters: equal contiguous clusters."""

    n: int
    num_clusters: int
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.num_clusters < 1:
            raise ValueError("n and num_clusters must be positive")
        if self.n % self.num_clusters != 0:
            raise ValueError(
                f"num_clusters={self.num_clusters} must divide n={self.n}"
            )
        if not 0.0 <= self.p_out <= self.p_in <= 1.0:
            raise ValueError("need 0 <= p_out <= p_in <= 1")


def generate_sbm(cfg):
    """Sample an SBM graph and its cluster labels.

    Node i belongs to cluster i * num_clusters // n; each unordered pair is
    one independent Bernoulli draw with probability p_in inside a cluster
    and p_out across clusters. Deterministic for a fixed config.

    Returns
    -------
    (Graph, NodeLabels)
    """
    rng = np.random.default_rng(cfg.seed)
    labels = np.arange(cfg.n) * cfg.num_clusters // cfg.n
    iu, ju = np.triu_indices(cfg.n, k=1)
    prob = np.where(labels[iu] == labels[ju], cfg.p_in, cfg.p_out)
    hit = rng.random(iu.size) < prob
    adj = np.zeros((cfg.n, cfg.n))
    adj[iu, ju] = hit.astype(float)
    adj = adj + adj.T
    return Graph(adj), NodeLabels(labels)


def is_connected(g):
    ncomp, _ = csgraph.connected_components(
        sparse.csr_matrix(g.adj > 0), directed=False
    )
    return int(ncomp) == 1


def is_bipartite(g):
    """Two-colorability check by depth-first traversal of every component."""
    n = g.n
    neighbors = [np.flatnonzero(g.adj[i] > 0) for i in range(n)]
    color = np.full(n, -1, dtype=int)
    for start in range(n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            i = stack.pop()
            for j in neighbors[i]:
                if color[j] < 0:
                    color[j] = 1 - color[i]
                    stack.append(int(j))
                elif color[j] == color[i]:
                    return False
    return True


def largest_connected_component(g, labels=None):
    """Induced subgraph on the largest component, densely relabeled.

    Ties between equal-size components go to the component containing the
    smallest original node index.

    Returns
    -------
    (Graph, NodeLabels or None, ndarray)
        The subgraph, labels filtered to surviving nodes, and the original
        indices of the kept nodes (position p held original index map[p]).
    """
    ncomp, comp = csgraph.connected_components(
        sparse.csr_matrix(g.adj > 0), directed=False
    )
    sizes = np.bincount(comp, minlength=ncomp)
    cand = np.flatnonzero(sizes == sizes.max())
    first_member = np.array([np.argmax(comp == c) for c in cand])
    best = cand[np.argmin(first_member)]
    keep = np.flatnonzero(comp == best)
    sub = g.adj[np.ix_(keep, keep)]
    if g.node_ids is not None:
        ids = [g.node_ids[int(i)] for i in keep]
    else:
        ids = [int(i) for i in keep]
    out_labels = labels.subset(keep) if labels is not None else None
    return Graph(sub, node_ids=ids), out_labels, keep


def _check_square_symmetric(a, what):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{what} must be a square matrix")
    if not np.allclose(a, a.T, atol=1e-8):
        raise ValueError(f"{what} must be symmetric")
    return a


def binarize_topk(adj_weighted, v_g):
    """Binary graph keeping the v_g / 2 largest above-diagonal entries.

    Selected entries and their mirror images become 1, everything else 0,
    so the result has exactly v_g / 2 edges. Ties break lexicographically
    on (i, j) for determinism.
    """
    a = _check_square_symmetric(adj_weighted, "adj_weighted")
    n = a.shape[0]
    v = float(v_g)
    if abs(v - round(v)) > 1e-9:
        raise ValueError(f"target volume must be an integer, got {v_g}")
    vi = int(round(v))
    if vi % 2 != 0:
        raise ValueError(f"target volume must be even, got {vi}")
    if vi < 0 or vi > n * (n - 1):
        raise ValueError(f"target volume {vi} exceeds capacity {n * (n - 1)}")
    iu, ju = np.triu_indices(n, k=1)
    vals = a[iu, ju]
    # primary key: value descending; ties: (i, j) ascending
    order = np.lexsort((ju, iu, -vals))
    pick = order[: vi // 2]
    adj = np.zeros((n, n))
    adj[iu[pick], ju[pick]] = 1.0
    adj = adj + adj.T
    return Graph(adj)


def binarize_sample(adj_weighted, seed):
    """Sample each above-diagonal entry as an independent Bernoulli edge.

    The expected edge count equals the sum of the above-diagonal entries.
    `seed` may be an integer or a numpy Generator.
    """
    a = _check_square_symmetric(adj_weighted, "adj_weighted")
    if np.any(a < 0.0) or np.any(a > 1.0):
        raise ValueError("entries must lie in [0, 1] to act as probabilities")
    n = a.shape[0]
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    hit = rng.random(iu.size) < a[iu, ju]
    adj = np.zeros((n, n))
    adj[iu, ju] = hit.astype(float)
    adj = adj + adj.T
    return Graph(adj)


def load_edge_list(text):
    """Parse an edge-list string into a Graph.

    One edge per line, "u v" or "u v w"; '#' lines are comments. Duplicate
    edges collapse to one, self-loops are dropped, and node tokens are
    densely re-indexed in first-appearance order (kept as node_ids).
    """
    ids = {}
    order = []
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(
                f"line {lineno}: expected 'u v' or 'u v w', got {raw!r}"
            )
        u, v = parts[0], parts[1]
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListError(
                    f"line {lineno}: bad weight token {parts[2]!r}"
                ) from None
            if not np.isfinite(w) or w < 0.0 or w > 1.0:
                raise EdgeListError(f"line {lineno}: weight {w} outside [0, 1]")
        else:
            w = 1.0
        for tok in (u, v):
            if tok not in ids:
                ids[tok] = len(order)
                order.append(tok)
        i, j = ids[u], ids[v]
        if i == j:
            continue  # simple graph: silently drop self-loops
        edges[(min(i, j), max(i, j))] = w
    if not order:
        raise EdgeListError("edge list is empty")
    n = len(order)
    adj = np.zeros((n, n))
    for (i, j), w in edges.items():
        adj[i, j] = w
        adj[j, i] = w
    return Graph(adj, node_ids=order)


def save_edge_list(g):
    """Serialize a Graph back to edge-list text.

    Binary graphs write "u v"; weighted graphs append the weight with full
    float precision so a reload reproduces the matrix exactly. Isolated
    nodes cannot be represented in this format and are simply absent.
    """
    ids = g.node_ids if g.node_ids is not None else list(range(g.n))
    binary = g.is_binary()
    lines = []
    iu, ju = np.triu_indices(g.n, k=1)
    for i, j in zip(iu, ju):
        w = g.adj[i, j]
        if w == 0.0:
            continue
        if binary:
            lines.append(f"{ids[i]} {ids[j]}")
        else:
            lines.append(f"{ids[i]} {ids[j]} {float(w)!r}")
    return "\n".join(lines) + "\n"


def load_labels(text, node_ids=None):
    """Parse label text ("node_id label[,label...]" per line) to NodeLabels.

    When node_ids is given, rows align with that ordering and tokens not in
    it are ignored (they may belong to nodes dropped with a smaller
    component); otherwise tokens must be integer indices.
    """
    per_token = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise EdgeListError(
                f"line {lineno}: expected 'node_id label[,label...]', got {raw!r}"
            )
        tok, rest = parts
        labs = set()
        for piece in rest.split(","):
            piece = piece.strip()
            if not piece:
                raise EdgeListError(f"line {lineno}: empty label in {raw!r}")
            try:
                labs.add(int(piece))
            except ValueError:
                labs.add(piece)
        per_token.setdefault(tok, set()).update(labs)
    if node_ids is not None:
        index = {str(nid): i for i, nid in enumerate(node_ids)}
        out = [set() for _ in node_ids]
        for tok, labs in per_token.items():
            if tok in index:
                out[index[tok]] |= labs
    else:
        try:
            keyed = {int(tok): labs for tok, labs in per_token.items()}
        except ValueError:
            raise EdgeListError(
                "label file uses non-integer node ids; pass node_ids to align them"
            ) from None
        if not keyed:
            raise EdgeListError("label file is empty")
        n = max(keyed) + 1
        if min(keyed) < 0:
            raise EdgeListError("negative node index in label file")
        out = [keyed.get(i, set()) for i in range(n)]
    return NodeLabels(out)


def save_labels(labels, node_ids=None):
    """Serialize NodeLabels to label-file text (empty-label nodes skipped)."""
    ids = node_ids if node_ids is not None else list(range(labels.n))
    lines = []
    for i, s in enumerate(labels.labels):
        if not s:
            continue
        lines.append(f"{ids[i]} " + ",".join(str(l) for l in sorted(s, key=str)))
    return "\n".join(lines) + "\n"
