"""Comparison measures between a true graph and a reconstruction.

Adjacency-level relative Frobenius error, triangle counts, average path
length, per-community conductance, and the signed relative error that ties
the scalar measures together in reports.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .graph_core import is_connected


def rel_frobenius(x, x_tilde):
    """||x - x_tilde||_F / ||x||_F."""
    a = np.asarray(x, dtype=float)
    b = np.asarray(x_tilde, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    ref = np.linalg.norm(a)
    if ref == 0.0:
        raise ValueError("reference matrix has zero norm")
    return float(np.linalg.norm(a - b) / ref)


def triangle_count(g):
    """Number of 3-cliques, trace(A^3) / 6, as an exact integer."""
    if not g.is_binary():
        raise ValueError("triangle count needs a binary graph")
    a = g.adj
    t = np.trace(a @ a @ a) / 6.0
    return int(round(t))


def average_path_length(g):
    """Mean shortest-path distance over unordered node pairs (BFS per node)."""
    if not g.is_binary():
        raise ValueError("average path length needs a binary graph")
    if g.n < 2:
        raise ValueError("need at least two nodes")
    if not is_connected(g):
        raise ValueError("graph must be connected for the average path length")
    dist = csgraph.shortest_path(
        sparse.csr_matrix(g.adj), method="D", unweighted=True, directed=False
    )
    iu, ju = np.triu_indices(g.n, k=1)
    return float(dist[iu, ju].mean())


def conductance(g, s):
    """Edges leaving node set s over the smaller side's degree volume."""
    mask = np.zeros(g.n, dtype=bool)
    idx = np.asarray(list(s), dtype=int)
    if idx.size == 0:
        raise ValueError("community must be nonempty")
    if np.any(idx < 0) or np.any(idx >= g.n):
        raise ValueError("community contains out-of-range node indices")
    mask[idx] = True
    if mask.all():
        raise ValueError("community must not contain every node")
    degrees = g.degrees
    vol_s = float(degrees[mask].sum())
    vol_rest = float(degrees[~mask].sum())
    denom = min(vol_s, vol_rest)
    if denom == 0.0:
        raise ValueError("smaller side has zero volume; conductance undefined")
    cut = float(g.adj[mask][:, ~mask].sum())
    return cut / denom


def relative_error(x, x_tilde):
    """Signed relative error (x_tilde - x) / x."""
    x = float(x)
    if x == 0.0:
        raise ValueError("relative error undefined for a zero reference value")
    return (float(x_tilde) - x) / x


@dataclass
class ConductanceRow:
    label: object
    size: int
    phi_true: float = None
    phi_recon: float = None
    rel_err: float = None


@dataclass
class MetricsReport:
    """Paired true/reconstructed measures; a failed measure stays None."""

    method: str = ""
    rank: int = None
    rel_frob_adj: float = None
    triangles_true: int = None
    triangles_recon: int = None
    triangles_rel_err: float = None
    apl_true: float = None
    apl_recon: float = None
    apl_rel_err: float = None
    conductances: list = field(default_factory=list)

    def conductance_mean_abs_rel_err(self):
        errs = [abs(c.rel_err) for c in self.conductances if c.rel_err is not None]
        if not errs:
            return None
        return float(np.mean(errs))

    def to_json(self):
        doc = {
            "method": self.method,
            "rank": self.rank,
            "rel_frob_adj": self.rel_frob_adj,
            "triangles_true": self.triangles_true,
            "triangles_recon": self.triangles_recon,
            "triangles_rel_err": self.triangles_rel_err,
            "apl_true": self.apl_true,
            "apl_recon": self.apl_recon,
            "apl_rel_err": self.apl_rel_err,
            "conductances": [
                {
                    "label": str(c.label),
                    "size": c.size,
                    "phi_true": c.phi_true,
                    "phi_recon": c.phi_recon,
                    "rel_err": c.rel_err,
                }
                for c in self.conductances
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        rows = [
            ConductanceRow(
                label=c["label"],
                size=c["size"],
                phi_true=c["phi_true"],
                phi_recon=c["phi_recon"],
                rel_err=c["rel_err"],
            )
            for c in doc.get("conductances", [])
        ]
        return cls(
            method=doc.get("method", ""),
            rank=doc.get("rank"),
            rel_frob_adj=doc.get("rel_frob_adj"),
            triangles_true=doc.get("triangles_true"),
            triangles_recon=doc.get("triangles_recon"),
            triangles_rel_err=doc.get("triangles_rel_err"),
            apl_true=doc.get("apl_true"),
            apl_recon=doc.get("apl_recon"),
            apl_rel_err=doc.get("apl_rel_err"),
            conductances=rows,
        )

    CSV_FIELDS = (
        "method",
        "rank",
        "rel_frob_adj",
        "triangles_true",
        "triangles_recon",
        "triangles_rel_err",
        "apl_true",
        "apl_recon",
        "apl_rel_err",
        "conductance_mean_abs_rel_err",
    )

    @classmethod
    def csv_header(cls):
        return ",".join(cls.CSV_FIELDS)

    def to_csv_row(self):
        vals = [
            self.method,
            self.rank,
            self.rel_frob_adj,
            self.triangles_true,
            self.triangles_recon,
            self.triangles_rel_err,
            self.apl_true,
            self.apl_recon,
            self.apl_rel_err,
            self.conductance_mean_abs_rel_err(),
        ]
        out = []
        for v in vals:
            if v is None:
                out.append("")
            elif isinstance(v, float):
                out.append(repr(v))
            else:
                out.append(str(v))
        return ",".join(out)


def compare(g, g_recon, labels=None, top_c=5, rank=None, method=""):
    """Assemble a MetricsReport for a reconstruction of g.

    Both graphs must have the same node count and the reconstruction must
    be binary. Individual measures that fail on one side (a disconnected
    reconstruction, a zero reference) are recorded as absent rather than
    aborting the report. Conductance covers the top_c most populous
    communities.
    """
    if g.n != g_recon.n:
        raise ValueError(f"node count mismatch: {g.n} vs {g_recon.n}")
    if not g_recon.is_binary():
        raise ValueError("reconstruction must be binary for metric comparison")
    report = MetricsReport(method=method, rank=rank)
    try:
        report.rel_frob_adj = rel_frobenius(g.adj, g_recon.adj)
    except ValueError:
        pass
    try:
        report.triangles_true = triangle_count(g)
    except ValueError:
        pass
    try:
        report.triangles_recon = triangle_count(g_recon)
    except ValueError:
        pass
    if report.triangles_true is not None and report.triangles_recon is not None:
        try:
            report.triangles_rel_err = relative_error(
                report.triangles_true, report.triangles_recon
            )
        except ValueError:
            pass
    try:
        report.apl_true = average_path_length(g)
    except ValueError:
        pass
    try:
        report.apl_recon = average_path_length(g_recon)
    except ValueError:
        pass
    if report.apl_true is not None and report.apl_recon is not None:
        try:
            report.apl_rel_err = relative_error(report.apl_true, report.apl_recon)
        except ValueError:
            pass
    if labels is not None:
        comms = labels.communities()
        ranked = sorted(comms.items(), key=lambda kv: (-len(kv[1]), str(kv[0])))
        for lab, members in ranked[:top_c]:
            row = ConductanceRow(label=lab, size=len(members))
            try:
                row.phi_true = conductance(g, members)
            except ValueError:
                pass
            try:
                row.phi_recon = conductance(g_recon, members)
            except ValueError:
                pass
            if row.phi_true is not None and row.phi_recon is not None:
                try:
                    row.rel_err = relative_error(row.phi_true, row.phi_recon)
                except ValueError:
                    pass
            report.conductances.append(row)
    return report
