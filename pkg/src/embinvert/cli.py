"""Command-line pipeline driver.

Subcommands: embed, invert, metrics, classify, sbm-gen, sweep. Progress
goes to stderr, machine-readable results go to files; exit code 0 on
success, 1 on usage errors, 2 on computation errors.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .classify import classification_experiment
from .graph_core import (
    Graph,
    SbmConfig,
    binarize_sample,
    binarize_topk,
    generate_sbm,
    largest_connected_component,
    load_edge_list,
    load_labels,
    save_edge_list,
    save_labels,
)
from .invert_analytical import (
    AnalyticalInversionInput,
    DegreeRecoveryError,
    deepwalk_backwards_analytical,
    recover_degrees,
)
from .invert_opt import deepwalk_backwards_opt, loss_trace_to_csv
from .metrics import MetricsReport, compare
from .netmf import (
    embedding_from_lowrank,
    low_rank_approx,
    ppmi,
    read_embedding,
    write_embedding,
)

DEFAULT_RANKS = [2 ** i for i in range(4, 12)]  # 16 .. 2048, capped at n later


class UsageError(Exception):
    """Bad flag/config combination detected after argument parsing."""


@dataclass
class ExperimentConfig:
    """Sweep configuration; JSON config file fields mirror these names and
    command-line flags override whatever the file says."""

    graph: str = None
    labels: str = None
    sbm: object = None  # path to an SBM JSON or an inline config dict
    T: int = 10
    ranks: list = None
    method: str = "both"
    max_iters: int = 500
    seed: int = 0
    out: str = "sweep_out"
    workers: int = None
    fractions: list = field(default_factory=list)
    repeats: int = 10
    top_c: int = 5

    @classmethod
    def from_json(cls, path):
        doc = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise UsageError(
                f"{path}: unknown config keys {sorted(unknown)}; "
                f"known keys are {sorted(known)}"
            )
        return cls(**doc)

    def apply_flags(self, args):
        for name in (
            "graph",
            "labels",
            "sbm",
            "T",
            "ranks",
            "method",
            "max_iters",
            "seed",
            "out",
            "workers",
            "fractions",
            "repeats",
            "top_c",
        ):
            val = getattr(args, name, None)
            if val is not None:
                setattr(self, name, val)

    def validate(self):
        if (self.graph is None) == (self.sbm is None):
            raise UsageError("exactly one of --graph or --sbm is required")
        if self.method not in ("analytical", "opt", "both"):
            raise UsageError(f"unknown method {self.method!r}")
        if self.T < 1:
            raise UsageError("--T must be >= 1")
        if self.max_iters < 1:
            raise UsageError("--max-iters must be >= 1")
        if self.repeats < 1:
            raise UsageError("--repeats must be >= 1")
        if self.ranks is not None and len(self.ranks) == 0:
            raise UsageError("--ranks must name at least one rank")
        if self.fractions and self.labels is None and self.sbm is None:
            raise UsageError("classification fractions need node labels")


def _int_list(text):
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text):
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _read_text(path):
    return Path(path).read_text()


def _write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _log(msg):
    print(msg, file=sys.stderr)


def _load_sbm_config(spec, seed_override=None):
    if isinstance(spec, dict):
        doc = dict(spec)
    else:
        doc = json.loads(Path(spec).read_text())
    if seed_override is not None:
        doc["seed"] = seed_override
    known = {"n", "num_clusters", "p_in", "p_out", "seed"}
    unknown = set(doc) - known
    if unknown:
        raise UsageError(f"unknown SBM config keys {sorted(unknown)}")
    try:
        return SbmConfig(**doc)
    except TypeError as exc:
        raise UsageError(f"incomplete SBM config: {exc}") from None


def _zero_diagonal(mat):
    out = mat.copy()
    np.fill_diagonal(out, 0.0)
    return out


def _analytical_reconstruction(m_tk, T, degrees, v_g):
    """Weighted scores (clipped, diagonal dropped) plus the raw score matrix
    whose ordering drives top-volume binarization."""
    inp = AnalyticalInversionInput(m_tk=m_tk, T=T, degrees=degrees, v_g=v_g)
    raw = deepwalk_backwards_analytical(inp, clip=False)
    weighted = np.clip(_zero_diagonal(raw), 0.0, 1.0)
    return weighted, raw


def _even_volume(v_g):
    vi = int(round(float(v_g)))
    if abs(vi - float(v_g)) > 1e-6:
        raise ValueError(f"volume {v_g} is not an integer; cannot binarize by count")
    if vi % 2 != 0:
        raise ValueError(f"volume {vi} is odd; cannot keep {vi}/2 edges")
    return vi


def _read_vector_csv(path):
    """Feature matrix from an embedding CSV (header dim_0..dim_{k-1})."""
    lines = [ln for ln in _read_text(path).splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty feature file")
    k = len(lines[0].split(","))
    rows = [[float(x) for x in ln.split(",")] for ln in lines[1:]]
    mat = np.array(rows, dtype=float)
    if mat.ndim != 2 or mat.shape[1] != k:
        raise ValueError(f"{path}: ragged feature rows")
    return mat


# ---------------------------------------------------------------------------
# subcommands


def cmd_embed(args):
    g = load_edge_list(_read_text(args.graph))
    g, _, _ = largest_connected_component(g)
    n = g.n
    ranks = args.ranks if args.ranks is not None else _default_ranks(n)
    if not ranks:
        raise UsageError("--ranks must name at least one rank")
    for k in ranks:
        if not 1 <= k <= n:
            raise UsageError(f"rank {k} outside [1, {n}] for this graph")
    out = Path(args.out)
    _write_text(out / "graph_used.edgelist", save_edge_list(g))
    _log(f"[embed] graph: n={n}, volume={g.volume:g}, T={args.T}")
    p = ppmi(g, args.T)
    for k in ranks:
        lr = low_rank_approx(p, k)
        emb = embedding_from_lowrank(lr)
        out.mkdir(parents=True, exist_ok=True)
        write_embedding(
            emb,
            out / f"embedding_k{k}.csv",
            out / f"embedding_k{k}_signs.csv",
        )
        _write_text(
            out / f"eigenvalues_k{k}.csv",
            ",".join(repr(float(w)) for w in lr.eigvals) + "\n",
        )
        _log(f"[embed] wrote rank-{k} embedding")
    return 0


def _default_ranks(n):
    ranks = [k for k in DEFAULT_RANKS if k <= n]
    return ranks or [n]


def cmd_invert(args):
    T = args.T
    g_true = None
    if args.graph:
        g_true = load_edge_list(_read_text(args.graph))
        g_true, _, _ = largest_connected_component(g_true)

    if args.embedding:
        if not args.signs:
            raise UsageError("--embedding needs its --signs sidecar")
        emb = read_embedding(args.embedding, args.signs)
        m_tk = emb.reconstruct()
        _log(f"[invert] embedding: n={emb.n}, rank={emb.rank}")
    elif g_true is not None:
        k = args.rank if args.rank is not None else g_true.n
        if not 1 <= k <= g_true.n:
            raise UsageError(f"--rank {k} outside [1, {g_true.n}]")
        lr = low_rank_approx(ppmi(g_true, T), k)
        m_tk = lr.reconstruct()
        _log(f"[invert] internal embedding: n={g_true.n}, rank={k}")
    else:
        raise UsageError("need --embedding/--signs or --graph as the input")

    n = m_tk.shape[0]
    if g_true is not None and g_true.n != n:
        raise ValueError(
            f"embedding covers {n} nodes but the graph has {g_true.n}"
        )

    if args.v_g is not None:
        v_g = float(args.v_g)
    elif g_true is not None:
        v_g = g_true.volume
    else:
        raise UsageError("need --v-g when no --graph supplies the volume")

    degrees_mode = args.degrees
    if degrees_mode is None:
        degrees_mode = "true" if g_true is not None else "recovered"
    if degrees_mode == "true":
        if g_true is None:
            raise UsageError("--degrees true needs --graph")
        degrees = g_true.degrees
    else:
        m_inf_hat = float(T) * (np.exp(m_tk) - 1.0)
        try:
            degrees = recover_degrees(m_inf_hat, v_g)
        except DegreeRecoveryError as exc:
            _log(f"[invert] degree recovery flagged: {exc}; using its solution")
            degrees = exc.solution
        total = float(degrees.sum())
        if total <= 0.0:
            raise ValueError("recovered degrees sum to a nonpositive value")
        degrees = degrees * (v_g / total)  # keep the volume identity exact

    methods = ["analytical", "opt"] if args.method == "both" else [args.method]
    out = Path(args.out)
    for method in methods:
        if method == "analytical":
            weighted, raw = _analytical_reconstruction(m_tk, T, degrees, v_g)
            binary = binarize_topk(raw, _even_volume(v_g))
        else:
            report = deepwalk_backwards_opt(m_tk, T, v_g, max_iters=args.max_iters)
            weighted = report.adj_weighted
            binary = binarize_sample(weighted, np.random.default_rng([args.seed]))
            _write_text(out / "loss_trace.csv", loss_trace_to_csv(report))
            _log(
                f"[invert] opt: {report.iterations_used} iterations, "
                f"final loss {report.loss_trace[-1]:.6g}, "
                f"converged={report.converged}"
            )
        _write_text(
            out / f"recon_{method}_weighted.edgelist",
            save_edge_list(Graph(weighted)),
        )
        _write_text(
            out / f"recon_{method}_binary.edgelist",
            save_edge_list(binary),
        )
        _log(f"[invert] wrote {method} reconstruction")
    return 0


def _align_to(g, other):
    """Permute other's adjacency into g's node-id order when ids match."""
    if g.node_ids is None or other.node_ids is None:
        return other
    if g.node_ids == other.node_ids:
        return other
    if set(map(str, g.node_ids)) != set(map(str, other.node_ids)):
        raise ValueError("graphs name different node sets; cannot align them")
    pos = {str(nid): i for i, nid in enumerate(other.node_ids)}
    perm = np.array([pos[str(nid)] for nid in g.node_ids])
    return Graph(other.adj[np.ix_(perm, perm)], node_ids=list(g.node_ids))


def cmd_metrics(args):
    g = load_edge_list(_read_text(args.graph))
    recon = load_edge_list(_read_text(args.recon))
    recon = _align_to(g, recon)
    labels = None
    if args.labels:
        labels = load_labels(_read_text(args.labels), node_ids=g.node_ids)
    rep = compare(g, recon, labels=labels, top_c=args.top_c)
    out = Path(args.out)
    _write_text(out / "metrics.json", rep.to_json())
    _write_text(
        out / "metrics.csv",
        MetricsReport.csv_header() + "\n" + rep.to_csv_row() + "\n",
    )
    _log(f"[metrics] wrote {out / 'metrics.json'}")
    return 0


def cmd_classify(args):
    features = _read_vector_csv(args.embedding)
    node_ids = None
    if args.graph:
        g = load_edge_list(_read_text(args.graph))
        if g.n != features.shape[0]:
            raise ValueError(
                f"--graph has {g.n} nodes but features have {features.shape[0]} rows"
            )
        node_ids = g.node_ids
    labels = load_labels(_read_text(args.labels), node_ids=node_ids)
    if labels.n != features.shape[0]:
        raise ValueError(
            f"labels cover {labels.n} nodes but features have "
            f"{features.shape[0]} rows"
        )
    if args.fractions is not None:
        fractions = args.fractions
    else:
        fractions = [i / 10 for i in range(1, 10)]
    results = classification_experiment(
        features, labels, fractions, repeats=args.repeats, seed=args.seed
    )
    from .classify import means_to_csv, results_to_csv

    out = Path(args.out)
    _write_text(out / "classify.csv", results_to_csv(results))
    _write_text(out / "classify_means.csv", means_to_csv(results))
    for res in results:
        _log(
            f"[classify] fraction {res.train_fraction:g}: "
            f"mean micro-F1 {res.mean_micro_f1:.4f}"
        )
    return 0


def cmd_sbm_gen(args):
    if args.sbm is None:
        raise UsageError("--sbm CFG.json is required")
    cfg = _load_sbm_config(args.sbm, seed_override=args.seed)
    g, labels = generate_sbm(cfg)
    out = Path(args.out)
    _write_text(out / "graph.edgelist", save_edge_list(g))
    _write_text(out / "labels.txt", save_labels(labels))
    _log(
        f"[sbm-gen] n={g.n}, clusters={cfg.num_clusters}, "
        f"edges={g.num_edges()}, seed={cfg.seed}"
    )
    return 0


# ---------------------------------------------------------------------------
# sweep


def _sweep_cell(cell_dir, g, labels, p_full, k, method, cfg):
    """Run one (rank, method) cell; skip entirely if its outputs exist."""
    method_index = 0 if method == "analytical" else 1
    want = [cell_dir / "metrics.json"]
    if cfg.fractions:
        want.append(cell_dir / "classify_means.csv")
    if all(path.exists() for path in want):
        _log(f"[sweep] cell k={k} method={method}: complete, skipping")
        return
    _log(f"[sweep] cell k={k} method={method}: running")
    cell_dir.mkdir(parents=True, exist_ok=True)
    lr = low_rank_approx(p_full, k)
    m_tk = lr.reconstruct()
    v_g = g.volume
    if method == "analytical":
        weighted, raw = _analytical_reconstruction(m_tk, cfg.T, g.degrees, v_g)
        binary = binarize_topk(raw, _even_volume(v_g))
    else:
        report = deepwalk_backwards_opt(m_tk, cfg.T, v_g, max_iters=cfg.max_iters)
        weighted = report.adj_weighted
        binary = binarize_sample(
            weighted, np.random.default_rng([cfg.seed, k, method_index])
        )
        _write_text(cell_dir / "loss_trace.csv", loss_trace_to_csv(report))
    _write_text(
        cell_dir / "recon_weighted.edgelist", save_edge_list(Graph(weighted))
    )
    _write_text(cell_dir / "recon_binary.edgelist", save_edge_list(binary))

    rep = compare(g, binary, labels=labels, top_c=cfg.top_c, rank=k, method=method)
    if cfg.fractions:
        _write_text(
            cell_dir / "classify.csv", _cell_classification(
                cell_dir, g, labels, lr, weighted, k, method_index, cfg
            )
        )
    _write_text(cell_dir / "metrics.json", rep.to_json())
    _log(f"[sweep] cell k={k} method={method}: done")


def _cell_classification(cell_dir, g, labels, lr, weighted, k, method_index, cfg):
    """Classification on the true embedding and on the embedding of the
    weighted (non-binarized) reconstruction; also writes the means file."""
    from .classify import means_to_csv, results_to_csv

    feats_true = embedding_from_lowrank(lr).vectors
    detail = ["source,train_fraction,repeat,micro_f1"]
    means = ["source,train_fraction,mean_micro_f1"]
    per_source = [("true", feats_true)]
    try:
        g_recon = Graph(weighted)
        lr_recon = low_rank_approx(ppmi(g_recon, cfg.T), k)
        per_source.append(("recon", embedding_from_lowrank(lr_recon).vectors))
    except ValueError as exc:
        _log(f"[sweep] k={k}: reconstruction embedding failed ({exc})")
    for si, (source, feats) in enumerate(per_source):
        results = classification_experiment(
            feats,
            labels,
            cfg.fractions,
            repeats=cfg.repeats,
            seed=[cfg.seed, k, method_index, si],
        )
        for block in results_to_csv(results).splitlines()[1:]:
            detail.append(f"{source},{block}")
        for block in means_to_csv(results).splitlines()[1:]:
            means.append(f"{source},{block}")
    _write_text(cell_dir / "classify_means.csv", "\n".join(means) + "\n")
    return "\n".join(detail) + "\n"


def _read_cell_means(cell_dir):
    means = {}
    path = cell_dir / "classify_means.csv"
    if not path.exists():
        return means
    for line in path.read_text().splitlines()[1:]:
        if not line.strip():
            continue
        source, frac, val = line.split(",")
        means[(source, float(frac))] = val
    return means


def cmd_sweep(args):
    cfg = (
        ExperimentConfig.from_json(args.config)
        if args.config
        else ExperimentConfig()
    )
    cfg.apply_flags(args)
    cfg.validate()

    if cfg.sbm is not None:
        sbm_cfg = _load_sbm_config(cfg.sbm)
        g, labels = generate_sbm(sbm_cfg)
    else:
        g = load_edge_list(_read_text(cfg.graph))
        labels = (
            load_labels(_read_text(cfg.labels), node_ids=g.node_ids)
            if cfg.labels
            else None
        )
    g, labels, _ = largest_connected_component(g, labels)
    n = g.n
    if cfg.fractions and labels is None:
        raise UsageError("classification fractions need node labels")

    ranks = cfg.ranks if cfg.ranks is not None else _default_ranks(n)
    for k in ranks:
        if not 1 <= k <= n:
            raise UsageError(f"rank {k} outside [1, {n}] for this graph")
    methods = ["analytical", "opt"] if cfg.method == "both" else [cfg.method]

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    if not (out / "graph.edgelist").exists():
        _write_text(out / "graph.edgelist", save_edge_list(g))
    if labels is not None and not (out / "labels.txt").exists():
        _write_text(
            out / "labels.txt",
            save_labels(labels, node_ids=g.node_ids),
        )

    _log(f"[sweep] n={n}, volume={g.volume:g}, ranks={ranks}, methods={methods}")
    p_full = ppmi(g, cfg.T)

    cells = [(k, method) for k in ranks for method in methods]
    workers = cfg.workers or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(
                _sweep_cell,
                out / f"cell_k{k}_{method}",
                g,
                labels,
                p_full,
                k,
                method,
                cfg,
            )
            for k, method in cells
        ]
        for fut in futures:
            fut.result()

    header = MetricsReport.csv_header()
    for frac in cfg.fractions:
        header += f",f1_true@{frac:g},f1_recon@{frac:g}"
    rows = [header]
    for k, method in cells:
        cell_dir = out / f"cell_k{k}_{method}"
        rep = MetricsReport.from_json((cell_dir / "metrics.json").read_text())
        row = rep.to_csv_row()
        means = _read_cell_means(cell_dir)
        for frac in cfg.fractions:
            row += f",{means.get(('true', frac), '')}"
            row += f",{means.get(('recon', frac), '')}"
        rows.append(row)
    _write_text(out / "sweep.csv", "\n".join(rows) + "\n")
    _log(f"[sweep] wrote {out / 'sweep.csv'}")
    return 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="embinvert",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command")

    p_embed = sub.add_parser(
        "embed",
        help="graph -> PPMI -> low-rank embedding files",
        epilog=(
            "Writes, per rank k: embedding_k{k}.csv (CSV, header "
            "dim_0..dim_{k-1}, one row per node of the largest component), "
            "embedding_k{k}_signs.csv (one line of comma-separated -1/0/1), "
            "eigenvalues_k{k}.csv, plus graph_used.edgelist."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_embed.add_argument("--graph", required=True, help="edge-list file")
    p_embed.add_argument("--T", type=int, default=10, help="walk window size")
    p_embed.add_argument(
        "--ranks",
        type=_int_list,
        default=None,
        help="comma-separated ranks (default: powers of two up to n)",
    )
    p_embed.add_argument("--out", default="embed_out", help="output directory")
    p_embed.set_defaults(func=cmd_embed)

    p_invert = sub.add_parser(
        "invert",
        help="embedding (or graph) -> reconstructed graphs",
        epilog=(
            "Writes recon_{method}_weighted.edgelist and "
            "recon_{method}_binary.edgelist (top-volume selection for the "
            "analytical route, Bernoulli sampling for the optimization "
            "route), plus loss_trace.csv (columns iteration,loss,grad_norm) "
            "for the optimization route. Degree/volume side data comes from "
            "--graph, or is recovered from the embedding itself with "
            "--degrees recovered plus --v-g."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_invert.add_argument("--embedding", help="embedding CSV from `embed`")
    p_invert.add_argument("--signs", help="sign sidecar from `embed`")
    p_invert.add_argument("--graph", help="true-graph edge list")
    p_invert.add_argument("--rank", type=int, default=None,
                          help="rank when embedding internally from --graph")
    p_invert.add_argument("--T", type=int, default=10)
    p_invert.add_argument(
        "--method",
        choices=("analytical", "opt", "both"),
        default="both",
    )
    p_invert.add_argument("--degrees", choices=("true", "recovered"), default=None)
    p_invert.add_argument("--v-g", dest="v_g", type=float, default=None,
                          help="graph volume when --graph is absent")
    p_invert.add_argument("--max-iters", dest="max_iters", type=int, default=500)
    p_invert.add_argument("--seed", type=int, default=0)
    p_invert.add_argument("--out", default="invert_out")
    p_invert.set_defaults(func=cmd_invert)

    p_metrics = sub.add_parser(
        "metrics",
        help="compare a reconstruction against the true graph",
        epilog=(
            "Writes metrics.json (full report incl. per-community "
            "conductance) and metrics.csv with columns "
            + MetricsReport.csv_header()
            + "."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_metrics.add_argument("--graph", required=True)
    p_metrics.add_argument("--recon", required=True)
    p_metrics.add_argument("--labels", default=None)
    p_metrics.add_argument("--top-c", dest="top_c", type=int, default=5)
    p_metrics.add_argument("--out", default="metrics_out")
    p_metrics.set_defaults(func=cmd_metrics)

    p_classify = sub.add_parser(
        "classify",
        help="node classification from embedding features",
        epilog=(
            "Writes classify.csv (columns train_fraction,repeat,micro_f1) "
            "and classify_means.csv (columns train_fraction,mean_micro_f1). "
            "Pass the graph the embedding was computed on (for example "
            "graph_used.edgelist from `embed`) so label ids align."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_classify.add_argument("--embedding", required=True)
    p_classify.add_argument("--labels", required=True)
    p_classify.add_argument("--graph", default=None)
    p_classify.add_argument(
        "--fractions",
        type=_float_list,
        default=None,
        help="comma-separated training fractions (default 0.1..0.9)",
    )
    p_classify.add_argument("--repeats", type=int, default=10)
    p_classify.add_argument("--seed", type=int, default=0)
    p_classify.add_argument("--out", default="classify_out")
    p_classify.set_defaults(func=cmd_classify)

    p_sbm = sub.add_parser(
        "sbm-gen",
        help="sample an SBM graph and its labels",
        epilog=(
            "The config JSON holds n, num_clusters, p_in, p_out, seed. "
            "Writes graph.edgelist and labels.txt."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_sbm.add_argument("--sbm", required=True, help="SBM config JSON")
    p_sbm.add_argument("--seed", type=int, default=None, help="override config seed")
    p_sbm.add_argument("--out", default="sbm_out")
    p_sbm.set_defaults(func=cmd_sbm_gen)

    p_sweep = sub.add_parser(
        "sweep",
        help="embed/invert/measure over a rank grid",
        epilog=(
            "Writes one cell directory per (rank, method) holding the "
            "reconstructions, metrics.json, loss_trace.csv and the "
            "classification CSVs, then assembles sweep.csv with one row per "
            "cell: " + MetricsReport.csv_header() + " plus, per requested "
            "fraction f, columns f1_true@f and f1_recon@f. Completed cells "
            "are skipped on rerun, so an interrupted sweep resumes where it "
            "stopped. --config takes a JSON file mirroring the flags; "
            "explicit flags win."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_sweep.add_argument("--config", default=None, help="ExperimentConfig JSON")
    p_sweep.add_argument("--graph", default=None)
    p_sweep.add_argument("--labels", default=None)
    p_sweep.add_argument("--sbm", default=None, help="SBM config JSON")
    p_sweep.add_argument("--T", type=int, default=None)
    p_sweep.add_argument("--ranks", type=_int_list, default=None)
    p_sweep.add_argument(
        "--method", choices=("analytical", "opt", "both"), default=None
    )
    p_sweep.add_argument("--max-iters", dest="max_iters", type=int, default=None)
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--fractions", type=_float_list, default=None)
    p_sweep.add_argument("--repeats", type=int, default=None)
    p_sweep.add_argument("--top-c", dest="top_c", type=int, default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
