"""Node embeddings of undirected graphs and their inversion.

The package computes truncated-PPMI (random-walk co-occurrence) embeddings,
maps embeddings back to weighted graphs by either a closed-form linear-system
route or gradient-based optimization, and measures what structure survives
the round trip (edges, triangles, path lengths, community conductance,
classification utility).
"""

from .classify import (
    ClassificationResult,
    ClassifierModel,
    classification_experiment,
    micro_f1,
    predict_top_l,
    train_ovr_logreg,
)
from .graph_core import (
    EdgeListError,
    Graph,
    NodeLabels,
    SbmConfig,
    binarize_sample,
    binarize_topk,
    generate_sbm,
    is_bipartite,
    is_connected,
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
    invert_limiting,
    recover_degrees,
)
from .invert_opt import (
    LogitMatrix,
    OptimizationReport,
    deepwalk_backwards_opt,
    ppmi_loss,
    shifted_logistic,
)
from .metrics import (
    MetricsReport,
    average_path_length,
    compare,
    conductance,
    rel_frobenius,
    relative_error,
    triangle_count,
)
from .netmf import (
    Embedding,
    LowRankPpmi,
    PpmiMatrix,
    embedding_from_lowrank,
    limiting_pmi,
    low_rank_approx,
    pmi,
    ppmi,
)
from .optim import LbfgsResult, minimize_lbfgs

__version__ = "0.1.0"

__all__ = [
    "AnalyticalInversionInput",
    "ClassificationResult",
    "ClassifierModel",
    "DegreeRecoveryError",
    "EdgeListError",
    "Embedding",
    "Graph",
    "LbfgsResult",
    "LogitMatrix",
    "LowRankPpmi",
    "MetricsReport",
    "NodeLabels",
    "OptimizationReport",
    "PpmiMatrix",
    "SbmConfig",
    "average_path_length",
    "binarize_sample",
    "binarize_topk",
    "classification_experiment",
    "compare",
    "conductance",
    "deepwalk_backwards_analytical",
    "deepwalk_backwards_opt",
    "embedding_from_lowrank",
    "generate_sbm",
    "invert_limiting",
    "is_bipartite",
    "is_connected",
    "largest_connected_component",
    "limiting_pmi",
    "load_edge_list",
    "load_labels",
    "low_rank_approx",
    "micro_f1",
    "minimize_lbfgs",
    "pmi",
    "ppmi",
    "ppmi_loss",
    "predict_top_l",
    "recover_degrees",
    "rel_frobenius",
    "relative_error",
    "save_edge_list",
    "save_labels",
    "shifted_logistic",
    "train_ovr_logreg",
    "triangle_count",
]
