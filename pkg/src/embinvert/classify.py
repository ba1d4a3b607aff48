"""One-vs-rest logistic classification of nodes from embedding features.

Per-label binary logistic regressions on standardized features, top-l
label assignment (l = each node's true label count), and micro-averaged F1
over repeated uniform train/test splits.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.linear_model import LogisticRegression

from .graph_core import NodeLabels


@dataclass
class ClassifierModel:
    """Per-label linear scorers plus the training-split standardization.

    Labels that had no positive (or no negative) training examples are
    listed in constant_scores and resolved to -inf (or +inf) at prediction
    time; their weight rows stay zero so the score matrix never mixes
    infinities into the linear algebra.
    """

    label_ids: list
    weights: np.ndarray  # (num_labels, k + 1), bias in the last column
    feature_mean: np.ndarray
    feature_std: np.ndarray
    constant_scores: dict

    @property
    def num_labels(self):
        return len(self.label_ids)


def train_ovr_logreg(features, labels, train_idx, reg=1.0):
    """Fit one binary logistic regression per distinct label.

    Features are standardized per dimension on the training split
    (zero-variance dimensions pass through). Each regression uses an l2
    penalty of strength reg and runs to gradient norm 1e-6 or 200
    iterations. A label with no positive training examples is recorded as
    constant all-negative rather than failing.
    """
    x = np.asarray(features, dtype=float)
    if x.ndim != 2 or x.shape[1] < 1:
        raise ValueError("features must be a nonempty n x k matrix")
    train_idx = np.asarray(train_idx, dtype=int)
    if train_idx.size == 0:
        raise ValueError("training split is empty")
    for i in train_idx:
        if not labels.labels[int(i)]:
            raise ValueError(f"training node {int(i)} has no label")
    mu = x[train_idx].mean(axis=0)
    sd = x[train_idx].std(axis=0)
    sd = np.where(sd == 0.0, 1.0, sd)
    xs = (x[train_idx] - mu) / sd
    label_ids = labels.distinct()
    k = x.shape[1]
    weights = np.zeros((len(label_ids), k + 1))
    constant = {}
    for li, lab in enumerate(label_ids):
        y = np.array([lab in labels.labels[int(i)] for i in train_idx])
        if not y.any():
            constant[lab] = -np.inf
            continue
        if y.all():
            constant[lab] = np.inf
            continue
        clf = LogisticRegression(
            C=1.0 / reg, solver="lbfgs", tol=1e-6, max_iter=200
        )
        clf.fit(xs, y)
        weights[li, :k] = clf.coef_[0]
        weights[li, k] = clf.intercept_[0]
    return ClassifierModel(
        label_ids=label_ids,
        weights=weights,
        feature_mean=mu,
        feature_std=sd,
        constant_scores=constant,
    )


def predict_top_l(model, features, l_per_node):
    """Assign each node its l highest-scoring labels.

    l_per_node[i] is usually node i's true label count. Score ties break
    toward the lower label id.
    """
    x = np.asarray(features, dtype=float)
    k = model.weights.shape[1] - 1
    if x.ndim != 2 or x.shape[1] != k:
        raise ValueError(f"features must be n x {k}")
    l_per_node = [int(l) for l in l_per_node]
    if len(l_per_node) != x.shape[0]:
        raise ValueError("l_per_node length must match feature rows")
    if any(l < 1 for l in l_per_node):
        raise ValueError("every node needs at least one predicted label")
    if any(l > model.num_labels for l in l_per_node):
        raise ValueError("cannot predict more labels than the model knows")
    xs = (x - model.feature_mean) / model.feature_std
    scores = xs @ model.weights[:, :k].T + model.weights[:, k]
    for li, lab in enumerate(model.label_ids):
        if lab in model.constant_scores:
            scores[:, li] = model.constant_scores[lab]
    # stable sort on -score keeps lower label ids first on ties
    order = np.argsort(-scores, axis=1, kind="stable")
    out = []
    for i, l in enumerate(l_per_node):
        out.append({model.label_ids[j] for j in order[i, :l]})
    return NodeLabels(out)


def micro_f1(pred, truth):
    """Micro-averaged F1 pooling all (node, label) decisions."""
    if pred.n != truth.n:
        raise ValueError(f"node count mismatch: {pred.n} vs {truth.n}")
    if all(len(t) == 0 for t in truth.labels):
        raise ValueError("truth labels are empty")
    tp = fp = fn = 0
    for p, t in zip(pred.labels, truth.labels):
        tp += len(p & t)
        fp += len(p - t)
        fn += len(t - p)
    return 2.0 * tp / (2.0 * tp + fp + fn)


@dataclass
class ClassificationResult:
    train_fraction: float
    repeats: int
    per_repeat_scores: list
    mean_micro_f1: float


def classification_experiment(
    features, labels, fractions, repeats=10, seed=0, reg=1.0
):
    """Micro-F1 over repeated uniform splits at each training fraction.

    Splits are uniform over nodes; every (fraction, repeat) cell draws its
    own seeded stream, so results are deterministic and independent of
    evaluation order. Scoring uses the top-l rule with l set to each test
    node's true label count.
    """
    x = np.asarray(features, dtype=float)
    n = x.shape[0]
    if labels.n != n:
        raise ValueError("labels must cover every feature row")
    fractions = [float(f) for f in fractions]
    if not fractions:
        raise ValueError("need at least one training fraction")
    if any(not 0.0 < f < 1.0 for f in fractions):
        raise ValueError("training fractions must lie strictly inside (0, 1)")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for i in range(n):
        if not labels.labels[i]:
            raise ValueError(f"node {i} has no label; classification needs one")
    seed_seq = (
        tuple(int(s) for s in seed)
        if isinstance(seed, (list, tuple, np.ndarray))
        else (int(seed),)
    )
    results = []
    for fi, frac in enumerate(fractions):
        scores = []
        for rep in range(repeats):
            rng = np.random.default_rng([*seed_seq, fi, rep])
            perm = rng.permutation(n)
            n_train = min(max(int(round(frac * n)), 1), n - 1)
            train, test = perm[:n_train], perm[n_train:]
            model = train_ovr_logreg(x, labels, train, reg=reg)
            l_counts = [len(labels.labels[int(i)]) for i in test]
            pred = predict_top_l(model, x[test], l_counts)
            scores.append(micro_f1(pred, labels.subset(test)))
        results.append(
            ClassificationResult(
                train_fraction=frac,
                repeats=repeats,
                per_repeat_scores=scores,
                mean_micro_f1=float(np.mean(scores)),
            )
        )
    return results


def results_to_csv(results):
    """Per-repeat scores as CSV with columns train_fraction,repeat,micro_f1."""
    lines = ["train_fraction,repeat,micro_f1"]
    for res in results:
        for rep, score in enumerate(res.per_repeat_scores):
            lines.append(f"{res.train_fraction!r},{rep},{float(score)!r}")
    return "\n".join(lines) + "\n"


def means_to_csv(results):
    """Mean scores as CSV with columns train_fraction,mean_micro_f1."""
    lines = ["train_fraction,mean_micro_f1"]
    for res in results:
        lines.append(f"{res.train_fraction!r},{res.mean_micro_f1!r}")
    return "\n".join(lines) + "\n"
