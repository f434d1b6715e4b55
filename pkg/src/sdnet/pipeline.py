"""End-to-end experiment pipelines.

``linkpred_run`` realizes the embed-then-classify link-prediction
recipe: split the task queries, embed nodes of the observed graph
(spectral features stacked with signed degree features), form edge
features from the query endpoints and train a logistic classifier on
the training fold. ``cluster_sweep`` drives spectral clustering over a
swept generator parameter and reports test-mask agreement per run.

Seeds for sub-steps are derived from the run seed with fixed tags, so
an entire experiment is a pure function of its configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import generators as gen
from .cluster import _embedding, spectral_cluster
from .graph import SignedDirectedGraph, signed_degree_features
from .logistic import logistic_train
from .metrics import accuracy, ari, auc, macro_f1
from .rng import derive
from .splitters import canonical_task, link_class_split, node_split

EDGE_COMBINERS = ("concat", "hadamard", "difference")


@dataclass(frozen=True)
class RunRecord:
    sweep_value: float
    instance: int
    seed: int
    metric: str
    value: float


@dataclass(frozen=True)
class RunResult:
    """Per-run metric rows; aggregates are always recomputed from them."""

    records: tuple[RunRecord, ...]

    def rows(self) -> list[tuple]:
        ordered = sorted(self.records, key=lambda r: (r.sweep_value, r.instance,
                                                      r.seed, r.metric))
        return [(r.sweep_value, r.instance, r.seed, r.metric, r.value) for r in ordered]

    def aggregate(self) -> dict[tuple[float, str], tuple[float, float, int]]:
        """(sweep_value, metric) -> (mean, sd, count); sd uses ddof=1."""
        groups: dict[tuple[float, str], list[float]] = {}
        for r in self.records:
            groups.setdefault((r.sweep_value, r.metric), []).append(r.value)
        out = {}
        for key in sorted(groups):
            vals = np.asarray(groups[key], dtype=np.float64)
            sd = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
            out[key] = (float(vals.mean()), sd, int(vals.size))
        return out

    def metric_values(self, metric: str) -> list[float]:
        return [r.value for r in self.records if r.metric == metric]


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated bundle of generator/method/split settings for the CLI."""

    graph: dict
    method: str | None = None
    task: str | None = None
    splits: dict = field(default_factory=dict)
    seeds: tuple[int, ...] = (0,)
    output_dir: str | None = None
    sweep: dict = field(default_factory=dict)

    def __post_init__(self):
        if "path" not in self.graph and "model" not in self.graph:
            raise ValueError("graph config needs a 'path' or a 'model'")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if self.task is not None and self.task != "clustering":
            canonical_task(self.task)


def _meta_from_params(p: dict, for_signed: bool) -> gen.MetaGraph:
    """Meta-graph from explicit matrices or high-level (kind, eta, gamma)."""
    if "meta_f" in p:
        return gen.MetaGraph(np.asarray(p["meta_f"], dtype=np.float64),
                             np.asarray(p.get("meta_f_filled", p["meta_f"]),
                                        dtype=np.float64),
                             p.get("meta_kind", "custom"))
    kind = p.get("meta", "f1" if for_signed else "cycle")
    if for_signed:
        if kind == "f1":
            return gen.f1_meta(p.get("gamma", 0.0))
        if kind == "f2":
            return gen.f2_meta(p.get("gamma", 0.0))
        raise ValueError(f"unknown sdsbm meta {kind!r} (use 'f1', 'f2' or meta_f)")
    return gen.meta_graph(kind, p["k"], eta=p.get("eta", 0.0),
                          ambient=p.get("ambient", False),
                          seed=p.get("meta_seed", 0))


def generate_from_params(params: dict, seed: int | None = None) -> gen.GeneratedInstance:
    """Dispatch a generator call from a flat parameter record.

    Accepts both high-level meta-graph settings (``meta = "cycle"`` plus
    noise/ambient knobs) and the explicit ``meta_f``/``meta_f_filled``
    matrices that generated instances echo, so any instance can be
    regenerated bit-identically from its own parameter record.
    """
    p = dict(params)
    model = p.pop("model")
    if seed is not None:
        p["seed"] = seed
    p.setdefault("seed", 0)
    if model == "ssbm":
        return gen.ssbm(n=p["n"], K=p["k"], p_in=p["p_in"], p_out=p["p_out"],
                        rho=p.get("rho", 1.0), eta_in=p.get("eta_in", 0.0),
                        eta_out=p.get("eta_out", 0.0), eta=p.get("eta"),
                        seed=p["seed"])
    if model == "pol_ssbm":
        return gen.pol_ssbm(n=p["n"], r=p["r"], p=p["p"], rho=p.get("rho", 1.0),
                            eta=p.get("eta", 0.0), N=p.get("community_nodes"),
                            seed=p["seed"])
    if model == "dsbm":
        meta = _meta_from_params(p, for_signed=False)
        return gen.dsbm(meta, n=p["n"], K=p.get("k", meta.num_clusters),
                        p=p["p"], rho=p.get("rho", 1.0), seed=p["seed"])
    if model == "sdsbm":
        meta = _meta_from_params(p, for_signed=True)
        return gen.sdsbm(meta, n=p["n"], p=p["p"], rho=p.get("rho", 1.0),
                         eta=p.get("eta", 0.0), seed=p["seed"])
    if model == "erdos_renyi":
        graph = gen.signed_erdos_renyi(n=p["n"], p=p["p"], seed=p["seed"])
        labels = np.zeros(p["n"], dtype=np.int64)
        params_out = {"model": model, "n": p["n"], "p": p["p"], "seed": p["seed"]}
        return gen.GeneratedInstance(graph, labels, params_out)
    raise ValueError(f"unknown generator model {model!r}")


def edge_feature_matrix(node_x: np.ndarray, pairs: np.ndarray,
                        combine: str = "concat") -> np.ndarray:
    """Map query pairs to edge features from endpoint embeddings."""
    xu = node_x[pairs[:, 0]]
    xv = node_x[pairs[:, 1]]
    if combine == "concat":
        return np.hstack([xu, xv])
    if combine == "hadamard":
        return xu * xv
    if combine == "difference":
        return xu - xv
    raise ValueError(f"unknown edge combiner {combine!r}")


def _standardize(x: np.ndarray) -> np.ndarray:
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    out = np.zeros_like(x)
    nz = std > 0
    out[:, nz] = (x[:, nz] - mean[nz]) / std[nz]
    return out


def link_node_embedding(g: SignedDirectedGraph, embed_method: str,
                        embed_dim: int, q: float = 0.25,
                        tau: float = 0.25) -> np.ndarray:
    """Spectral embedding stacked with standardized signed degrees.

    Columns are standardized so eigenvector coordinates (magnitude about
    n**-0.5) and degree features share a common scale for the classifier.
    """
    deg = signed_degree_features(g).values
    if embed_method in ("none", "signed_degree"):
        return deg
    emb = _standardize(_embedding(g, embed_method, embed_dim, q, tau))
    return np.hstack([emb, deg])


def linkpred_run(g: SignedDirectedGraph, task: str,
                 embed_method: str = "signed_spectral", embed_dim: int = 8,
                 seeds=(0, 1, 2, 3, 4), prob_val: float = 0.15,
                 prob_test: float = 0.05, maintain_connectedness: bool = False,
                 combine: str = "concat", lr: float = 0.1, epochs: int = 500,
                 l2: float = 1e-4, q: float = 0.25, tau: float = 0.25) -> RunResult:
    """Embed-then-classify link prediction over several split seeds.

    Reports accuracy and the test-fold majority-class rate for every
    task, plus AUC (score = probability of class 1) and macro F1 for
    binary tasks.
    """
    task = canonical_task(task)
    if combine not in EDGE_COMBINERS:
        raise ValueError(f"unknown edge combiner {combine!r}")
    records = []
    for s in seeds:
        split = link_class_split(g, task, prob_val=prob_val, prob_test=prob_test,
                                 maintain_connectedness=maintain_connectedness,
                                 seed=s)
        node_x = link_node_embedding(split.observed_graph, embed_method,
                                     embed_dim, q=q, tau=tau)
        x_train = edge_feature_matrix(node_x, split.train_pairs, combine)
        x_test = edge_feature_matrix(node_x, split.test_pairs, combine)
        classes = np.arange(len(split.label_names))
        model = logistic_train(x_train, split.train_labels, classes=classes,
                               l2=l2, lr=lr, epochs=epochs)
        pred = model.predict(x_test)
        truth = split.test_labels
        records.append(RunRecord(0.0, 0, s, "accuracy", accuracy(pred, truth)))
        counts = np.bincount(truth, minlength=len(split.label_names))
        records.append(RunRecord(0.0, 0, s, "majority",
                                 float(counts.max() / counts.sum())))
        if len(split.label_names) == 2:
            scores = model.predict_proba(x_test)[:, 1]
            records.append(RunRecord(0.0, 0, s, "auc", auc(scores, truth)))
            records.append(RunRecord(0.0, 0, s, "macro_f1",
                                     macro_f1(pred, truth, classes=classes)))
    return RunResult(tuple(records))


def cluster_run(g: SignedDirectedGraph, method: str, k: int, seed: int = 0,
                q: float = 0.25, tau: float = 0.25):
    """Single clustering run; returns (SoftAssignment, labels)."""
    return spectral_cluster(g, method, k, seed=seed, q=q, tau=tau)


def cluster_sweep(graph_params: dict, param: str, values, method: str, k: int,
                  instances: int = 2, seeds=(0, 1, 2, 3, 4),
                  train_frac: float = 0.8, val_frac: float = 0.1,
                  test_frac: float = 0.1, q: float = 0.25,
                  tau: float = 0.25) -> RunResult:
    """Sweep a generator parameter and report test-node ARI per run.

    For each (value, instance, seed): generate an instance (seed derived
    from the base seed, sweep index and instance index), draw one node
    split, cluster, and score ARI on the test mask only.
    """
    if param not in ("eta", "gamma", "p", "rho"):
        raise ValueError(f"unsupported sweep parameter {param!r}")
    base_seed = int(graph_params.get("seed", 0))
    records = []
    for vi, value in enumerate(values):
        gp = dict(graph_params)
        gp[param] = float(value)
        for inst in range(instances):
            instance = generate_from_params(gp, seed=derive(base_seed, vi, inst))
            labels = instance.labels
            graph = instance.graph
            for s in seeds:
                split = node_split(labels, train_frac=train_frac, val_frac=val_frac,
                                   test_frac=test_frac, num_splits=1,
                                   seed=derive(base_seed, vi, inst, s, 1))
                _, pred = spectral_cluster(graph, method, k,
                                           seed=derive(base_seed, vi, inst, s, 2),
                                           q=q, tau=tau)
                mask = split.test[:, 0]
                records.append(RunRecord(float(value), inst, int(s), "ari",
                                         ari(labels[mask], pred[mask])))
    return RunResult(tuple(records))
