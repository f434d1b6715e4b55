"""Node-level mask generation and link-level task splitting.

Node splits are stratified per class with a floor-based rounding rule
and a minimum of one node per requested nonzero fraction. Link splits
cover six tasks: sign prediction (SP), direction prediction (DP),
existence prediction (EP) and the three/four/five-class hybrids
(3C/4C/5C).

Conventions shared by the link tasks:

* A query pair matching more than one class condition (a reciprocal
  edge pair in DP/3C/4C/5C) is discarded from all folds; its edges stay
  in the observed training graph and the pair is reported in the split
  metadata.
* Direction-bearing queries are emitted with a random orientation
  (probability 1/2 of presenting the stored edge reversed), which keeps
  the forward/reverse classes balanced.
* Non-edge negatives are sampled uniformly without replacement; their
  count is the mean size of the nonempty edge classes (floored).
* Self-loops never become queries; they always stay observable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import SignedDirectedGraph
from .rng import stream

LINK_TASKS = ("SP", "DP", "EP", "3C", "4C", "5C")

TASK_ALIASES = {
    "sign": "SP",
    "direction": "DP",
    "existence": "EP",
    "three_class_digraph": "3C",
    "four_class_signed_digraph": "4C",
    "five_class_signed_digraph": "5C",
}

LABEL_NAMES = {
    "SP": ("positive", "negative"),
    "DP": ("forward", "reverse"),
    "EP": ("edge", "nonedge"),
    "3C": ("forward", "reverse", "nonedge"),
    "4C": ("forward_positive", "reverse_positive",
           "forward_negative", "reverse_negative"),
    "5C": ("forward_positive", "reverse_positive",
           "forward_negative", "reverse_negative", "nonedge"),
}


def canonical_task(task: str) -> str:
    name = TASK_ALIASES.get(task.lower(), task.upper())
    if name not in LINK_TASKS:
        raise ValueError(f"unknown link task {task!r}")
    return name


@dataclass(frozen=True)
class NodeSplit:
    """Boolean train/val/test/seed masks, one column per replicate."""

    train: np.ndarray
    val: np.ndarray
    test: np.ndarray
    seed: np.ndarray
    num_splits: int

    def __post_init__(self):
        masks = []
        for name in ("train", "val", "test", "seed"):
            m = np.asarray(getattr(self, name), dtype=bool)
            if m.ndim != 2 or m.shape[1] != self.num_splits:
                raise ValueError(f"{name} mask must be (num_nodes x num_splits)")
            masks.append(m)
        train, val, test, seedm = masks
        if np.any(train & val) or np.any(train & test) or np.any(val & test):
            raise ValueError("train/val/test masks must be pairwise disjoint")
        if np.any(seedm & ~train):
            raise ValueError("seed nodes must be training nodes")
        for name, m in zip(("train", "val", "test", "seed"), masks):
            object.__setattr__(self, name, m)


def _mask_counts(size: int, fracs: tuple[float, float, float]) -> list[int]:
    """Per-class counts for (train, val, test) under the rounding rule.

    Floors each fraction of the class size, bumps nonzero fractions to a
    minimum of one node, and resolves overflow by shrinking train, then
    val, then test. Raises when the minimums cannot all be honored.
    """
    counts = [max(int(np.floor(f * size)), 1) if f > 0 else 0 for f in fracs]
    while sum(counts) > size:
        for i in range(3):
            if counts[i] > 1:
                counts[i] -= 1
                break
        else:
            raise ValueError(
                f"class of size {size} is too small for fractions {fracs}")
    return counts


def node_split(labels, train_frac: float = 0.8, val_frac: float = 0.1,
               test_frac: float = 0.1, seed_frac: float = 0.0,
               num_splits: int = 1, seed: int = 0) -> NodeSplit:
    """Stratified train/val/test/seed masks, one replicate per column.

    Per class and replicate the class members are shuffled and assigned
    in order train -> val -> test using ``_mask_counts``; seed nodes are
    then drawn uniformly from that replicate's training members of the
    class (floor(seed_frac * class_size), at least 1 when positive, at
    most the training count).
    """
    labels = np.asarray(labels, dtype=np.int64).ravel()
    fracs = (train_frac, val_frac, test_frac)
    if any(f < 0 or f > 1 for f in fracs) or not 0 <= seed_frac <= 1:
        raise ValueError("fractions must lie in [0, 1]")
    if sum(fracs) > 1 + 1e-12:
        raise ValueError("train/val/test fractions must sum to at most 1")
    if seed_frac > train_frac:
        raise ValueError("seed_frac cannot exceed train_frac")
    if num_splits < 1:
        raise ValueError("need at least one replicate")
    n = labels.size
    rng = stream(seed)
    shape = (n, num_splits)
    train = np.zeros(shape, dtype=bool)
    val = np.zeros(shape, dtype=bool)
    test = np.zeros(shape, dtype=bool)
    seedm = np.zeros(shape, dtype=bool)
    classes = np.unique(labels)
    for rep in range(num_splits):
        for c in classes:
            members = np.nonzero(labels == c)[0]
            n_tr, n_va, n_te = _mask_counts(members.size, fracs)
            perm = members[rng.permutation(members.size)]
            train[perm[:n_tr], rep] = True
            val[perm[n_tr:n_tr + n_va], rep] = True
            test[perm[n_tr + n_va:n_tr + n_va + n_te], rep] = True
            if seed_frac > 0 and n_tr > 0:
                want = min(max(int(np.floor(seed_frac * members.size)), 1), n_tr)
                pick = perm[:n_tr][rng.permutation(n_tr)[:want]]
                seedm[pick, rep] = True
    return NodeSplit(train, val, test, seedm, num_splits)


@dataclass(frozen=True)
class LinkTaskSplit:
    """Query pairs with class labels per fold, plus the observable graph."""

    task: str
    train_pairs: np.ndarray
    train_labels: np.ndarray
    val_pairs: np.ndarray
    val_labels: np.ndarray
    test_pairs: np.ndarray
    test_labels: np.ndarray
    observed_graph: SignedDirectedGraph
    discarded_pairs: np.ndarray
    label_names: tuple[str, ...]

    def __post_init__(self):
        alphabet = len(self.label_names)
        seen = set()
        for fold in ("train", "val", "test"):
            pairs = np.asarray(getattr(self, f"{fold}_pairs"), dtype=np.int64).reshape(-1, 2)
            labels = np.asarray(getattr(self, f"{fold}_labels"), dtype=np.int64).ravel()
            if pairs.shape[0] != labels.shape[0]:
                raise ValueError("pairs and labels must align")
            if labels.size and (labels.min() < 0 or labels.max() >= alphabet):
                raise ValueError("label outside the task alphabet")
            keys = {(int(u), int(v)) for u, v in pairs}
            if keys & seen:
                raise ValueError("query pairs must be disjoint across folds")
            seen |= keys
            object.__setattr__(self, f"{fold}_pairs", pairs)
            object.__setattr__(self, f"{fold}_labels", labels)
        object.__setattr__(self, "discarded_pairs",
                           np.asarray(self.discarded_pairs, dtype=np.int64).reshape(-1, 2))


def spanning_forest(g: SignedDirectedGraph) -> np.ndarray:
    """Edge indices of a spanning forest of the undirected support.

    Kruskal over edges ordered by descending |weight| with ties broken
    by (src, dst); the result has n - #components edges. Self-loops are
    never chosen.
    """
    order = np.lexsort((g.dst, g.src, -np.abs(g.weight)))
    parent = np.arange(g.num_nodes, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    chosen = []
    for e in order:
        u, v = int(g.src[e]), int(g.dst[e])
        if u == v:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            chosen.append(int(e))
    return np.array(sorted(chosen), dtype=np.int64)


def _edge_tables(g: SignedDirectedGraph):
    """Lookup helpers: ordered weight map and unordered pair table."""
    weight_of = {}
    for u, v, w in zip(g.src, g.dst, g.weight):
        weight_of[(int(u), int(v))] = float(w)
    pairs = {}
    for (u, v), w in weight_of.items():
        if u == v:
            continue
        a, b = (u, v) if u < v else (v, u)
        entry = pairs.setdefault((a, b), [None, None])
        entry[0 if (u, v) == (a, b) else 1] = w
    return weight_of, pairs


def _sample_nonedges(rng, n, count, forbidden, ordered):
    """Uniform without-replacement non-edge pairs (ordered or u < v)."""
    if ordered:
        available = n * (n - 1) - len(forbidden)
    else:
        available = n * (n - 1) // 2 - len(forbidden)
    if count > available:
        raise ValueError(f"insufficient non-edges: need {count}, have {available}")
    chosen: set[int] = set()
    out = []
    while len(out) < count:
        u = int(rng.integers(n))
        v = int(rng.integers(n))
        if u == v:
            continue
        if not ordered and u > v:
            u, v = v, u
        code = u * n + v
        if code in forbidden or code in chosen:
            continue
        chosen.add(code)
        out.append((u, v))
    return out


def _enumerate_candidates(g: SignedDirectedGraph, task: str, rng):
    """Candidate (query, label) samples plus discarded ambiguous pairs.

    Returns (pairs, labels, underlying, discarded) where ``underlying``
    holds the stored edge a query came from ((-1, -1) for non-edges).
    """
    n = g.num_nodes
    weight_of, pair_table = _edge_tables(g)
    upair_keys = sorted(pair_table)
    queries: list[tuple[int, int]] = []
    labels: list[int] = []
    underlying: list[tuple[int, int]] = []
    discarded: list[tuple[int, int]] = []

    if task == "SP":
        for u, v in zip(g.src, g.dst):
            u, v = int(u), int(v)
            if u == v:
                continue
            queries.append((u, v))
            labels.append(0 if weight_of[(u, v)] > 0 else 1)
            underlying.append((u, v))
    elif task == "EP":
        for u, v in zip(g.src, g.dst):
            u, v = int(u), int(v)
            if u == v:
                continue
            queries.append((u, v))
            labels.append(0)
            underlying.append((u, v))
        forbidden = {u * n + v for (u, v) in queries}
        for u, v in _sample_nonedges(rng, n, len(queries), forbidden, ordered=True):
            queries.append((u, v))
            labels.append(1)
            underlying.append((-1, -1))
    else:  # DP / 3C / 4C / 5C share the direction-bearing enumeration
        signed_task = task in ("4C", "5C")
        for (a, b) in upair_keys:
            w_fwd, w_bwd = pair_table[(a, b)]
            if w_fwd is not None and w_bwd is not None:
                discarded.append((a, b))
                continue
            if w_fwd is not None:
                edge, w = (a, b), w_fwd
            else:
                edge, w = (b, a), w_bwd
            flip = rng.random() < 0.5
            query = (edge[1], edge[0]) if flip else edge
            if signed_task:
                label = (1 if flip else 0) + (2 if w < 0 else 0)
            else:
                label = 1 if flip else 0
            queries.append(query)
            labels.append(label)
            underlying.append(edge)
        if task in ("3C", "5C"):
            nonedge_label = 2 if task == "3C" else 4
            present = np.bincount(np.asarray(labels, dtype=np.int64),
                                  minlength=nonedge_label)[:nonedge_label]
            nonempty = int(np.count_nonzero(present))
            count = len(queries) // nonempty if nonempty else 0
            forbidden = {a * n + b for (a, b) in upair_keys}
            for u, v in _sample_nonedges(rng, n, count, forbidden, ordered=False):
                if rng.random() < 0.5:
                    u, v = v, u
                queries.append((u, v))
                labels.append(nonedge_label)
                underlying.append((-1, -1))

    return queries, labels, underlying, discarded


def link_class_split(g: SignedDirectedGraph, task: str, prob_val: float = 0.15,
                     prob_test: float = 0.05, maintain_connectedness: bool = False,
                     seed: int = 0) -> LinkTaskSplit:
    """Split link-task queries into train/val/test folds.

    Folds are stratified per class: each class is shuffled and assigned
    floor(prob_val * class_size) validation and floor(prob_test *
    class_size) test queries, the rest training. With
    ``maintain_connectedness`` the queries backed by a maximal-|weight|
    spanning forest are forced into the training fold, so a weakly
    connected input stays connected in the observed graph. Edges whose
    queries land in val/test are removed from the observed graph.
    """
    task = canonical_task(task)
    if prob_val < 0 or prob_test < 0 or prob_val + prob_test >= 1:
        raise ValueError("need prob_val + prob_test < 1 and both nonnegative")
    rng = stream(seed)
    queries, labels, underlying, discarded = _enumerate_candidates(g, task, rng)
    names = LABEL_NAMES[task]
    label_arr = np.asarray(labels, dtype=np.int64)
    class_counts = np.bincount(label_arr, minlength=len(names)) if label_arr.size \
        else np.zeros(len(names), dtype=np.int64)
    for cls, cnt in enumerate(class_counts):
        if cnt == 0:
            raise ValueError(
                f"task {task}: class {names[cls]!r} has no samples after discarding")

    forest_codes: set[int] = set()
    if maintain_connectedness:
        n = g.num_nodes
        for e in spanning_forest(g):
            a, b = int(g.src[e]), int(g.dst[e])
            forest_codes.add(min(a, b) * n + max(a, b))

    m = label_arr.size
    fold = np.zeros(m, dtype=np.int64)
    locked = np.zeros(m, dtype=bool)
    if forest_codes:
        n = g.num_nodes
        for i, (u, v) in enumerate(underlying):
            if u >= 0 and min(u, v) * n + max(u, v) in forest_codes:
                locked[i] = True
    for cls in range(len(names)):
        idx = np.nonzero(label_arr == cls)[0]
        free = idx[~locked[idx]]
        perm = free[rng.permutation(free.size)]
        n_val = min(int(np.floor(prob_val * idx.size)), perm.size)
        n_test = min(int(np.floor(prob_test * idx.size)), perm.size - n_val)
        fold[perm[:n_val]] = 1
        fold[perm[n_val:n_val + n_test]] = 2

    query_arr = np.asarray(queries, dtype=np.int64).reshape(-1, 2)
    under_arr = np.asarray(underlying, dtype=np.int64).reshape(-1, 2)
    hidden = under_arr[(fold > 0) & (under_arr[:, 0] >= 0)]
    n = g.num_nodes
    hidden_codes = {int(u) * n + int(v) for u, v in hidden}
    edge_codes = g.src * n + g.dst
    keep = np.array([c not in hidden_codes for c in edge_codes], dtype=bool)
    observed = g.replace_edges(g.src[keep], g.dst[keep], g.weight[keep])

    def fold_of(which):
        sel = fold == which
        return query_arr[sel], label_arr[sel]

    train_p, train_l = fold_of(0)
    val_p, val_l = fold_of(1)
    test_p, test_l = fold_of(2)
    return LinkTaskSplit(
        task=task,
        train_pairs=train_p, train_labels=train_l,
        val_pairs=val_p, val_labels=val_l,
        test_pairs=test_p, test_labels=test_l,
        observed_graph=observed,
        discarded_pairs=np.asarray(discarded, dtype=np.int64).reshape(-1, 2),
        label_names=names,
    )
