"""Seeded synthetic graph generators.

Implements the four block-model families used for benchmarking signed
and directed clustering methods (signed SBM, polarized signed SBM,
directed SBM with meta-graph structure and ambient filling, and the
signed directed SBM), plus a signed Erdos-Renyi helper.

All generators are pure functions of their parameters and a seed; one
independent Philox stream is opened per call, so identical inputs give
bit-identical edge lists. Block membership is contiguous by node index.
Self-loops are never generated. Sign-flip uniforms are always drawn for
present edges (even at flip probability 0), so instances that share a
seed but differ only in the flip rate have identical edge sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import SignedDirectedGraph
from .rng import stream

META_KINDS = ("cycle", "path", "complete", "star", "custom")


@dataclass(frozen=True)
class BlockSizes:
    """Nondecreasing block sizes summing to the node count."""

    sizes: np.ndarray

    def __post_init__(self):
        sizes = np.asarray(self.sizes, dtype=np.int64).ravel()
        if sizes.size == 0 or np.any(sizes <= 0):
            raise ValueError("all block sizes must be positive")
        if np.any(np.diff(sizes) < 0):
            raise ValueError("block sizes must be nondecreasing")
        object.__setattr__(self, "sizes", sizes)

    @property
    def total(self) -> int:
        return int(self.sizes.sum())

    def labels(self) -> np.ndarray:
        """Contiguous block assignment: block b occupies an index interval."""
        return np.repeat(np.arange(self.sizes.size, dtype=np.int64), self.sizes)


@dataclass(frozen=True)
class MetaGraph:
    """Inter-cluster edge pattern F plus its ambient-filled version.

    ``F_filled`` equals F with structural zeros (entries outside the
    pattern, zero for every noise level) replaced by 0.5; with an ambient
    cluster the last row/column is 0 in F and 0.5 in F_filled.
    """

    F: np.ndarray
    F_filled: np.ndarray
    kind: str

    def __post_init__(self):
        f = np.asarray(self.F, dtype=np.float64)
        ff = np.asarray(self.F_filled, dtype=np.float64)
        if f.ndim != 2 or f.shape[0] != f.shape[1] or f.shape != ff.shape:
            raise ValueError("meta-graph matrices must be square and congruent")
        if self.kind not in META_KINDS:
            raise ValueError(f"unknown meta-graph kind {self.kind!r}")
        if np.any(np.abs(f) > 1) or np.any(np.abs(ff) > 1):
            raise ValueError("meta-graph entries must lie in [-1, 1]")
        if self.kind != "custom" and (np.any(f < 0) or np.any(ff < 0)):
            raise ValueError("unsigned meta-graph entries must lie in [0, 1]")
        object.__setattr__(self, "F", f)
        object.__setattr__(self, "F_filled", ff)

    @property
    def num_clusters(self) -> int:
        return int(self.F.shape[0])


@dataclass(frozen=True)
class GeneratedInstance:
    """A generated graph, its planted labels, and the full parameter record."""

    graph: SignedDirectedGraph
    labels: np.ndarray
    params: dict

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).ravel()
        if labels.shape[0] != self.graph.num_nodes:
            raise ValueError("labels length must equal node count")
        object.__setattr__(self, "labels", labels)


def block_sizes(n: int, K: int, rho: float = 1.0) -> BlockSizes:
    """Block sizes for n nodes, K blocks and largest/smallest ratio rho.

    With rho == 1 the first K-1 blocks get floor(n/K) nodes and the last
    the remainder. With rho > 1 the sizes follow a geometric progression
    with per-step ratio rho**(1/(K-1)); the first size is
    floor(n*(1-r)/(1-r**K)), each next is floor(r * previous), and the
    last block absorbs the remainder.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    if n < K:
        raise ValueError("need at least one node per block")
    if rho < 1:
        raise ValueError("rho must be >= 1")
    if K == 1:
        return BlockSizes(np.array([n], dtype=np.int64))
    r0 = rho ** (1.0 / (K - 1))
    if r0 == 1.0:  # exact rho=1, or so close the root rounds to 1
        base = n // K
        sizes = [base] * (K - 1) + [n - (K - 1) * base]
    else:
        sizes = [int(np.floor(n * (1 - r0) / (1 - r0**K)))]
        for _ in range(1, K - 1):
            sizes.append(int(np.floor(r0 * sizes[-1])))
        sizes.append(n - sum(sizes))
    if min(sizes) <= 0:
        raise ValueError(f"infeasible block sizes {sizes} for n={n}, K={K}, rho={rho}")
    return BlockSizes(np.asarray(sizes, dtype=np.int64))


def _check_prob(name, value, upper=1.0):
    if not 0.0 <= value <= upper:
        raise ValueError(f"{name} must lie in [0, {upper}], got {value}")


def _ssbm_undirected_edges(rng, labels, p_in, p_out, eta_in, eta_out):
    """Sample unordered signed pairs for a signed SBM on given labels.

    Within-block pairs get +1 edges w.p. p_in, across-block pairs -1
    edges w.p. p_out; signs of present edges then flip w.p. eta_in /
    eta_out respectively. Returns (i, j, w) arrays with i < j.
    """
    n = labels.shape[0]
    us, vs, ws = [], [], []
    for i in range(n - 1):
        same = labels[i + 1:] == labels[i]
        prob = np.where(same, p_in, p_out)
        hit = rng.random(n - 1 - i) < prob
        j = np.nonzero(hit)[0]
        same_hit = same[j]
        sign = np.where(same_hit, 1.0, -1.0)
        flip = rng.random(j.size) < np.where(same_hit, eta_in, eta_out)
        if j.size:
            us.append(np.full(j.size, i, dtype=np.int64))
            vs.append(j.astype(np.int64) + i + 1)
            ws.append(np.where(flip, -sign, sign))
    if not us:
        z = np.zeros(0, dtype=np.int64)
        return z, z, np.zeros(0, dtype=np.float64)
    return np.concatenate(us), np.concatenate(vs), np.concatenate(ws)


def _signed_er_edges(rng, n, p):
    """Unordered +-1 pairs, each present w.p. p, sign uniform."""
    us, vs, ws = [], [], []
    for i in range(n - 1):
        hit = rng.random(n - 1 - i) < p
        j = np.nonzero(hit)[0]
        sign = np.where(rng.random(j.size) < 0.5, 1.0, -1.0)
        if j.size:
            us.append(np.full(j.size, i, dtype=np.int64))
            vs.append(j.astype(np.int64) + i + 1)
            ws.append(sign)
    if not us:
        z = np.zeros(0, dtype=np.int64)
        return z, z, np.zeros(0, dtype=np.float64)
    return np.concatenate(us), np.concatenate(vs), np.concatenate(ws)


def _both_directions(u, v, w):
    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    ww = np.concatenate([w, w])
    order = np.lexsort((dst, src))
    return src[order], dst[order], ww[order]


def ssbm(n: int, K: int, p_in: float, p_out: float, rho: float = 1.0,
         eta_in: float = 0.0, eta_out: float = 0.0, *,
         eta: float | None = None, seed: int = 0) -> GeneratedInstance:
    """Signed stochastic block model (undirected).

    ``eta`` sets both flip rates at once. Within-block edges start +1,
    across-block edges -1; both ordered copies of each pair are emitted
    with equal weight.
    """
    if eta is not None:
        eta_in = eta_out = eta
    _check_prob("p_in", p_in)
    _check_prob("p_out", p_out)
    _check_prob("eta_in", eta_in, 0.5)
    _check_prob("eta_out", eta_out, 0.5)
    sizes = block_sizes(n, K, rho)
    labels = sizes.labels()
    rng = stream(seed)
    u, v, w = _ssbm_undirected_edges(rng, labels, p_in, p_out, eta_in, eta_out)
    src, dst, ww = _both_directions(u, v, w)
    params = {"model": "ssbm", "n": n, "k": K, "p_in": p_in, "p_out": p_out,
              "rho": rho, "eta_in": eta_in, "eta_out": eta_out, "seed": seed}
    graph = SignedDirectedGraph(n, src, dst, ww, labels=labels)
    return GeneratedInstance(graph, labels, params)


def signed_erdos_renyi(n: int, p: float, seed: int = 0) -> SignedDirectedGraph:
    """Undirected graph, each pair present w.p. p with a uniform +-1 sign."""
    _check_prob("p", p)
    rng = stream(seed)
    u, v, w = _signed_er_edges(rng, n, p)
    src, dst, ww = _both_directions(u, v, w)
    return SignedDirectedGraph(n, src, dst, ww)


def pol_ssbm(n: int, r: int, p: float, rho: float = 1.0, eta: float = 0.0,
             N: int | None = None, seed: int = 0) -> GeneratedInstance:
    """Polarized SSBM: r two-block SSBMs planted in a signed ER background.

    Community sizes come from the block-size recursion over r communities
    with ratio rho and r*N total community nodes (default N = n // (2r)).
    Planted subgraphs overwrite the background inside their node sets.
    Labels: community c contributes clusters 2c and 2c+1; leftover
    (ambient) nodes get cluster id 2r.
    """
    if r < 1:
        raise ValueError("need at least one community")
    if N is None:
        N = n // (2 * r)
    _check_prob("p", p)
    _check_prob("eta", eta, 0.5)
    if r * N > n:
        raise ValueError(f"community budget r*N = {r * N} exceeds n = {n}")
    comm_sizes = block_sizes(r * N, r, rho)
    rng = stream(seed)
    bg_u, bg_v, bg_w = _signed_er_edges(rng, n, p)

    labels = np.full(n, 2 * r, dtype=np.int64)
    keep = np.ones(bg_u.size, dtype=bool)
    plant = [[], [], []]
    offset = 0
    for c, size in enumerate(comm_sizes.sizes):
        size = int(size)
        sub_labels = block_sizes(size, 2, rho).labels()
        su, sv, sw = _ssbm_undirected_edges(rng, sub_labels, p, p, eta, eta)
        plant[0].append(su + offset)
        plant[1].append(sv + offset)
        plant[2].append(sw)
        labels[offset:offset + size] = 2 * c + sub_labels
        keep &= ~((bg_u >= offset) & (bg_u < offset + size)
                  & (bg_v >= offset) & (bg_v < offset + size))
        offset += size

    u = np.concatenate([bg_u[keep]] + plant[0])
    v = np.concatenate([bg_v[keep]] + plant[1])
    w = np.concatenate([bg_w[keep]] + plant[2])
    src, dst, ww = _both_directions(u, v, w)
    params = {"model": "pol_ssbm", "n": n, "r": r, "p": p, "rho": rho,
              "eta": eta, "community_nodes": N, "seed": seed}
    graph = SignedDirectedGraph(n, src, dst, ww, labels=labels)
    return GeneratedInstance(graph, labels, params)


def _meta_core(kind, K, eta, rng):
    """F and its structural pattern mask for a K-cluster meta-graph."""
    F = np.zeros((K, K))
    pattern = np.zeros((K, K), dtype=bool)
    idx = np.arange(K)
    if kind == "cycle":
        for k in range(K):
            F[k, (k + 1) % K] += 1 - eta
            F[k, (k - 1) % K] += eta
            F[k, k] += 0.5
            pattern[k, [(k + 1) % K, (k - 1) % K, k]] = True
    elif kind == "path":
        for k in range(K):
            if k + 1 < K:
                F[k, k + 1] = 1 - eta
                pattern[k, k + 1] = True
            if k - 1 >= 0:
                F[k, k - 1] = eta
                pattern[k, k - 1] = True
            F[k, k] = 0.5
            pattern[k, k] = True
    elif kind == "complete":
        pattern[:] = True
        F[idx, idx] = 0.5
        for k in range(K):
            for l in range(k + 1, K):
                F[k, l] = eta if rng.random() < 0.5 else 1 - eta
                F[l, k] = 1 - F[k, l]
    elif kind == "star":
        center = (K - 1) // 2
        F[idx, idx] = 0.5
        pattern[idx, idx] = True
        pattern[center, :] = True
        pattern[:, center] = True
        for l in range(K):
            if l != center:
                F[center, l] = 1 - eta if l % 2 == 1 else eta
                F[l, center] = 1 - eta if l % 2 == 1 else eta
    else:
        raise ValueError(f"unsupported meta-graph kind {kind!r}")
    return F, pattern


def meta_graph(kind: str, K: int, eta: float = 0.0, ambient: bool = False,
               seed: int = 0) -> MetaGraph:
    """Meta-graph of the given kind on K clusters.

    With ``ambient`` the pattern is built on the first K-1 clusters (the
    cycle closes mod K-1) and the last row/column is 0 in F and 0.5 in
    the filled matrix. The ``complete`` kind draws its upper-triangular
    entries at random, so it takes a seed.
    """
    _check_prob("eta", eta, 0.5)
    if K < 2:
        raise ValueError("meta-graph needs K >= 2")
    if ambient and kind == "cycle" and K < 3:
        raise ValueError("ambient cycle needs K >= 3")
    core_k = K - 1 if ambient else K
    if core_k < 2:
        raise ValueError(f"kind {kind!r} needs at least 2 non-ambient clusters")
    rng = stream(seed)
    F_core, pattern = _meta_core(kind, core_k, eta, rng)
    filled_core = F_core.copy()
    filled_core[~pattern] = 0.5
    if not ambient:
        return MetaGraph(F_core, filled_core, kind)
    F = np.zeros((K, K))
    F[:core_k, :core_k] = F_core
    filled = np.full((K, K), 0.5)
    filled[:core_k, :core_k] = filled_core
    return MetaGraph(F, filled, kind)


def custom_meta(F, kind: str = "custom") -> MetaGraph:
    """Wrap an explicit (possibly signed) meta-graph matrix; no filling."""
    F = np.asarray(F, dtype=np.float64)
    return MetaGraph(F, F.copy(), kind)


def f1_meta(gamma: float) -> MetaGraph:
    """3-cluster signed directed meta-graph with tunable imbalance gamma."""
    _check_prob("gamma", gamma)
    g = gamma
    F = np.array([
        [0.5, g, -g],
        [1 - g, 0.5, -0.5],
        [-1 + g, -0.5, 0.5],
    ])
    return custom_meta(F)


def f2_meta(gamma: float) -> MetaGraph:
    """4-cluster signed directed meta-graph with tunable imbalance gamma."""
    _check_prob("gamma", gamma)
    g = gamma
    F = np.array([
        [0.5, g, -g, -g],
        [1 - g, 0.5, -0.5, -g],
        [-1 + g, -0.5, 0.5, -g],
        [-1 + g, -1 + g, -1 + g, 0.5],
    ])
    return custom_meta(F)


def dsbm(meta: MetaGraph, n: int, K: int, p: float, rho: float = 1.0,
         seed: int = 0) -> GeneratedInstance:
    """Directed stochastic block model driven by a filled meta-graph.

    Every ordered pair (i, j), i != j, with cluster pair (k, l) receives
    an edge i -> j independently w.p. p * F_filled[k, l]; weights are +1.
    """
    _check_prob("p", p)
    if meta.num_clusters != K:
        raise ValueError(f"meta-graph has {meta.num_clusters} clusters, expected {K}")
    ff = meta.F_filled
    if p * ff.max() > 1 + 1e-12:
        raise ValueError("p * max(F_filled) must not exceed 1")
    sizes = block_sizes(n, K, rho)
    labels = sizes.labels()
    rng = stream(seed)
    srcs, dsts = [], []
    for i in range(n):
        prob = p * ff[labels[i], labels]
        prob[i] = 0.0
        hit = np.nonzero(rng.random(n) < prob)[0]
        if hit.size:
            srcs.append(np.full(hit.size, i, dtype=np.int64))
            dsts.append(hit.astype(np.int64))
    if srcs:
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    w = np.ones(src.size, dtype=np.float64)
    params = {"model": "dsbm", "n": n, "k": K, "p": p, "rho": rho,
              "seed": seed, "meta_kind": meta.kind,
              "meta_f": meta.F.tolist(),
              "meta_f_filled": meta.F_filled.tolist()}
    graph = SignedDirectedGraph(n, src, dst, w, labels=labels)
    return GeneratedInstance(graph, labels, params)


def sdsbm(meta: MetaGraph, n: int, p: float, rho: float = 1.0,
          eta: float = 0.0, seed: int = 0) -> GeneratedInstance:
    """Signed directed stochastic block model.

    Ordered pair (i, j) with cluster pair (k, l) gets an edge w.p.
    p * |F[k, l]| carrying sign(F[k, l]) (zero entries mean no edge);
    every edge sign then flips independently w.p. eta.
    """
    _check_prob("p", p)
    _check_prob("eta", eta, 0.5)
    F = meta.F
    K = meta.num_clusters
    if p * np.abs(F).max() > 1 + 1e-12:
        raise ValueError("p * max|F| must not exceed 1")
    sizes = block_sizes(n, K, rho)
    labels = sizes.labels()
    rng = stream(seed)
    mag = np.abs(F)
    sgn = np.where(F < 0, -1.0, 1.0)
    srcs, dsts, ws = [], [], []
    for i in range(n):
        prob = p * mag[labels[i], labels]
        prob[i] = 0.0
        hit = np.nonzero(rng.random(n) < prob)[0]
        base = sgn[labels[i], labels[hit]]
        flip = rng.random(hit.size) < eta
        if hit.size:
            srcs.append(np.full(hit.size, i, dtype=np.int64))
            dsts.append(hit.astype(np.int64))
            ws.append(np.where(flip, -base, base))
    if srcs:
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
        w = np.concatenate(ws)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
        w = np.zeros(0, dtype=np.float64)
    params = {"model": "sdsbm", "n": n, "p": p, "rho": rho, "eta": eta,
              "seed": seed, "meta_kind": meta.kind,
              "meta_f": meta.F.tolist(),
              "meta_f_filled": meta.F_filled.tolist()}
    graph = SignedDirectedGraph(n, src, dst, w, labels=labels)
    return GeneratedInstance(graph, labels, params)
