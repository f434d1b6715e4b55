import numpy as np
import pytest

from sdnet.generators import ssbm
from sdnet.graph import SignedDirectedGraph, is_signed
from sdnet.rng import stream
from sdnet.splitters import (LABEL_NAMES, canonical_task, link_class_split,
                             node_split, spanning_forest, _enumerate_candidates,
                             _mask_counts)


def G(n, edges):
    return SignedDirectedGraph.from_edges(n, edges)


def random_signed_digraph(n, p, seed, reciprocal=0.15):
    """Random graph with both signs, both directions and some 2-cycles."""
    rng = stream(seed)
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            r = rng.random()
            if r < p:
                w = 1.0 if rng.random() < 0.6 else -1.0
                if rng.random() < reciprocal:
                    w2 = 1.0 if rng.random() < 0.6 else -1.0
                    edges[(u, v)] = w
                    edges[(v, u)] = w2
                elif rng.random() < 0.5:
                    edges[(u, v)] = w
                else:
                    edges[(v, u)] = w
    return G(n, [(u, v, w) for (u, v), w in sorted(edges.items())])


# ------------------------------------------------------------------ node split

def test_mask_counts_examples():
    assert _mask_counts(10, (0.8, 0.1, 0.1)) == [8, 1, 1]
    assert _mask_counts(3, (0.8, 0.1, 0.1)) == [1, 1, 1]
    with pytest.raises(ValueError):
        _mask_counts(2, (0.8, 0.1, 0.1))


def test_node_split_listing_configuration():
    labels = np.repeat(np.arange(5), 20)  # 5 classes of 20
    split = node_split(labels, 0.8, 0.1, 0.1, seed_frac=0.1, num_splits=3, seed=0)
    for rep in range(3):
        for c in range(5):
            members = labels == c
            assert split.train[members, rep].sum() == 16
            assert split.val[members, rep].sum() == 2
            assert split.test[members, rep].sum() == 2
            assert split.seed[members, rep].sum() == 2
    assert not np.any(split.train & split.val)
    assert not np.any(split.seed & ~split.train)


def test_node_split_respects_rounding_rule_exactly():
    rng = stream(11)
    for trial in range(30):
        sizes = rng.integers(3, 40, size=3)
        labels = np.repeat(np.arange(3), sizes)
        split = node_split(labels, 0.7, 0.15, 0.1, num_splits=2, seed=trial)
        for rep in range(2):
            for c in range(3):
                members = labels == c
                expect = _mask_counts(int(sizes[c]), (0.7, 0.15, 0.1))
                got = [int(split.train[members, rep].sum()),
                       int(split.val[members, rep].sum()),
                       int(split.test[members, rep].sum())]
                assert got == expect


def test_node_split_proportion_property():
    labels = np.repeat(np.arange(4), 50)
    split = node_split(labels, 0.6, 0.2, 0.2, seed=1)
    for c in range(4):
        members = labels == c
        frac = split.train[members, 0].sum() / 50
        assert abs(frac - 0.6) < 1.0 / 50


def test_node_split_errors():
    labels = np.array([0, 0, 1])
    with pytest.raises(ValueError):
        node_split(labels, 0.8, 0.1, 0.2)
    with pytest.raises(ValueError):
        node_split(labels, 0.5, 0.1, 0.1, seed_frac=0.6)
    with pytest.raises(ValueError):
        node_split(np.array([0, 0, 1]), 0.5, 0.3, 0.2)  # class of 1 needs 3 masks


def test_node_split_determinism():
    labels = np.repeat([0, 1], 30)
    a = node_split(labels, seed=7)
    b = node_split(labels, seed=7)
    assert np.array_equal(a.train, b.train) and np.array_equal(a.seed, b.seed)
    c = node_split(labels, seed=8)
    assert not np.array_equal(a.train, c.train)


# -------------------------------------------------------------- spanning forest

def test_spanning_forest_tree_and_triangle():
    tree = G(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])
    assert list(spanning_forest(tree)) == [0, 1, 2]
    tri = G(3, [(0, 1, 1.0), (1, 2, 3.0), (2, 0, 2.0)])
    picked = spanning_forest(tri)
    assert len(picked) == 2
    weights = {abs(tri.weight[e]) for e in picked}
    assert weights == {3.0, 2.0}  # two largest magnitudes


def test_spanning_forest_two_components():
    g = G(5, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0)])
    assert len(spanning_forest(g)) == 5 - 2


def test_spanning_forest_skips_self_loops():
    g = G(3, [(0, 0, 5.0), (0, 1, 1.0), (1, 2, 1.0)])
    picked = spanning_forest(g)
    assert 0 not in picked and len(picked) == 2


# ----------------------------------------------------------- link enumeration

def test_dp_two_cycle_discarded():
    g = G(2, [(0, 1, 1.0), (1, 0, 1.0)])
    queries, labels, _, discarded = _enumerate_candidates(g, "DP", stream(0))
    assert queries == [] and labels == []
    assert discarded == [(0, 1)]
    with pytest.raises(ValueError):
        link_class_split(g, "DP", seed=0)


def test_5c_hand_enumeration():
    g = G(5, [(0, 1, 1.0), (2, 1, -1.0), (3, 4, 1.0)])
    queries, labels, under, discarded = _enumerate_candidates(g, "5C", stream(0))
    assert len(queries) == 4 and discarded == []
    names = LABEL_NAMES["5C"]
    got = [names[l] for l in labels]
    assert sum(1 for s in got if s.endswith("positive")) == 2
    assert sum(1 for s in got if s.endswith("negative")) == 1
    assert got.count("nonedge") == 1  # mean nonempty edge-class count = 1
    # underlying edges preserved regardless of query orientation
    assert sorted(under[:3]) == [(0, 1), (2, 1), (3, 4)]


def test_task_aliases():
    assert canonical_task("direction") == "DP"
    assert canonical_task("sp") == "SP"
    assert canonical_task("five_class_signed_digraph") == "5C"
    with pytest.raises(ValueError):
        canonical_task("bogus")


def test_sp_enumeration_and_split():
    inst = ssbm(40, 2, 0.4, 0.4, eta=0.2, seed=0)
    split = link_class_split(inst.graph, "SP", prob_val=0.15, prob_test=0.05, seed=0)
    total = (len(split.train_labels) + len(split.val_labels)
             + len(split.test_labels))
    assert total == inst.graph.num_edges
    for pairs, labels in ((split.train_pairs, split.train_labels),
                          (split.val_pairs, split.val_labels),
                          (split.test_pairs, split.test_labels)):
        for (u, v), lab in zip(pairs, labels):
            w = dict(((a, b), c) for a, b, c in inst.graph.edge_list())[(u, v)]
            assert lab == (0 if w > 0 else 1)


def test_ep_split_labels_and_counts():
    g = random_signed_digraph(30, 0.2, seed=3)
    split = link_class_split(g, "EP", seed=1)
    all_labels = np.concatenate([split.train_labels, split.val_labels,
                                 split.test_labels])
    counts = np.bincount(all_labels, minlength=2)
    assert counts[0] == counts[1]  # one negative per positive
    edge_set = {(u, v) for u, v, _ in g.edge_list()}
    for pairs, labels in ((split.train_pairs, split.train_labels),
                          (split.test_pairs, split.test_labels)):
        for (u, v), lab in zip(pairs, labels):
            assert ((u, v) in edge_set) == (lab == 0)


def brute_force_conditions(g, u, v):
    """Which of the four oriented/sign conditions hold for the pair (u, v)."""
    w = {(a, b): c for a, b, c in g.edge_list()}
    return {
        "uv": (u, v) in w,
        "vu": (v, u) in w,
    }


def test_discard_rule_against_brute_force():
    for seed in range(20):
        g = random_signed_digraph(20, 0.3, seed=seed, reciprocal=0.3)
        for task in ("DP", "3C", "4C", "5C"):
            queries, labels, under, discarded = _enumerate_candidates(
                g, task, stream(seed))
            discarded_set = {tuple(d) for d in discarded}
            seen_pairs = set()
            for q in queries:
                a, b = min(q), max(q)
                seen_pairs.add((a, b))
            for (a, b) in discarded_set:
                cond = brute_force_conditions(g, a, b)
                assert cond["uv"] and cond["vu"]  # matched both conditions
                assert (a, b) not in seen_pairs
            # every kept edge-backed pair matches exactly one condition
            for q, lab in zip(queries, labels):
                a, b = min(q), max(q)
                cond = brute_force_conditions(g, a, b)
                if (a, b) in {tuple(sorted(p)) for p in discarded_set}:
                    continue
                if cond["uv"] or cond["vu"]:
                    assert cond["uv"] != cond["vu"]


def test_fold_disjointness_and_alphabet():
    for seed in range(10):
        g = random_signed_digraph(25, 0.3, seed=seed + 50)
        for task in ("SP", "DP", "EP", "3C", "4C", "5C"):
            try:
                split = link_class_split(g, task, seed=seed)
            except ValueError:
                continue  # legitimately empty class on this draw
            seen = set()
            for pairs in (split.train_pairs, split.val_pairs, split.test_pairs):
                keys = {(int(u), int(v)) for u, v in pairs}
                assert not (keys & seen)
                seen |= keys
            for labels in (split.train_labels, split.val_labels,
                           split.test_labels):
                assert np.all(labels >= 0)
                assert np.all(labels < len(LABEL_NAMES[task]))


def test_folds_plus_discarded_cover_all_candidates():
    g = random_signed_digraph(25, 0.35, seed=4, reciprocal=0.4)
    queries, labels, _, discarded = _enumerate_candidates(g, "4C", stream(7))
    split = link_class_split(g, "4C", seed=7)
    folds_total = (len(split.train_labels) + len(split.val_labels)
                   + len(split.test_labels))
    assert folds_total == len(queries)
    # discarded count equals the brute-force reciprocal pair count
    w = {(u, v) for u, v, _ in g.edge_list()}
    reciprocal = {(a, b) for (a, b) in w if (b, a) in w and a < b}
    assert {tuple(d) for d in split.discarded_pairs} == reciprocal


def test_observed_graph_retains_train_and_discarded_edges():
    g = random_signed_digraph(25, 0.35, seed=2, reciprocal=0.4)
    split = link_class_split(g, "DP", prob_val=0.3, prob_test=0.2, seed=0)
    observed = {(u, v) for u, v, _ in split.observed_graph.edge_list()}
    # discarded pair edges all retained
    for a, b in split.discarded_pairs:
        w = {(x, y) for x, y, _ in g.edge_list()}
        assert ((int(a), int(b)) in w) and ((int(b), int(a)) in w)
        assert ((int(a), int(b)) in observed) and ((int(b), int(a)) in observed)
    # val/test queried edges removed
    edge_set = {(u, v) for u, v, _ in g.edge_list()}
    for pairs in (split.val_pairs, split.test_pairs):
        for u, v in pairs:
            u, v = int(u), int(v)
            real = (u, v) if (u, v) in edge_set else (v, u)
            assert real not in observed


def test_maintain_connectedness():
    from sdnet.graph import largest_weakly_connected_component
    for seed in range(5):
        inst = ssbm(40, 2, 0.25, 0.25, eta=0.2, seed=seed)
        g, _ = largest_weakly_connected_component(inst.graph)
        split = link_class_split(g, "SP", prob_val=0.3, prob_test=0.2,
                                 maintain_connectedness=True, seed=seed)
        sub, _ = largest_weakly_connected_component(split.observed_graph)
        assert sub.num_nodes == g.num_nodes


def test_split_determinism():
    g = random_signed_digraph(30, 0.3, seed=9)
    a = link_class_split(g, "4C", seed=5)
    b = link_class_split(g, "4C", seed=5)
    assert np.array_equal(a.train_pairs, b.train_pairs)
    assert np.array_equal(a.test_labels, b.test_labels)
    c = link_class_split(g, "4C", seed=6)
    assert not np.array_equal(a.train_pairs, c.train_pairs)


def test_listing_like_configuration():
    g = random_signed_digraph(60, 0.2, seed=13)
    split = link_class_split(g, "direction", prob_val=0.15, prob_test=0.05, seed=0)
    m = len(split.train_labels) + len(split.val_labels) + len(split.test_labels)
    assert len(split.val_labels) == pytest.approx(0.15 * m, abs=2 + 0.02 * m)
    assert len(split.test_labels) == pytest.approx(0.05 * m, abs=2 + 0.02 * m)


def test_insufficient_nonedges():
    # complete directed graph: no room for EP negatives
    n = 5
    edges = [(u, v, 1.0) for u in range(n) for v in range(n) if u != v]
    g = G(n, edges)
    with pytest.raises(ValueError):
        link_class_split(g, "EP", seed=0)


def test_sp_requires_both_signs():
    inst = ssbm(20, 2, 0.5, 0.5, seed=0)  # eta=0, within +, across -
    assert is_signed(inst.graph)
    all_pos = G(4, [(0, 1, 1.0), (1, 2, 1.0)])
    with pytest.raises(ValueError):
        link_class_split(all_pos, "SP", seed=0)
