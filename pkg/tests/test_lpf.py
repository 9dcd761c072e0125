import itertools
import random

import numpy as np
import pytest

from ecsched.lpf import check_sigma_pair, lpf, sigma_for_subgraph
from ecsched.netmodel import build_conflict_sets, enumerate_maximal_activations
from oracles import sigma_vertex_search


def six_cycle():
    return build_conflict_sets(
        edges=[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)], model="one-hop"
    )


def random_network(rng, n):
    conflicts = [set() for _ in range(n)]
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < 0.45:
            conflicts[a].add(b)
            conflicts[b].add(a)
    return build_conflict_sets(model="explicit", conflicts=conflicts)


# ---------------------------------------------------------------- subsets


def test_single_link_pools_perfectly():
    net = build_conflict_sets(model="explicit", conflicts=[[]])
    sigma, witness = sigma_for_subgraph(net, [0])
    assert sigma == pytest.approx(1.0, abs=1e-9)
    assert witness.links == (0,)


def test_two_conflicting_links_pool_perfectly():
    net = build_conflict_sets(model="explicit", conflicts=[[1], [0]])
    sigma, _ = sigma_for_subgraph(net, [0, 1])
    assert sigma == pytest.approx(1.0, abs=1e-9)


def test_three_link_path_factor_is_one():
    net = build_conflict_sets(edges=[(1, 2), (2, 3), (3, 4)], model="one-hop")
    result = lpf(net)
    assert result.sigma_star == pytest.approx(1.0, abs=1e-9)
    assert len(result.per_subset) == 7
    for sigma in result.per_subset.values():
        assert sigma == pytest.approx(1.0, abs=1e-9)


def test_six_cycle_full_subset_is_two_thirds():
    sigma, witness = sigma_for_subgraph(six_cycle(), range(6))
    assert sigma == pytest.approx(2.0 / 3.0, abs=1e-9)
    hi, lo = witness.mixes()
    # dominance replay at the reported value
    assert (sigma * hi >= lo - 1e-9).all()


def test_six_cycle_lpf_and_proper_subsets():
    result = lpf(six_cycle())
    assert result.sigma_star == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert result.argmin_links == (0, 1, 2, 3, 4, 5)
    assert len(result.per_subset) == 63
    # every proper subset of the ring is a union of paths and pools perfectly
    for links, sigma in result.per_subset.items():
        if len(links) < 6:
            assert sigma == pytest.approx(1.0, abs=1e-9), links


def test_six_cycle_witness_refutes_smaller_sigma():
    result = lpf(six_cycle())
    w = result.witness
    assert check_sigma_pair(
        six_cycle(), w.links, w.dominating_weights, w.dominated_weights, result.sigma_star
    )
    assert not check_sigma_pair(
        six_cycle(),
        w.links,
        w.dominating_weights,
        w.dominated_weights,
        result.sigma_star - 1e-6,
    )


def test_hand_built_six_cycle_witness():
    # the two alternating triples against the three opposite pairs
    net = six_cycle()
    acts = enumerate_maximal_activations(net, range(6))
    triples = [i for i, a in enumerate(acts) if sum(a) == 3]
    pairs = [i for i, a in enumerate(acts) if sum(a) == 2]
    hi = [0.0] * len(acts)
    for i in triples:
        hi[i] = 0.5
    lo = [0.0] * len(acts)
    for i in pairs:
        lo[i] = 1.0 / 3.0
    assert check_sigma_pair(net, range(6), hi, lo, 2.0 / 3.0)
    assert not check_sigma_pair(net, range(6), hi, lo, 2.0 / 3.0 - 1e-6)


# ---------------------------------------------------------------- properties


def test_matches_vertex_search_on_small_subsets():
    rng = random.Random(404)
    checked = 0
    for _ in range(12):
        n = rng.randint(2, 4)
        net = random_network(rng, n)
        for size in range(1, n + 1):
            for members in itertools.combinations(range(n), size):
                sigma, _ = sigma_for_subgraph(net, members)
                ref = sigma_vertex_search(net, list(members))
                assert ref is not None
                assert sigma == pytest.approx(ref, abs=1e-6), (members, net.conflict_sets)
                checked += 1
    assert checked > 30


def test_sigma_bounded_in_unit_interval():
    rng = random.Random(77)
    for _ in range(15):
        n = rng.randint(1, 6)
        net = random_network(rng, n)
        sigma, witness = sigma_for_subgraph(net, range(n))
        assert 0.0 < sigma <= 1.0 + 1e-9
        assert abs(sum(witness.dominating_weights) - 1.0) < 1e-7
        assert abs(sum(witness.dominated_weights) - 1.0) < 1e-7
        hi, lo = witness.mixes()
        assert (sigma * hi >= lo - 1e-7).all()


def test_reported_witness_is_tight_on_random_networks():
    rng = random.Random(2910)
    for _ in range(10):
        n = rng.randint(2, 6)
        net = random_network(rng, n)
        result = lpf(net)
        w = result.witness
        assert check_sigma_pair(
            net, w.links, w.dominating_weights, w.dominated_weights, result.sigma_star
        )
        assert not check_sigma_pair(
            net,
            w.links,
            w.dominating_weights,
            w.dominated_weights,
            result.sigma_star - 1e-6,
        )


# ---------------------------------------------------------------- validation


def test_weights_must_be_convex():
    net = six_cycle()
    acts = enumerate_maximal_activations(net, range(6))
    uniform = [1.0 / len(acts)] * len(acts)
    bad = [0.3] * len(acts)
    with pytest.raises(ValueError, match="sum"):
        check_sigma_pair(net, range(6), bad, uniform, 1.0)
    with pytest.raises(ValueError, match="sum"):
        check_sigma_pair(net, range(6), uniform, bad, 1.0)


def test_weight_length_checked():
    net = six_cycle()
    with pytest.raises(ValueError, match="one entry per activation"):
        check_sigma_pair(net, range(6), [1.0], [1.0], 1.0)


def test_lpf_link_count_cap():
    net = build_conflict_sets(
        model="explicit", conflicts=[[] for _ in range(15)]
    )
    with pytest.raises(ValueError, match="cap"):
        lpf(net)
