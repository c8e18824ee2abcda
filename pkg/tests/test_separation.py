import itertools
import random

import pytest

from boxkst.forbidden import find_ktt
from boxkst.graph import Graph, incidence_graph
from boxkst.poset import K22Present, dominance_poset
from boxkst.search import bruteforce_sepcert_check
from boxkst.separation import (
    SepCert, check_certificate, phi_certificate, poset_points_certificate, sepdim_upper_search,
)

from conftest import general_position_points, random_graph, random_k22free_config

TWO_EDGES = Graph.from_edges(4, [(0, 1), (2, 3)])
P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
K4 = Graph.from_edges(4, list(itertools.combinations(range(4), 2)))


def cert(*coords):
    return SepCert(len(coords[0]), {str(i): c for i, c in enumerate(coords)})


def test_examples():
    assert check_certificate(TWO_EDGES, cert((0,), (1,), (2,), (3,))) == (True, None)
    ok, bad = check_certificate(TWO_EDGES, cert((0,), (2,), (1,), (3,)))
    assert not ok and set(bad) == {(0, 1), (2, 3)}
    tri = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert check_certificate(tri, cert((0,), (0,), (0,)))[0]


def test_touching_counts_as_meeting():
    assert not check_certificate(TWO_EDGES, cert((0,), (1,), (1,), (2,)))[0]


def test_missing_vertex():
    with pytest.raises(KeyError):
        check_certificate(TWO_EDGES, SepCert(1, {"0": (0,)}))


def test_matches_bruteforce_and_symmetries():
    rng = random.Random(6)
    for _ in range(300):
        n = rng.randint(2, 9)
        d = rng.randint(1, 3)
        g = random_graph(rng, n, rng.random())
        c = SepCert(d, {str(v): tuple(rng.randint(0, 5) for _ in range(d)) for v in range(n)})
        ok = check_certificate(g, c)[0]
        assert ok == bruteforce_sepcert_check(g, c)[0]
        perm = rng.sample(range(d), d)
        swapped = SepCert(d, {k: tuple(v[i] for i in perm) for k, v in c.map.items()})
        assert check_certificate(g, swapped)[0] == ok


def test_search_examples():
    r = sepdim_upper_search(P4, 1, 4)
    assert r.found and r.exhaustive and check_certificate(P4, r.cert)[0]
    r = sepdim_upper_search(K4, 1, 4)
    assert not r.found and r.exhaustive
    r = sepdim_upper_search(K4, 2, 4)
    assert not r.found and r.exhaustive
    r = sepdim_upper_search(K4, 3, 4)
    assert r.found and check_certificate(K4, r.cert)[0]


def test_search_randomized_mode():
    g = Graph.from_edges(9, [(i, i + 1) for i in range(8)])
    r = sepdim_upper_search(g, 1, 9, restarts=20)
    assert not r.exhaustive
    assert r.found and check_certificate(g, r.cert)[0]


def test_identity_certificate_examples():
    g, c = poset_points_certificate([(0, 0), (1, 1)])
    assert g.edges() == [(0, 1)] and check_certificate(g, c)[0]
    with pytest.raises(K22Present):
        poset_points_certificate([(0, 0), (1, 1), (2, 2), (3, 3)])


def test_identity_certificate_random():
    rng = random.Random(10)
    accepted = 0
    for _ in range(400):
        pts = general_position_points(rng, 10, rng.randint(2, 3))
        g = dominance_poset(pts).comparability_graph()
        if find_ktt(g, 2) is not None:
            with pytest.raises(K22Present):
                poset_points_certificate(pts)
            continue
        g2, c = poset_points_certificate(pts)
        assert g2 == g and check_certificate(g, c) == (True, None)
        accepted += 1
    assert accepted > 20


def test_phi_certificate_random():
    rng = random.Random(13)
    for _ in range(30):
        cfg = random_k22free_config(rng, 15, 15)
        g, c = phi_certificate(cfg)
        assert g == incidence_graph(cfg)
        assert check_certificate(g, c) == (True, None)
        assert bruteforce_sepcert_check(g, c)[0]
