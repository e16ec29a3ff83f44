import itertools

import pytest

from secants.legit import (BLUE, RED, LegitError, LinearHypergraph,
                           generate_linear_hypergraph, two_phase_coloring,
                           verify_legitimate)


def test_disjoint_triples_hand_trace():
    hg = LinearHypergraph(3, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    col = two_phase_coloring(hg)
    assert [d.phase1_blue for d in col.diagnostics] == [3, 0, 3]
    assert col.targets == [3, 1, 2]
    assert [d.recolored for d in col.diagnostics] == [0, 1, 1]
    assert col.blue_counts == [3, 1, 2]
    ok, cert = verify_legitimate(hg, col)
    assert ok and cert is None


def test_two_edge_hand_trace():
    hg = LinearHypergraph(2, [[0, 1], [1, 2]])
    col = two_phase_coloring(hg)
    assert col.blue_counts == [2, 1]
    assert [d.recolored for d in col.diagnostics] == [0, 0]
    assert col.color[1] == BLUE and col.color[2] == RED


def test_single_edge():
    col = two_phase_coloring(LinearHypergraph(1, [[0]]))
    assert col.blue_counts == [1] and col.targets == [1]


def test_verify_rejects_identical_lists():
    hg = LinearHypergraph(2, [[0, 1], [2, 3]])
    ok, cert = verify_legitimate(hg, [BLUE, BLUE, BLUE, BLUE])
    assert not ok and cert == (1, 2)
    ok, cert = verify_legitimate(hg, [BLUE, BLUE, BLUE, RED])
    assert ok


def test_verify_requires_everything_colored():
    hg = LinearHypergraph(2, [[0, 1], [1, 2]])
    with pytest.raises(LegitError, match="uncolored"):
        verify_legitimate(hg, [BLUE, None, RED])
    with pytest.raises(LegitError, match="uncolored"):
        verify_legitimate(hg, [BLUE, 5, RED])


def test_verify_more_colors():
    hg = LinearHypergraph(2, [[0, 1], [2, 3]])
    ok, _ = verify_legitimate(hg, [0, 1, 2, 2], num_colors=3)
    assert ok
    ok, cert = verify_legitimate(hg, [0, 1, 1, 0], num_colors=3)
    assert not ok and cert == (1, 2)


def test_input_validation():
    with pytest.raises(LegitError, match="exactly n=2"):
        LinearHypergraph(2, [[0, 1]])
    with pytest.raises(LegitError, match="size"):
        LinearHypergraph(2, [[0, 1], [2]])          # "at most n" is rejected
    with pytest.raises(LegitError, match="more than one"):
        LinearHypergraph(3, [[0, 1, 2], [0, 1, 3], [4, 5, 6]])
    with pytest.raises(LegitError, match="repeats"):
        LinearHypergraph(2, [[0, 0], [1, 2]])


def test_targets_are_pairwise_distinct():
    for n in range(1, 80):
        targets = [n - pos // 2 if pos % 2 else pos // 2
                   for pos in range(1, n + 1)]
        assert len(set(targets)) == n
        odd = [t for pos, t in enumerate(targets, 1) if pos % 2]
        even = [t for pos, t in enumerate(targets, 1) if pos % 2 == 0]
        assert all(t > n // 2 for t in odd)
        assert all(t <= n // 2 for t in even)


@pytest.mark.parametrize("mode", ["pairwise", "sunflower", "mixed"])
def test_generator_contract(mode):
    for n in (1, 2, 3, 4, 7, 12, 25):
        for seed in range(6):
            hg = generate_linear_hypergraph(n, seed, mode)
            assert hg.n == n and len(hg.edges) == n
            assert all(len(e) == n for e in hg.edges)
            for a, b in itertools.combinations(hg.edges, 2):
                assert len(set(a) & set(b)) <= 1
            # determinism
            again = generate_linear_hypergraph(n, seed, mode)
            assert again.edges == hg.edges


def test_generator_modes_differ_and_sunflower_nests():
    a = generate_linear_hypergraph(14, 3, "pairwise")
    b = generate_linear_hypergraph(14, 3, "sunflower")
    assert a.edges != b.edges
    degree = {}
    for e in b.edges:
        for v in e:
            degree[v] = degree.get(v, 0) + 1
    assert max(degree.values()) >= 3
    # pairwise mode never exceeds degree 2
    degree_a = {}
    for e in a.edges:
        for v in e:
            degree_a[v] = degree_a.get(v, 0) + 1
    assert max(degree_a.values()) <= 2


def test_generator_rejects_bad_input():
    with pytest.raises(LegitError):
        generate_linear_hypergraph(0, 1)
    with pytest.raises(LegitError, match="mode"):
        generate_linear_hypergraph(3, 1, "clique")


@pytest.mark.parametrize("mode", ["pairwise", "sunflower", "mixed"])
def test_coloring_invariants_across_instances(mode):
    for n in (1, 2, 3, 5, 9, 16, 30):
        for seed in range(8):
            hg = generate_linear_hypergraph(n, seed, mode)
            col = two_phase_coloring(hg)
            assert col.blue_counts == col.targets
            assert len(set(col.blue_counts)) == n
            for d in col.diagnostics:
                assert d.feasible
                assert d.recolored <= d.captured + d.disjoint
            ok, cert = verify_legitimate(hg, col)
            assert ok, cert


def test_phase2_touches_only_private_vertices():
    for seed in range(10):
        hg = generate_linear_hypergraph(12, seed, "sunflower")
        # phase-1 only coloring: replay the first sweep
        color1 = [None] * hg.num_vertices
        for pos, e in enumerate(hg.edges, 1):
            paint = BLUE if pos % 2 else RED
            for v in e:
                if color1[v] is None:
                    color1[v] = paint
        col = two_phase_coloring(hg)
        degree = {}
        for e in hg.edges:
            for v in e:
                degree[v] = degree.get(v, 0) + 1
        changed = [v for v in range(hg.num_vertices) if col.color[v] != color1[v]]
        assert all(degree[v] == 1 for v in changed)
        assert len(changed) == sum(d.recolored for d in col.diagnostics)


def test_coloring_determinism_and_permutation():
    hg = generate_linear_hypergraph(15, 4, "mixed")
    c1 = two_phase_coloring(hg)
    c2 = two_phase_coloring(hg)
    assert c1.color == c2.color
    shuffled = hg.permuted(9)
    assert shuffled.edges != hg.edges
    assert sorted(map(sorted, shuffled.edges)) == sorted(map(sorted, hg.edges))
    c3 = two_phase_coloring(shuffled)
    assert verify_legitimate(shuffled, c3)[0]


def test_json_round_trip():
    hg = generate_linear_hypergraph(6, 2, "sunflower")
    doc = hg.to_json()
    again = LinearHypergraph.from_json(doc)
    assert again.edges == hg.edges and again.num_vertices == hg.num_vertices
