import itertools

import pytest

from floordiagrams.core import DiagramError, FloorDiagram
from floordiagrams.enumeration import (
    DiagramQuery,
    count_connected,
    count_filtered,
    enumerate_diagrams,
)


def prufer_tree(seq, d):
    """Independent tree construction from a Pruefer sequence."""
    degree = [1] * (d + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    seq = list(seq)
    for v in seq:
        for leaf in range(1, d + 1):
            if degree[leaf] == 1:
                edges.append(tuple(sorted((leaf, v))))
                degree[leaf] -= 1
                degree[v] -= 1
                break
    last = [v for v in range(1, d + 1) if degree[v] == 1]
    edges.append(tuple(sorted(last)))
    return edges


def brute_force_genus0_count(d):
    """All (tree, weight assignment) pairs with divergence <= 1 everywhere."""
    if d == 1:
        return 1
    total = 0
    for seq in itertools.product(range(1, d + 1), repeat=d - 2):
        tree = prufer_tree(seq, d)
        for weights in itertools.product(range(1, d), repeat=d - 1):
            ok = True
            for v in range(1, d + 1):
                div = sum(
                    w if a == v else -w
                    for (a, b), w in zip(tree, weights)
                    if v in (a, b)
                )
                if div > 1:
                    ok = False
                    break
            if ok:
                total += 1
    return total


def test_enumerate_d3_genus0():
    found = list(enumerate_diagrams(DiagramQuery(3, genus=0)))
    assert len(found) == 3
    assert all(diag.classify().genus == 0 and diag.connected for diag in found)


def test_enumerate_d4_genus0_cayley():
    assert count_connected(4, 0) == 16


def test_enumerate_d1():
    found = list(enumerate_diagrams(DiagramQuery(1, genus=0)))
    assert found == [FloorDiagram(1, ())]


@pytest.mark.parametrize("d,g,expect", [(3, 1, 1), (4, 1, 13), (4, 2, 5), (4, 3, 1)])
def test_connected_counts_match_published_values(d, g, expect):
    assert count_connected(d, g) == expect


def test_count_connected_5_0_against_brute_force():
    brute = brute_force_genus0_count(5)
    assert count_connected(5, 0) == brute == 125


def test_count_connected_4_1_against_independent_check():
    # every d=4 genus-1 edge multiset, by direct filtering of all 4-edge sets
    universe = [(s, t) for s in range(1, 4) for t in range(s + 1, 5)]
    found = set()
    for pairs in itertools.combinations_with_replacement(universe, 4):
        for weights in itertools.product(range(1, 4), repeat=4):
            edges = tuple(sorted((s, t, w) for (s, t), w in zip(pairs, weights)))
            try:
                diag = FloorDiagram(4, edges)
            except DiagramError:
                continue
            shape = diag.classify()
            if shape.connected and shape.genus == 1:
                found.add(edges)
    assert len(found) == count_connected(4, 1) == 13


def test_filtered_counts_odd():
    assert [count_filtered(d, 0, "odd") for d in range(1, 6)] == [1, 1, 2, 8, 46]


def test_filtered_counts_simple():
    assert [count_filtered(d, 0, "simple") for d in range(1, 6)] == [1, 1, 2, 7, 36]


def test_filtered_heavy_edge_is_factorial():
    assert count_filtered(5, 0, "has-weight=4") == 6  # (5-2)!


def test_chain_filter_count():
    # diagrams containing a -> a+1 -> a+2, weight 1: (b+1) d^(d-b-2)
    assert count_filtered(5, 0, "contains=(2,3,1);(3,4,1)") == 3 * 5


def test_max_weight_filter():
    assert count_filtered(4, 0, "max-weight=1") == count_filtered(4, 0, "simple")


def test_unknown_filter_rejected():
    with pytest.raises(DiagramError):
        count_filtered(3, 0, "bogus")


def test_stream_is_sorted_unique_and_valid():
    seen = set()
    previous = None
    for diag in enumerate_diagrams(DiagramQuery(4, genus=1)):
        text = diag.text()
        assert text not in seen
        seen.add(text)
        if previous is not None:
            assert previous < text
        previous = text
        FloorDiagram.from_text(text)  # re-validate


def test_stream_is_deterministic():
    first = [d.text() for d in enumerate_diagrams(DiagramQuery(4, genus=0))]
    second = [d.text() for d in enumerate_diagrams(DiagramQuery(4, genus=0))]
    assert first == second


def test_cogenus_query_includes_disconnected():
    found = list(enumerate_diagrams(DiagramQuery(2, cogenus=1)))
    assert len(found) == 1
    assert not found[0].connected
    assert list(enumerate_diagrams(DiagramQuery(2, cogenus=1, connected=True))) == []


def test_cogenus_zero_is_the_smooth_diagram():
    found = list(enumerate_diagrams(DiagramQuery(4, cogenus=0)))
    assert len(found) == 1
    assert found[0].classify().genus == 3


def test_total_family_is_finite():
    total = sum(count_connected(4, g) for g in range(0, 8))
    assert total == 16 + 13 + 5 + 1


def test_query_validation():
    with pytest.raises(DiagramError):
        DiagramQuery(3)
    with pytest.raises(DiagramError):
        DiagramQuery(3, genus=0, cogenus=1)
    with pytest.raises(DiagramError):
        DiagramQuery(0, genus=0)
    with pytest.raises(DiagramError):
        DiagramQuery(3, genus=-1)
    with pytest.raises(DiagramError):
        DiagramQuery(3, genus=0, connected=False)


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("FLOORDIAGRAMS_CACHE_DIR", str(tmp_path))
    query = DiagramQuery(4, genus=2)
    first = [d.text() for d in enumerate_diagrams(query)]
    manifests = list(tmp_path.glob("*.manifest.json"))
    assert manifests, "cache manifest should be written"
    second = [d.text() for d in enumerate_diagrams(query)]
    assert first == second


def test_disk_cache_rejects_corruption(tmp_path, monkeypatch):
    monkeypatch.setenv("FLOORDIAGRAMS_CACHE_DIR", str(tmp_path))
    query = DiagramQuery(3, genus=0)
    first = [d.text() for d in enumerate_diagrams(query)]
    payload = next(tmp_path.glob("*.jsonl"))
    payload.write_text(payload.read_text() + "\nd=1; edges=")
    again = [d.text() for d in enumerate_diagrams(query)]
    assert again == first
