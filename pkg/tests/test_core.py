import pytest
from hypothesis import given

from floordiagrams.core import DiagramError, FloorDiagram, Partition, diagram

from conftest import small_diagrams

EXAMPLE = diagram(4, [(1, 2, 1), (2, 3, 1), (2, 3, 1), (3, 4, 2)])


def test_divergence_example_diagram():
    assert [EXAMPLE.divergence(v) for v in range(1, 5)] == [1, 1, 0, -2]


def test_divergence_single_vertex():
    assert diagram(1).divergence(1) == 0


def test_divergence_weighted_chain():
    chain = diagram(3, [(1, 2, 1), (2, 3, 2)])
    assert chain.divergence(2) == 1


def test_divergence_out_of_range():
    with pytest.raises(DiagramError):
        EXAMPLE.divergence(5)
    with pytest.raises(DiagramError):
        EXAMPLE.divergence(0)


def test_classify_example():
    shape = EXAMPLE.classify()
    assert (shape.components, shape.degree, shape.genus, shape.cogenus) == (1, 4, 1, 2)
    assert shape.connected


def test_classify_single_vertex():
    shape = diagram(1).classify()
    assert (shape.components, shape.degree, shape.genus, shape.cogenus) == (1, 1, 0, 0)


def test_classify_two_isolated_vertices():
    shape = diagram(2).classify()
    assert shape.components == 2
    assert shape.cogenus == 1
    assert not shape.connected


def test_cogenus_depends_only_on_component_data():
    # one edge on {1,2} next to three isolated vertices, in two placements
    left = diagram(5, [(1, 2, 1)])
    right = diagram(5, [(4, 5, 1)])
    assert left.classify().cogenus == right.classify().cogenus


def test_multiplicity():
    assert EXAMPLE.multiplicity() == 4
    assert diagram(3, [(1, 2, 1), (2, 3, 1)]).multiplicity() == 1
    assert diagram(3, [(1, 2, 1), (2, 3, 2)]).multiplicity() == 4
    assert diagram(1).multiplicity() == 1


@pytest.mark.parametrize(
    "d,edges",
    [
        (0, []),
        (2, [(1, 1, 1)]),      # loop
        (2, [(2, 1, 1)]),      # backward
        (2, [(1, 2, 0)]),      # zero weight
        (3, [(1, 2, 1), (1, 3, 1)]),  # divergence 2 at vertex 1
        (2, [(1, 3, 1)]),      # target out of range
    ],
)
def test_validation_rejects(d, edges):
    with pytest.raises(DiagramError):
        diagram(d, edges)


def test_degree_one_is_the_unique_valid_degree_one_diagram():
    assert diagram(1).classify().genus == 0
    with pytest.raises(DiagramError):
        diagram(1, [(1, 1, 1)])


def test_text_round_trip():
    text = EXAMPLE.text()
    assert text == "d=4; edges=(1,2,1);(2,3,1);(2,3,1);(3,4,2)"
    assert FloorDiagram.from_text(text) == EXAMPLE
    assert FloorDiagram.from_text(diagram(1).text()) == diagram(1)


def test_json_round_trip():
    assert FloorDiagram.from_json(EXAMPLE.to_json()) == EXAMPLE


def test_edges_stored_sorted():
    a = diagram(3, [(2, 3, 1), (1, 2, 1)])
    b = diagram(3, [(1, 2, 1), (2, 3, 1)])
    assert a == b
    assert a.edges == ((1, 2, 1), (2, 3, 1))


def test_from_text_rejects_garbage():
    with pytest.raises(DiagramError):
        FloorDiagram.from_text("edges=(1,2,1)")
    with pytest.raises(DiagramError):
        FloorDiagram.from_json('{"edges": []}')


@given(small_diagrams())
def test_divergences_sum_to_zero(diag):
    assert sum(diag.divergence(v) for v in range(1, diag.d + 1)) == 0


@given(small_diagrams())
def test_divergence_budgets_sum_to_degree(diag):
    assert sum(1 - diag.divergence(v) for v in range(1, diag.d + 1)) == diag.d


@given(small_diagrams())
def test_cut_crossing_weight_bound(diag):
    for q in range(2, diag.d + 1):
        crossing = sum(w for s, t, w in diag.edges if s < q <= t)
        assert crossing <= q - 1


@given(small_diagrams())
def test_text_round_trip_property(diag):
    assert FloorDiagram.from_text(diag.text()) == diag
    assert FloorDiagram.from_json(diag.to_json()) == diag


def test_partition_basics():
    p = Partition((3, 2, 2, 1))
    assert p.size == 8
    assert p.length == 4
    assert p.count(2) == 2
    assert p.distinct_orderings() == 12
    assert Partition(()).distinct_orderings() == 1
    assert str(Partition.parse("2,1")) == "2,1"
    assert Partition.parse("") == Partition(())


def test_partition_rejects_bad_input():
    with pytest.raises(DiagramError):
        Partition((1, 2))
    with pytest.raises(DiagramError):
        Partition((0,))
