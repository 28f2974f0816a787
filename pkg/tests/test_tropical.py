from fractions import Fraction

import pytest

from floordiagrams.core import DiagramError, Partition, diagram
from floordiagrams.enumeration import DiagramQuery, enumerate_diagrams
from floordiagrams.markings import list_markings
from floordiagrams.render import diagram_svg, marking_svg, render_svg, sketch_svg
from floordiagrams.tropical import (
    StretchedConfig,
    canonical_marking,
    extract_marking,
    perturb_elevator,
    reconstruct,
    stretched_config,
    verify_curve,
)

P = Partition
EXAMPLE = diagram(4, [(1, 2, 1), (2, 3, 1), (2, 3, 1), (3, 4, 2)])


def ordinary_markings(diag):
    return list_markings(diag, P(()), P.ones(diag.d))


def test_config_sizes_and_inequalities():
    for d, g in [(1, 0), (3, 0), (4, 1)]:
        cfg = stretched_config(d, g, 0)
        assert len(cfg.points) == 3 * d - 1 + g
    cfg = stretched_config(3, 0, 0)
    xs = [p[0] for p in cfg.points]
    ys = [p[1] for p in cfg.points]
    factor = 3**3 + 3
    assert min(b - a for a, b in zip(ys, ys[1:])) > factor * (xs[-1] - xs[0])


def test_config_determinism_and_seed_sensitivity():
    assert stretched_config(3, 0, 7) == stretched_config(3, 0, 7)
    assert stretched_config(3, 0, 7) != stretched_config(3, 0, 8)


def test_config_validation():
    with pytest.raises(DiagramError):
        StretchedConfig(2, 0, ((Fraction(1), Fraction(1)),))
    with pytest.raises(DiagramError):
        StretchedConfig(
            1,
            0,
            ((Fraction(1), Fraction(1)), (Fraction(2), Fraction(2))),
        )


def test_nine_rational_cubic_sketches():
    cfg = stretched_config(3, 0, 0)
    sketches = []
    for diag_ in enumerate_diagrams(DiagramQuery(3, genus=0)):
        for order in ordinary_markings(diag_):
            sketch = reconstruct(diag_, order, cfg)
            assert verify_curve(sketch, 3, 0).ok
            sketches.append(sketch)
    assert len(sketches) == 9
    skeletons = {
        tuple(
            (e.upper_floor, e.lower_floor, e.weight, sketch.marking.index(e.label))
            for e in sketch.elevators
        )
        for sketch in sketches
    }
    assert len(skeletons) == 9  # reconstruction is injective on markings


def test_single_line_sketch():
    cfg = stretched_config(1, 0, 0)
    sketch = reconstruct(diagram(1), ("v1", "s1w1#0"), cfg)
    assert len(sketch.floors) == 1
    assert not [e for e in sketch.elevators if e.lower_floor is not None]
    assert verify_curve(sketch, 1, 0).ok


def test_weighted_elevator_sketch():
    cfg = stretched_config(4, 1, 0)
    order = ordinary_markings(EXAMPLE)[0]
    sketch = reconstruct(EXAMPLE, order, cfg)
    assert verify_curve(sketch, 4, 1).ok
    assert len(sketch.floors) == 4
    bounded = [e for e in sketch.elevators if e.lower_floor is not None]
    assert sorted(e.weight for e in bounded) == [1, 1, 1, 2]


def test_round_trip_markings():
    for d, g in [(1, 0), (2, 0), (3, 0), (3, 1)]:
        cfg = stretched_config(d, g, 3)
        for diag_ in enumerate_diagrams(DiagramQuery(d, genus=g)):
            for order in ordinary_markings(diag_):
                sketch = reconstruct(diag_, order, cfg)
                diag_back, order_back = extract_marking(sketch)
                assert diag_back == diag_
                assert order_back == canonical_marking(diag_, order)


def test_fault_injection_fails_balancing():
    cfg = stretched_config(3, 0, 0)
    diag_ = diagram(3, [(1, 2, 1), (2, 3, 1)])
    sketch = reconstruct(diag_, ordinary_markings(diag_)[0], cfg)
    bounded_index = next(
        i for i, e in enumerate(sketch.elevators) if e.lower_floor is not None
    )
    bad = perturb_elevator(sketch, bounded_index, +1)
    report = verify_curve(bad, 3, 0)
    assert not report.ok
    assert any("balancing" in c.name for c in report.failures())


def test_reconstruct_rejects_mismatched_inputs():
    cfg = stretched_config(3, 0, 0)
    diag_ = diagram(3, [(1, 2, 1), (2, 3, 1)])
    with pytest.raises(DiagramError):
        reconstruct(diagram(2, [(1, 2, 1)]), ("v1", "v2"), cfg)
    order = ordinary_markings(diag_)[0]
    shuffled = (order[1], order[0]) + order[2:]
    with pytest.raises(DiagramError):
        reconstruct(diag_, shuffled, cfg)
    with pytest.raises(DiagramError):
        reconstruct(diag_, order[:-1], cfg)


def test_marking_validation_catches_constraint_violations():
    diag_ = diagram(3, [(1, 2, 1), (2, 3, 1)])
    # sink of floor 2 placed before floor 2
    bad = ("v1", "s2w1#0", "v2", "e1-2w1#0", "v3", "e2-3w1#0", "s3w1#0", "s3w1#1")
    with pytest.raises(DiagramError):
        reconstruct(diag_, bad, stretched_config(3, 0, 0))


def test_svg_output_is_deterministic(tmp_path):
    first = diagram_svg(EXAMPLE)
    second = diagram_svg(EXAMPLE)
    assert first == second
    assert first.count("<circle") == 4
    assert ">2</text>" in first

    order = ordinary_markings(EXAMPLE)[0]
    marked = marking_svg(EXAMPLE, order)
    assert marked.count("<circle") == 12

    cfg = stretched_config(4, 1, 0)
    sketch = reconstruct(EXAMPLE, order, cfg)
    art = sketch_svg(sketch)
    assert art == sketch_svg(reconstruct(EXAMPLE, order, cfg))
    assert art.count("<line") == len(sketch.elevators)

    out = render_svg(EXAMPLE, tmp_path / "a.svg")
    assert out.read_text().startswith("<svg")
    render_svg(sketch, tmp_path / "b.svg")
    render_svg(EXAMPLE, tmp_path / "c.svg", order=order)
    with pytest.raises(TypeError):
        render_svg(42, tmp_path / "d.svg")


def test_gallery_svgs_reproduce_appendix_count(tmp_path):
    cfg = stretched_config(3, 0, 0)
    count = 0
    for diag_ in enumerate_diagrams(DiagramQuery(3, genus=0)):
        for order in ordinary_markings(diag_):
            sketch = reconstruct(diag_, order, cfg)
            count += 1
            render_svg(sketch, tmp_path / f"curve-{count:03d}.svg")
    assert count == 9
    assert len(list(tmp_path.glob("curve-*.svg"))) == 9
