import pytest

from floordiagrams.core import DiagramError, Partition
from floordiagrams.invariants import (
    closed_form_gmax,
    closed_form_uninodal,
    collinear_triple,
    gw,
    kontsevich_oracle,
    relative_gw,
    severi,
    severi_split_oracle,
    tangency_at_point,
    welschinger,
)
from floordiagrams.tables import gw_table, relative_table, severi_table

P = Partition


def test_gw_small_values():
    assert gw(3, 0) == 12
    assert gw(4, 0) == 620
    assert gw(4, 1) == 225
    assert gw(4, 2) == 27
    assert gw(4, 3) == 1
    assert gw(2, 1) == 0


def test_gw_table_through_degree_four():
    for (d, g), expect in gw_table().items():
        if d <= 4:
            assert gw(d, g) == expect, (d, g)


def test_gw_rejects_bad_input():
    with pytest.raises(DiagramError):
        gw(0, 0)
    with pytest.raises(DiagramError):
        gw(3, -1)


def test_severi_values():
    assert severi(4, 4) == 666
    assert severi(3, 2) == 21
    for d in range(1, 5):
        assert severi(d, 0) == 1


def test_severi_table_through_degree_four():
    for (d, delta), expect in severi_table().items():
        if d <= 4:
            assert severi(d, delta) == expect, (d, delta)


def test_severi_equals_gw_for_low_cogenus():
    for d in range(2, 7):
        for delta in range(0, min(d - 1, 5)):
            g = (d - 1) * (d - 2) // 2 - delta
            assert severi(d, delta) == gw(d, g), (d, delta)


def test_split_oracle_examples():
    assert severi_split_oracle(4, 4) == 666
    assert severi_split_oracle(3, 2) == 21
    assert severi_split_oracle(5, 0) == 1


def test_split_oracle_matches_direct_enumeration():
    for d in range(1, 5):
        for delta in range(0, 5):
            assert severi(d, delta) == severi_split_oracle(d, delta), (d, delta)


def test_relative_figure_totals():
    ref = relative_table()
    for (lam_text, rho_text), expect in zip(ref["columns"], ref["totals"]):
        lam, rho = P.parse(lam_text), P.parse(rho_text)
        assert relative_gw(3, 0, lam, rho) == expect


def test_relative_genus1_values():
    assert relative_gw(3, 1, P((1,)), P((2,))) == 2
    assert relative_gw(3, 1, P(()), P((2, 1))) == 4
    assert relative_gw(3, 1, P(()), P((3,))) == 3


def test_relative_conics():
    assert relative_gw(2, 0, P(()), P((2,))) == 2
    assert relative_gw(2, 0, P((2,)), P(())) == 1
    assert relative_gw(2, 0, P((1, 1)), P(())) == 1


def test_relative_reduces_to_gw():
    for d in range(1, 5):
        for g in (0, 1):
            base = gw(d, g)
            assert relative_gw(d, g, P(()), P.ones(d)) == base
            assert relative_gw(d, g, P((1,)), P.ones(d - 1)) == base
            if d >= 2:
                assert relative_gw(d, g, P((1, 1)), P.ones(d - 2)) == base


def test_relative_fixed_vs_free_tangency():
    for d in range(1, 6):
        assert relative_gw(d, 0, P(()), P((d,))) == d * relative_gw(
            d, 0, P((d,)), P(())
        )


def test_relative_matches_max_tangency_sequence():
    from floordiagrams.sequences import max_tangency_fixed

    for d in range(1, 6):
        assert relative_gw(d, 0, P((d,)), P(())) == max_tangency_fixed(d)


def test_relative_rejects_size_mismatch():
    with pytest.raises(DiagramError):
        relative_gw(3, 0, P((2,)), P((2,)))


def test_welschinger():
    assert welschinger(1) == 1
    assert welschinger(3) == 8
    assert welschinger(4) == 240


def test_kontsevich():
    assert kontsevich_oracle(2) == 1
    assert kontsevich_oracle(4) == 620
    assert kontsevich_oracle(5) == 87304
    for d in range(1, 6):
        assert kontsevich_oracle(d) == gw(d, 0)


def test_closed_form_gmax():
    assert closed_form_gmax(3, P(()), P((2, 1))) == 4
    for d in range(1, 6):
        assert closed_form_gmax(d, P(()), P.ones(d)) == 1
    assert closed_form_gmax(3, P((3,)), P(())) == 1  # empty product


def test_closed_form_gmax_matches_engine():
    for d in (2, 3, 4):
        gmax = (d - 1) * (d - 2) // 2
        for lam, rho in [(P(()), P((d,))), (P((1,)), P.ones(d - 1))]:
            assert closed_form_gmax(d, lam, rho) == relative_gw(d, gmax, lam, rho)


def test_closed_form_uninodal():
    for d in (3, 4, 5, 6):
        assert closed_form_uninodal(d, P(()), P.ones(d)) == 3 * (d - 1) ** 2
    assert closed_form_uninodal(4, P((2, 1, 1)), P(())) == 22


def test_closed_form_uninodal_matches_engine():
    cases = [
        (3, P(()), P((2, 1))),
        (3, P((1,)), P((2,))),
        (4, P((2, 1, 1)), P(())),
        (4, P(()), P.ones(4)),
    ]
    for d, lam, rho in cases:
        g = (d - 1) * (d - 2) // 2 - 1
        assert closed_form_uninodal(d, lam, rho) == relative_gw(d, g, lam, rho)


def test_collinear_triple():
    assert collinear_triple(3, 0) == 10
    assert collinear_triple(4, 0) == 620 - 3 * 12
    assert collinear_triple(3, 1) == 1


def test_collinear_triple_matches_engine():
    for d, g in [(3, 0), (3, 1), (4, 0), (4, 1)]:
        assert collinear_triple(d, g) == relative_gw(d, g, P.ones(3), P.ones(d - 3))


def test_tangency_at_point():
    assert tangency_at_point(3, 0, 2) == 10
    assert tangency_at_point(3, 1, 2) == 1
    for d, g in [(3, 0), (4, 0), (4, 1)]:
        assert tangency_at_point(d, g, 1) == gw(d, g)


def test_tangency_at_point_rejects_bad_k():
    with pytest.raises(DiagramError):
        tangency_at_point(3, 0, 3)
    with pytest.raises(DiagramError):
        tangency_at_point(3, 0, 0)
