import pytest

from k3orbifold.classification import (
    InadmissiblePairError,
    InvariantPair,
    Shape,
    TangentKind,
    admissible_pairs,
    fixed_locus,
    is_admissible,
    nearest_admissible,
    pair_violations,
    tangent_action,
)

# transcribed from the published classification table, column by column
TABLE = [
    (1, 1), (2, 0), (2, 2), (3, 1), (3, 3), (4, 2), (4, 4), (5, 1),
    (5, 3), (5, 5), (6, 0), (6, 2), (6, 4), (6, 6), (7, 1), (7, 3),
    (7, 5), (7, 7), (8, 2), (8, 4), (9, 1), (9, 3), (10, 0), (10, 2),
]


def test_admissible_pairs_match_table():
    pairs = admissible_pairs()
    assert len(pairs) == 24
    assert pairs == sorted(TABLE)
    assert InvariantPair(7, 7) in pairs
    assert (1, 0) not in pairs


@pytest.mark.parametrize("p, expected", [((6, 4), True), ((10, 4), False), ((0, 0), False), ((7, 7), True)])
def test_is_admissible(p, expected):
    assert is_admissible(InvariantPair(*p)) is expected
    assert is_admissible(p) is expected


def test_pairs_order_by_m_then_a():
    assert InvariantPair(2, 0) < InvariantPair(2, 2) < InvariantPair(3, 1)


@pytest.mark.parametrize(
    "p, n, k, g, chi",
    [((1, 1), 9, 5, 0, 21), ((5, 3), 5, 2, 1, 9), ((10, 2), 0, 0, 4, -6), ((6, 0), 4, 3, 3, 6)],
)
def test_fixed_locus_generic(p, n, k, g, chi):
    f = fixed_locus(p)
    assert f.shape is Shape.GENERIC
    assert (f.n, f.k, f.g, f.chi) == (n, k, g, chi)


def test_fixed_locus_three_points():
    f = fixed_locus((7, 7))
    assert f.shape is Shape.THREE_ISOLATED_POINTS
    assert (f.n, f.g, f.chi) == (3, None, 3)
    assert f.curve_genera == []


@pytest.mark.parametrize("p", admissible_pairs())
def test_fixed_locus_identities(p):
    f = fixed_locus(p)
    assert (p.m + p.a) % 2 == 0
    assert f.chi == 24 - 3 * p.m
    if p != (7, 7):
        assert min(f.n, f.k, f.g) >= 0
        assert f.n + 2 * f.k + 2 - 2 * f.g == 24 - 3 * p.m
        assert f.curve_genera == [0] * f.k + [f.g]


@pytest.mark.parametrize("p", [(1, 0), (10, 4), (0, 0), (11, 1), (3, 5)])
def test_fixed_locus_rejects(p):
    with pytest.raises(InadmissiblePairError):
        fixed_locus(p)


def test_violation_reasons():
    assert any("parity" in r for r in pair_violations((1, 0)))
    assert pair_violations((10, 4)) == ["not in the table of admissible pairs"]
    assert pair_violations((1, 1)) == []


def test_nearest():
    assert nearest_admissible((1, 0))[0] == (1, 1)
    assert all(is_admissible(p) for p in nearest_admissible((10, 4)))


def test_tangent_actions():
    assert tangent_action(TangentKind.ISOLATED_POINT).weights == (2, 2)
    assert tangent_action(TangentKind.ON_CURVE).weights == (1, 0)
    assert tangent_action("OnCurve").kind is TangentKind.ON_CURVE
    for kind in TangentKind:
        assert sum(tangent_action(kind).weights) % 3 == 1
