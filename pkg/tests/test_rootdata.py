import pytest

from liecheck.rootdata import UnsupportedType, build_root_datum, parse_type, parse_weight

WEYL = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "G2": 12, "D4": 192, "F4": 1152}
POSITIVE = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "G2": 6, "D4": 12, "F4": 24}


@pytest.mark.parametrize("label", sorted(WEYL))
def test_orders_and_roots(label):
    d = build_root_datum(label)
    assert d.weyl_order == len(d.weyl_group) == WEYL[label]
    assert d.num_positive_roots == POSITIVE[label]
    assert d.length_gen_function().total() == WEYL[label]
    assert d.length_gen_function().top_degree == POSITIVE[label]
    assert d.longest_element.length == POSITIVE[label]


@pytest.mark.parametrize("label", sorted(WEYL))
def test_weyl_dimension_matches_orbit_sums(label):
    d = build_root_datum(label)
    rho = d.rho
    assert d.weyl_dimension(tuple(0 for _ in rho)) == 1
    # adjoint representation
    assert d.weyl_dimension(d.highest_root) == d.rank + 2 * d.num_positive_roots


def test_minuscule_weights():
    assert build_root_datum("A3").minuscule_weights() == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert build_root_datum("G2").minuscule_weights() == []
    assert build_root_datum("B3").minuscule_weights() == [(0, 0, 1)]
    assert build_root_datum("C3").minuscule_weights() == [(1, 0, 0)]
    assert build_root_datum("D4").minuscule_weights() == [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def test_stabilizers_and_lowest_weight():
    a2 = build_root_datum("A2")
    assert a2.stabilizer_order((1, 1)) == 1  # the highest root of A2 is rho, regular
    assert a2.stabilizer_order((1, 0)) == 2
    assert a2.lowest_weight((1, 0)) == (0, -1)
    assert sorted(a2.weyl_orbit((1, 0))) == sorted([(1, 0), (-1, 1), (0, -1)])


def test_parabolic_length_series():
    a2 = build_root_datum("A2")
    assert a2.length_gen_function([1]).coeffs == (1, 1, 1)
    assert a2.length_gen_function().coeffs == (1, 2, 2, 1)


def test_kostant_partition():
    a2 = build_root_datum("A2")
    assert a2.kostant_partition((1, 1)) == 2
    assert a2.kostant_partition((2, 2)) == 3
    assert a2.kostant_partition((-1, 0)) == 0


def test_parsing():
    assert parse_type("b3") == ("B", 3)
    assert parse_weight("1,0,2") == (1, 0, 2)
    for bad in ("A0", "B1", "G3", "A9", "X2"):
        with pytest.raises(UnsupportedType):
            build_root_datum(bad)
    with pytest.raises(ValueError):
        parse_weight("1,x")
