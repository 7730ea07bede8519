from fractions import Fraction
import pytest # type: ignore[import]

from planesing.algebra import linear_change, MultiPoly, poly_parse
from planesing.config import config
from planesing.errors import CommonComponentError, InputError, NonZeroDimensionalIdeal
from planesing.localring import (
    capped_colength, colength, contains, determinacy_bound, fat_point_ideal, iea_fix_ideal,
    ideal_sum, intersection_multiplicity, jet_matrix, JetIdeal, LocalIdeal, milnor_number,
    multiplicity, scheme_multiplicity, tilde_ia_ideal, tjurina_ideal, tjurina_number,
)

x = MultiPoly.variable('x')
y = MultiPoly.variable('y')

catalog = {
    'A1': x ** 2 - y ** 2,
    'A2': x ** 2 - y ** 3,
    'A3': x ** 2 - y ** 4,
    'A4': x ** 2 - y ** 5,
    'D4': x ** 3 - x * y ** 2,
    'D5': x ** 2 * y - y ** 4,
}


def test_jet_matrix() -> None:
    m = jet_matrix(LocalIdeal((0, 0), [x, y]), 2)
    # columns: 1, then x, y, then x^2, xy, y^2
    assert m.ncols == 6
    assert m.rank() == 5

    ideal = JetIdeal.from_generators([x ** 2, y ** 2], 3)
    assert set(ideal.staircase) == {(0, 0), (1, 0), (0, 1), (1, 1)}

def test_colength() -> None:
    assert colength(LocalIdeal((0, 0), [x, y])).colength == 1
    for k in range(1, 6):
        assert colength(LocalIdeal((0, 0), [x, y ** k])).colength == k
    certificate = colength(LocalIdeal((0, 0), [x ** 2, y ** 2]))
    assert certificate.colength == 4
    assert certificate.order == 3
    assert set(certificate.staircase) == {(0, 0), (1, 0), (0, 1), (1, 1)}

def test_colength_at_a_point() -> None:
    shifted = LocalIdeal((1, -2), [x - 1, (y + 2) ** 3])
    assert colength(shifted).colength == 3

    # a unit at the point
    assert colength(LocalIdeal((1, 0), [x, y])).colength == 0

def test_principal_ideal_is_not_zero_dimensional() -> None:
    with pytest.raises(NonZeroDimensionalIdeal):
        colength(LocalIdeal((0, 0), [x ** 2 - y ** 3]))

    with pytest.raises(NonZeroDimensionalIdeal):
        colength(LocalIdeal((0, 0), [x * (x - y), x * y ** 2]))

def test_capped_colength() -> None:
    assert capped_colength(LocalIdeal((0, 0), [x ** 2 - y ** 3]), 4) == 7
    assert capped_colength(LocalIdeal((0, 0), [x, y ** 2]), 8) == 2

def test_jet_cap_is_configurable() -> None:
    config.set('planesing.localring.jet_cap', 4)
    try:
        with pytest.raises(NonZeroDimensionalIdeal):
            colength(LocalIdeal((0, 0), [x, y ** 9]))
    finally:
        config.reset()
    assert colength(LocalIdeal((0, 0), [x, y ** 9])).colength == 9

def test_tjurina_and_milnor() -> None:
    assert tjurina_number(catalog['A1']) == 1
    for k in range(1, 9):
        assert tjurina_number(x ** 2 - y ** (k + 1)) == k
        assert milnor_number(x ** 2 - y ** (k + 1)) == k
    assert tjurina_number(catalog['D4']) == 4
    assert milnor_number(catalog['D5']) == 5
    assert determinacy_bound(catalog['A2']) == 3

def test_tjurina_at_most_milnor() -> None:
    # x^5 + y^5 + x^2 y^2 is not quasihomogeneous
    f = x ** 5 + y ** 5 + x ** 2 * y ** 2
    assert tjurina_number(f) <= milnor_number(f)
    for f in catalog.values():
        assert tjurina_number(f) == milnor_number(f)

def test_tjurina_requires_singular_point() -> None:
    with pytest.raises(InputError):
        tjurina_ideal(x - y ** 2)
    with pytest.raises(InputError):
        tjurina_ideal(x ** 2 - y ** 3, (1, 1))

def test_tjurina_at_shifted_point() -> None:
    f = (x - 2) ** 2 - (y - Fraction(1, 2)) ** 3
    assert tjurina_number(f, (2, Fraction(1, 2))) == 2

def test_iea_fix_colength() -> None:
    assert colength(iea_fix_ideal(catalog['A1'])).colength == 3
    assert colength(iea_fix_ideal(catalog['A2'])).colength == 4
    assert colength(iea_fix_ideal(catalog['A3'])).colength == 5
    for name, f in catalog.items():
        assert colength(iea_fix_ideal(f)).colength == tjurina_number(f) + 2, name

def test_fat_point() -> None:
    for m in range(1, 5):
        assert colength(fat_point_ideal((3, 4), m)).colength == m * (m + 1) // 2
    with pytest.raises(InputError):
        fat_point_ideal((0, 0), 0)

def test_tilde_ia() -> None:
    f = x ** 2 + y ** 2
    ideal = tilde_ia_ideal(f)
    assert colength(ideal).colength == 3
    for g in (x ** 2, x * y, y ** 2):
        assert contains(ideal, g)
    assert not contains(ideal, x)

def test_tilde_ia_solving_order() -> None:
    for f in catalog.values():
        mu = milnor_number(f)
        low = colength(tilde_ia_ideal(f, order=mu + 2)).colength
        high = colength(tilde_ia_ideal(f, order=mu + 4)).colength
        assert low == high

def test_tilde_ia_coordinate_invariance() -> None:
    matrix = [[2, 1], [1, 1]]
    for f in (catalog['A2'], catalog['A3'], catalog['D4']):
        moved = linear_change(f, matrix)
        assert colength(tilde_ia_ideal(moved)).colength == colength(tilde_ia_ideal(f)).colength
        assert tjurina_number(moved) == tjurina_number(f)

def test_tilde_ia_deformation_keeps_tau() -> None:
    f = catalog['A3']
    ideal = tilde_ia_ideal(f)
    g = next(h for h in ideal.generators if h != f)
    for t in (Fraction(1, 3), Fraction(-2, 7)):
        deformed = f + g.scale(t)
        assert tjurina_number(deformed) == tjurina_number(f)

def test_intersection_multiplicity() -> None:
    cusp = catalog['A2']
    assert intersection_multiplicity(cusp, x) == 3
    assert intersection_multiplicity(cusp, y) == 2
    assert intersection_multiplicity(cusp, x ** 3 - y ** 2) == 4
    assert intersection_multiplicity(x ** 3 - y ** 2, cusp) == 4
    assert intersection_multiplicity(cusp, x - 1) == 0

    with pytest.raises(CommonComponentError):
        intersection_multiplicity(x * (x - y), x * y)

def test_intersection_at_least_product_of_multiplicities() -> None:
    pairs = [
        (catalog['A1'], catalog['A2']),
        (catalog['D4'], y),
        (catalog['A2'], x ** 2 - 2 * y ** 3),
    ]
    for f, g in pairs:
        assert intersection_multiplicity(f, g) >= multiplicity(f) * multiplicity(g)
    # distinct tangent cones
    assert intersection_multiplicity(catalog['D4'], y - 2 * x) == 3
    assert intersection_multiplicity(x ** 2 - y ** 2, x - 3 * y) == 2
    # shared tangent
    assert intersection_multiplicity(catalog['A2'], x) > multiplicity(catalog['A2'])

def test_colength_below_intersection_with_tjurina_elements() -> None:
    for name, f in catalog.items():
        j = tjurina_ideal(f)
        tau = colength(j).colength
        for g in (f.diff('x'), f.diff('y'), f.diff('x') + f.diff('y').scale(3)):
            if g.is_zero():
                continue
            try:
                assert tau < intersection_multiplicity(f, g), name
            except CommonComponentError:
                continue

def test_multiplicity() -> None:
    assert multiplicity(catalog['A2']) == 2
    assert multiplicity(x - y ** 2) == 1
    assert multiplicity(x ** 3 - y ** 3) == 3
    assert multiplicity(x ** 2 - y ** 3, (1, 1)) == 0

def test_scheme_multiplicity_and_sums() -> None:
    assert scheme_multiplicity(fat_point_ideal((0, 0), 3)) == 3
    assert scheme_multiplicity(tjurina_ideal(catalog['A2'])) == 1
    summed = ideal_sum(LocalIdeal((0, 0), [x ** 2, y ** 2]), [x * y])
    assert summed.colength == 3
