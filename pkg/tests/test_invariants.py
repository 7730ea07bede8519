from fractions import Fraction
import pytest # type: ignore[import]

from planesing.algebra import MultiPoly
from planesing.errors import InputError
from planesing.invariants import (
    default_budget_degree, delta_cd, gamma_ea_upper_bound, gamma_lower_bound, gamma_upper_bound,
    smooth_intersection_max,
)
from planesing.localring import fat_point_ideal, jet_ideal, LocalIdeal, tjurina_ideal
from planesing.resolution import invariants_from_tree, nu_s, resolve

x = MultiPoly.variable('x')
y = MultiPoly.variable('y')


def test_upper_bound() -> None:
    assert gamma_upper_bound(0) == 1
    assert gamma_upper_bound(4) == 25
    assert gamma_ea_upper_bound(2) == 9
    with pytest.raises(InputError):
        gamma_upper_bound(-1)

def test_upper_bound_of_records() -> None:
    node = invariants_from_tree(resolve(x ** 2 - y ** 2))
    assert gamma_upper_bound(node) == 4
    triple = invariants_from_tree(resolve(x ** 3 - x * y ** 2))
    assert gamma_upper_bound(triple) == 18

    quadruple = invariants_from_tree(resolve(x * y * (x - y) * (x + y)))
    assert quadruple.ordinary
    assert gamma_upper_bound(quadruple) == Fraction(256, 7)

    cusp = invariants_from_tree(resolve(x ** 2 - y ** 3))
    with pytest.raises(InputError):
        gamma_upper_bound(cusp)
    assert gamma_upper_bound(cusp.with_values(tau_es=2)) == 9

def test_delta_cd() -> None:
    cusp = x ** 2 - y ** 3
    j = tjurina_ideal(cusp)
    assert delta_cd(cusp, x, j) == 1
    assert delta_cd(cusp, y, j) == 1
    # the smooth branch meets the fat point in degree 1
    assert delta_cd(x ** 2 - y ** 2, x - y ** 2, fat_point_ideal((0, 0), 1)) == 1

def test_gamma_of_a_cusp() -> None:
    cusp = x ** 2 - y ** 3
    report = gamma_lower_bound(cusp, upper=Fraction(9))
    assert report.lower == 9
    assert report.exact
    assert report.witness is not None
    assert report.witness.intersection_number == 3
    assert report.witness.delta == 1

def test_gamma_of_ak() -> None:
    for k in range(1, 7):
        f = x ** 2 - y ** (k + 1)
        upper = gamma_upper_bound(k)
        report = gamma_lower_bound(f, upper=upper)
        assert report.lower == (k + 1) ** 2
        assert report.exact
    assert gamma_upper_bound(4) == 25

def test_gamma_of_ordinary_triple_point() -> None:
    f = x ** 3 - x * y ** 2
    report = gamma_lower_bound(f, upper=Fraction(18))
    assert report.lower == 18
    assert report.exact
    assert report.witness is not None
    assert report.witness.delta == 2

def test_gamma_at_a_point() -> None:
    f = (x - 1) ** 2 - (y - 2) ** 3
    report = gamma_lower_bound(f, point=(1, 2), upper=Fraction(9))
    assert report.lower == 9

def test_gamma_needs_tjurina_inside_scheme() -> None:
    with pytest.raises(InputError):
        gamma_lower_bound(x ** 2 - y ** 3, fat_point_ideal((0, 0), 3))

def test_gamma_needs_a_grid() -> None:
    with pytest.raises(InputError):
        gamma_lower_bound(x ** 2 - y ** 3, grid=[0])

def test_lower_stays_below_upper() -> None:
    f = x ** 2 * y - y ** 4
    report = gamma_lower_bound(f, budget_degree=2, grid=[1])
    assert report.witness is not None
    assert report.candidates > 0
    assert report.lower <= gamma_upper_bound(5)
    n = report.witness.intersection_degree
    assert report.lower <= (n + 1) ** 2

def test_smooth_intersection_max() -> None:
    grid = [1, -1, 2]
    contact = smooth_intersection_max(fat_point_ideal((0, 0), 3), grid=grid)
    assert contact.value == 3
    assert contact.cap == 3

    contact = smooth_intersection_max(LocalIdeal((0, 0), [x, y ** 4]), grid=grid)
    assert contact.value == 4
    assert contact.witness == x

    contact = smooth_intersection_max(LocalIdeal((0, 0), [x - y ** 2, y ** 3]), grid=grid)
    assert contact.value == 3

def test_default_budget_degree() -> None:
    m = jet_ideal(fat_point_ideal((0, 0), 1))
    f = x ** 2 - y ** 9
    nu = nu_s(resolve(f))
    assert default_budget_degree(f, m) == max(nu + 2, m.order + 1)
    assert default_budget_degree(f.translate((-1, 0)), m, (1, 0)) == max(nu + 2, m.order + 1)
    # tangents x = ζy leave the rationals
    assert default_budget_degree(x ** 3 - y ** 3, m) == m.order + 1
