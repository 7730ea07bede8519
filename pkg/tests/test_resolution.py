from fractions import Fraction
import pytest # type: ignore[import]

from planesing.algebra import MultiPoly
from planesing.catalog import normal_form
from planesing.errors import InputError, IrrationalBranchPoint
from planesing.localring import intersection_multiplicity, milnor_number
from planesing.resolution import (
    branch_intersections, branch_multiplicities, essential_subtree, invariants_from_tree,
    nu_s, nu_s_bounds, resolve, SingularityRecord,
)

x = MultiPoly.variable('x')
y = MultiPoly.variable('y')


def _enriques_holds(f: MultiPoly) -> None:
    t = resolve(f)
    for n in t.nodes:
        assert n.mhat == n.m + sum(t.node(q).mhat for q in n.proximate_to)
        load = sum(p.m for p in t.nodes if n.id in p.proximate_to)
        assert n.m >= load


def test_node() -> None:
    t = resolve(x ** 2 - y ** 2)
    assert t.root.m == 2
    assert len(t.leaves()) == 2
    assert all(t.node(leaf).level == 1 for leaf in t.leaves())
    assert essential_subtree(t) == frozenset([t.root.id])

    record = invariants_from_tree(t)
    assert (record.delta, record.mu, record.r, record.deg_xs, record.nu_s) == (1, 1, 2, 3, 1)
    assert record.ordinary
    assert record.tau_es == 1

def test_cusp() -> None:
    t = resolve(x ** 2 - y ** 3)
    assert [n.m for n in t.nodes[:3]] == [2, 1, 1]
    assert [n.mhat for n in t.nodes[:3]] == [2, 3, 6]
    q2 = t.node(2)
    assert q2.satellite
    assert set(q2.proximate_to) == {0, 1}
    assert essential_subtree(t) == frozenset([0, 1, 2])
    assert len(t.branches()) == 1

    record = invariants_from_tree(t)
    assert (record.delta, record.mu, record.r, record.deg_xs, record.nu_s) == (1, 2, 1, 5, 2)
    assert record.tau == 2
    assert not record.ordinary

def test_ordinary_triple_point() -> None:
    t = resolve(x ** 3 - x * y ** 2)
    assert t.root.m == 3
    assert len(t.leaves()) == 3
    assert essential_subtree(t) == frozenset([t.root.id])

    record = invariants_from_tree(t)
    assert (record.delta, record.mu, record.r, record.deg_xs) == (3, 4, 3, 6)
    assert record.ordinary
    assert record.tau_es == 4
    assert branch_intersections(t) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]

def test_irrational_tangents() -> None:
    with pytest.raises(IrrationalBranchPoint) as info:
        resolve(x ** 3 - y ** 3)
    assert info.value.polynomial.degree() == 2

def test_tacnode() -> None:
    f = (x - y ** 2) * (x + y ** 2)
    t = resolve(f)
    assert len(t.branches()) == 2
    assert branch_intersections(t) == [[0, 2], [2, 0]]
    record = invariants_from_tree(t)
    assert record.mu == 3
    assert record.nu_s == 3
    _enriques_holds(f)

def test_branch_multiplicities_add_up() -> None:
    f = (x ** 2 - y ** 3) * (x - y)
    t = resolve(f)
    total = {n.id: 0 for n in t.nodes}
    for mult in branch_multiplicities(t):
        for q, m in mult.items():
            total[q] += m
    assert all(total[n.id] == n.m for n in t.nodes)

def test_enriques_and_proximity() -> None:
    for f in (
        x ** 2 - y ** 5,
        x ** 2 - y ** 7,
        x ** 3 - y ** 4,
        x ** 3 - y ** 5,
        x ** 2 * y - y ** 4,
        (x ** 2 - y ** 3) * (x ** 2 - 2 * y ** 3),
    ):
        _enriques_holds(f)

@pytest.mark.parametrize('name', [
    'A1', 'A2', 'A3', 'A4', 'A5', 'A6', 'A7', 'A8', 'D4', 'D5', 'D6', 'E6', 'E7', 'E8', 'ord:4',
])
def test_mu_matches_milnor_colength(name: str) -> None:
    f = normal_form(name)
    record = invariants_from_tree(resolve(f))
    assert record.mu == milnor_number(f)
    assert record.tau is not None and record.tau <= record.mu

def test_mu_of_further_germs() -> None:
    for f in (x ** 3 - y ** 4, x ** 3 - x * y ** 2, (x - y ** 2) * (x + y ** 2), x ** 4 - y ** 5):
        assert invariants_from_tree(resolve(f)).mu == milnor_number(f)

@pytest.mark.parametrize('factors', [
    [x - y ** 2, x + y ** 2, x - 2 * y ** 2],
    [x ** 2 - y ** 3, x - y],
    [y, x ** 2 - y ** 3, x - y],
    [x ** 2 - y ** 3, x ** 2 + y ** 3],
    [x, y, x - y, x + y],
])
def test_branch_intersections_match_colengths(factors: list) -> None:
    f = factors[0]
    for g in factors[1:]:
        f = f * g
    table = branch_intersections(resolve(f))
    assert len(table) == len(factors)
    from_tree = sorted(table[i][j] for i in range(len(table)) for j in range(i + 1, len(table)))
    from_colengths = sorted(
        intersection_multiplicity(factors[i], factors[j])
        for i in range(len(factors)) for j in range(i + 1, len(factors))
    )
    assert from_tree == from_colengths

def test_deg_xs_formulas_agree() -> None:
    for f in (x ** 2 - y ** 3, x ** 2 - y ** 4, x ** 3 - y ** 4, x ** 2 * y - y ** 4):
        t = resolve(f)
        star = essential_subtree(t)
        record = invariants_from_tree(t)
        assert record.deg_xs == sum(t.node(q).m * (t.node(q).m + 1) // 2 for q in star)

def test_nu_s_below_tau_es() -> None:
    for k in range(1, 7):
        t = resolve(x ** 2 - y ** (k + 1))
        assert nu_s(t) <= k

def test_nu_s_bounds() -> None:
    record = invariants_from_tree(resolve(x ** 2 - y ** 3), tau_es=2)
    checks = nu_s_bounds(record)
    assert checks[0].applicable and checks[0].holds
    assert not checks[1].applicable

    ordinary = invariants_from_tree(resolve(x ** 3 - x * y ** 2))
    assert nu_s_bounds(ordinary)[0].holds

def test_non_reduced_input() -> None:
    with pytest.raises(InputError):
        resolve((x - y) ** 2)
    with pytest.raises(InputError):
        resolve(x ** 2 - y ** 3, (1, 0))

def test_shifted_point() -> None:
    f = (x - 1) ** 2 - (y + 2) ** 3
    record = invariants_from_tree(resolve(f, (1, -2)))
    assert (record.mu, record.deg_xs, record.nu_s) == (2, 5, 2)

def test_smooth_germ() -> None:
    t = resolve(x - y ** 2)
    assert t.root.leaf
    record = invariants_from_tree(t)
    assert (record.m, record.delta, record.mu, record.tau) == (1, 0, 0, 0)

def test_tree_document() -> None:
    doc = resolve(x ** 2 - y ** 3).to_document()
    assert doc['germ'] == 'x^2 - y^3'
    node = doc['nodes'][2]
    assert set(node.keys()) >= {'id', 'level', 'parent', 'm', 'mhat', 'proximate_to', 'essential', 'free'}
    assert node['free'] is False

def test_record_from_document() -> None:
    record = SingularityRecord.from_document({
        'm': 2, 'r': 1, 'delta': 1, 'mu': 2, 'nu_s': 2, 'deg_xs': 5,
        'tau_es': 2, 'gamma_upper': 9, 'alpha': 5.0,
    })
    assert record.is_cusp
    assert record.x_fix_degree == 4
    assert record.gamma_upper == Fraction(9)
    assert record.alpha == Fraction(5)

    with pytest.raises(InputError):
        SingularityRecord.from_document({'m': 2})
