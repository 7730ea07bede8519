import pytest # type: ignore[import]

from planesing.algebra import MultiPoly
from planesing.catalog import (
    catalog_names, catalog_record, classify, describe_germ, is_simple, normal_form,
    normalize_name, parse_type_list,
)
from planesing.errors import InputError, IrrationalBranchPoint
from planesing.resolution import resolve

x = MultiPoly.variable('x')
y = MultiPoly.variable('y')


def test_normalize_name() -> None:
    assert normalize_name('node') == 'A1'
    assert normalize_name('Cusp') == 'A2'
    assert normalize_name('tacnode') == 'A3'
    assert normalize_name('a_3') == 'A3'
    assert normalize_name('e7') == 'E7'
    assert normalize_name('ord:3') == 'D4'
    assert normalize_name('ORD:5') == 'ord:5'

def test_unknown_names() -> None:
    for name in ('E9', 'D3', 'A0', 'ord:1', 'X5', ''):
        with pytest.raises(InputError):
            normalize_name(name)

def test_normal_forms() -> None:
    assert normal_form('cusp') == x ** 2 - y ** 3
    assert normal_form('D5') == x ** 2 * y - y ** 4
    assert normal_form('E6') == x ** 3 - y ** 4
    assert normal_form('ord:4').order() == 4

def test_classify() -> None:
    for name in ('A1', 'A2', 'A5', 'D4', 'D5', 'D6', 'E6', 'E7', 'E8', 'ord:4'):
        f = normal_form(name)
        record = describe_germ(f)
        assert classify(resolve(f), record.mu) == name
    assert is_simple('E8')
    assert not is_simple('ord:4')
    assert not is_simple(None)

def test_catalog_records() -> None:
    a2 = catalog_record('A2')
    assert (a2.m, a2.mu, a2.delta, a2.tau_es, a2.label) == (2, 2, 1, 2, 'A2')
    assert a2.x_fix_degree == 4

    d4 = catalog_record('D4')
    assert d4.ordinary
    assert (d4.m, d4.mu, d4.tau_es) == (3, 4, 4)

    e6 = catalog_record('E6')
    assert (e6.m, e6.mu, e6.r) == (3, 6, 1)

    ordinary = catalog_record('ord:4')
    assert ordinary.mu == 9
    assert ordinary.tau_es == 8

def test_simple_types_have_tau_es_equal_to_mu() -> None:
    for name in catalog_names(5):
        record = catalog_record(name)
        if is_simple(record.label):
            assert record.tau_es == record.mu, name
            assert record.tau == record.mu, name

def test_smooth_contact() -> None:
    assert catalog_record('A1').smooth_max == 2
    assert catalog_record('A2').smooth_max == 3
    assert catalog_record('A1').x_fix_degree == 3
    assert catalog_record('ord:4').smooth_max == 4

def test_describe_germ_with_gamma() -> None:
    record = describe_germ(x ** 2 - y ** 3, with_gamma=True)
    assert record.gamma_lower == 9
    assert record.gamma_upper == 9
    assert record.gamma_exact

    node = describe_germ(x ** 2 - y ** 2, with_gamma=True)
    assert node.gamma_upper == 4
    assert node.gamma_exact

def test_describe_smooth_germ() -> None:
    record = describe_germ(x - y ** 2)
    assert record.m == 1
    assert record.label is None
    assert record.smooth_max is None

def test_describe_germ_at_a_point() -> None:
    record = describe_germ((x - 1) ** 2 - y ** 5, (1, 0))
    assert record.label == 'A4'

def test_irrational_germ() -> None:
    with pytest.raises(IrrationalBranchPoint):
        describe_germ(x ** 3 - y ** 3)

def test_parse_type_list() -> None:
    assert parse_type_list('20*A1, 5*A2') == [('A1', 20), ('A2', 5)]
    assert parse_type_list('ord:4, cusp') == [('ord:4', 1), ('A2', 1)]
    assert parse_type_list('') == []
    with pytest.raises(InputError):
        parse_type_list('x*A1')
    with pytest.raises(InputError):
        parse_type_list('-2*A1')
