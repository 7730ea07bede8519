from fractions import Fraction
import pytest # type: ignore[import]

from planesing.algebra import MultiPoly, poly_parse, PROJECTIVE
from planesing.constructions import (
    curve_singular_locus, existence_check, family_dimensions, in_window, irreducibility_certificate,
    is_smooth_curve, meet_transversally, verify_zariski, zariski_curve, zariski_sextic,
)
from planesing.criteria import Verdict
from planesing.errors import InputError


def _form(text: str) -> MultiPoly:
    return poly_parse(text, PROJECTIVE)


def test_smooth_curves() -> None:
    assert is_smooth_curve(_form('x^2 + y^2 - z^2'))
    assert is_smooth_curve(_form('x'))
    assert not is_smooth_curve(_form('x^2 - y^2'))
    assert not is_smooth_curve(_form('y^2*z - x^3'))

def test_affine_equations_are_homogenized() -> None:
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    assert is_smooth_curve(x ** 2 + y ** 2 - 1)
    assert not is_smooth_curve(y ** 2 - x ** 3)
    with pytest.raises(InputError):
        is_smooth_curve(MultiPoly.constant(3))

def test_transversality() -> None:
    conic = _form('x^2 + y^2 - z^2')
    assert meet_transversally(conic, _form('x'))
    assert not meet_transversally(conic, _form('y - z'))
    # parallel lines meet at infinity
    assert not meet_transversally(_form('x'), _form('x - z'))

def test_irreducibility_certificate() -> None:
    assert irreducibility_certificate(_form('x^2 + y^2 - z^2')).startswith('irreducible over Q')
    assert irreducibility_certificate(_form('x*y')) == 'reducible over Q'

def test_nodal_cubic() -> None:
    locus = curve_singular_locus(_form('y^2*z - x^3 - x^2*z'))
    assert locus.total_points == 1
    assert (locus.total_mu, locus.total_tau) == (1, 1)
    (cluster,) = locus.clusters
    assert cluster.rational
    assert cluster.point == (0, 0, 1)
    assert cluster.label == 'A1'
    assert locus.label_counts() == {'A1': 1}

def test_cuspidal_cubic() -> None:
    locus = curve_singular_locus(_form('y^2*z - x^3'))
    assert locus.total_points == 1
    assert (locus.total_mu, locus.total_tau) == (2, 2)
    assert locus.clusters[0].label == 'A2'
    assert locus.confined_to([_form('x'), _form('y')])
    assert not locus.confined_to([_form('x - z')])

def test_smooth_locus() -> None:
    locus = curve_singular_locus(_form('x^2 + y^2 - z^2'))
    assert locus.total_points == 0
    assert locus.clusters == ()

def test_non_reduced_curve() -> None:
    with pytest.raises(InputError):
        curve_singular_locus(_form('(x - y)^2*z'))

@pytest.mark.parametrize('seed', range(5))
def test_sextic(seed: int) -> None:
    instance = zariski_sextic(seed=seed)
    assert instance.curve.degree() == 6
    assert instance.expected_cusps == 6
    report = verify_zariski(instance)
    assert report.locus.total_points == 6
    assert report.locus.total_tau == 12
    assert report.locus.total_mu == 12
    assert report.locus.label_counts() == {'A2': 6}
    assert report.confined
    assert report.verified

def test_sextic_is_reproducible() -> None:
    assert zariski_sextic(seed=3).curve == zariski_sextic(seed=3).curve

def test_zariski_curve() -> None:
    instance = zariski_curve(1, 7, seed=1)
    assert instance.curve.degree() == 7
    assert instance.a.degree() == 2
    assert instance.b.degree() == 3
    assert instance.f.degree() == 1
    assert instance.g.degree() == 1
    assert instance.curve == instance.a ** 3 * instance.f + instance.b ** 2 * instance.g
    assert instance.to_document()['expected_cusps'] == 6

def test_zariski_curve_bounds() -> None:
    with pytest.raises(InputError):
        zariski_curve(1, 6)
    with pytest.raises(InputError):
        zariski_curve(0, 7)

def test_family_dimensions() -> None:
    dims = family_dimensions(15, 91)
    assert dims.expected == 1577
    assert dims.constructed == 1580
    assert dims.window_valid
    assert dims.constructed_larger

    assert not family_dimensions(15, 92).window_valid
    assert not in_window(14, 85)
    assert not in_window(15, 90)

    for p in range(1, 4):
        for d in range(6 * p + 1, 6 * p + 5):
            dims = family_dimensions(p, d)
            assert dims.constructed == dims.constructed_closed_form

    with pytest.raises(InputError):
        family_dimensions(0, 5)

def test_existence_check() -> None:
    results = {r.name: r for r in existence_check(1, 7)}
    assert results['cusp_existence'].verdict is Verdict.PASS
    assert results['cusp_existence_lowest_degree'].verdict is Verdict.FAIL
    assert results['cusp_existence_lowest_degree'].rhs == Fraction(11, 2)
    assert results['nori_cusps'].verdict is Verdict.PASS

def test_window_scan() -> None:
    for p in range(15, 21):
        valid = [d for d in range(6 * p + 1, 12 * p) if in_window(p, d)]
        assert valid == [6 * p + 1], p
        for d in valid:
            dims = family_dimensions(p, d)
            assert dims.window_valid
            assert dims.constructed > dims.expected
