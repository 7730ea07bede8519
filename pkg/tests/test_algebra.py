from fractions import Fraction
import random
import pytest # type: ignore[import]

from planesing.algebra import (
    bivariate_gcd, factor, is_squarefree, MultiPoly, poly_parse, PolynomialIdeal,
    primitive_part, QMatrix, rational_roots, resultant, squarefree_part,
)
from planesing.errors import ArityMismatch, InputError, PolynomialSyntaxError

x = MultiPoly.variable('x')
y = MultiPoly.variable('y')


def test_parse() -> None:
    f = poly_parse('x^2 - y^3')
    assert dict(f.terms) == {(2, 0): Fraction(1), (0, 3): Fraction(-1)}
    assert f == x ** 2 - y ** 3

    assert poly_parse('0').is_zero()
    assert dict(poly_parse('1/2*x*y + 1/2*x*y').terms) == {(1, 1): Fraction(1)}
    assert poly_parse('(x + y)**2') == x * x + 2 * x * y + y * y
    assert poly_parse('x*z - y^2').variables == ('x', 'y', 'z')

def test_parse_errors() -> None:
    with pytest.raises(PolynomialSyntaxError) as info:
        poly_parse('x^2 + * y')
    assert info.value.position >= 0

    with pytest.raises(InputError):
        poly_parse('x/y')

    with pytest.raises(InputError):
        poly_parse('x + (y')

def test_printing() -> None:
    assert str(poly_parse('-y^3 + x^2')) == 'x^2 - y^3'
    assert str(poly_parse('1/2*x - 3')) == '1/2*x - 3'
    assert str(MultiPoly.zero()) == '0'
    assert poly_parse(str(poly_parse('2*x^3*y - 7/3*y^2 + 1'))) == poly_parse('2*x^3*y - 7/3*y^2 + 1')

def test_arithmetic_ring_laws() -> None:
    rng = random.Random(7)

    def sample() -> MultiPoly:
        return MultiPoly({
            (rng.randint(0, 3), rng.randint(0, 3)): Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            for _ in range(4)
        })

    for _ in range(10):
        a, b, c = sample(), sample(), sample()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a - a == 0

def test_mixing_variables() -> None:
    with pytest.raises(ArityMismatch):
        x + MultiPoly.variable('z', ('x', 'y', 'z'))

def test_calculus_and_charts() -> None:
    f = x ** 2 - y ** 3
    assert f.diff('x') == 2 * x
    assert f.homogenize('z', 3) == poly_parse('x^2*z - y^3')
    assert f.homogenize('z', 3).dehomogenize() == f

    blown_up = f.substitute({'y': x * y}).divide_by_monomial((2, 0))
    assert blown_up == 1 - x * y ** 3

    assert f.translate((1, 1)) == (x + 1) ** 2 - (y + 1) ** 3
    assert f.order() == 2
    assert f.degree() == 3
    assert f.evaluate((8, 4)) == 0

def test_gcd() -> None:
    assert bivariate_gcd(x ** 2 - y ** 2, x ** 2 + 2 * x * y + y ** 2) == x + y
    assert bivariate_gcd(-2 * x + 4 * y, MultiPoly.zero()) == x - 2 * y
    assert bivariate_gcd(x ** 2 - y ** 3, x ** 3 - y ** 2) == 1

def test_gcd_scaling() -> None:
    a = poly_parse('x^3 - x*y^2 + y')
    b = poly_parse('x^2 + y^2 - 1')
    c = poly_parse('3*x - 6*y + 3')
    g = bivariate_gcd(a, b)
    assert bivariate_gcd(c * a, c * b) == primitive_part(c * g)

def test_resultant() -> None:
    assert resultant(y ** 2 - x ** 3, y, 'y') in (-x ** 3, x ** 3)
    assert resultant(y - x, y + x, 'y') in (2 * x, -2 * x)

    r = resultant(x ** 2 - y ** 3, x ** 3 - y ** 2, 'y')
    assert r.degree_in('y') == 0
    assert r.degree_in('x') == 9
    assert r.order() == 4

def test_resultant_vanishes_on_common_factor() -> None:
    common = x + y - 1
    a = common * (x - 2 * y)
    b = common * (y ** 2 + 3)
    assert resultant(a, b, 'y').is_zero()
    assert not resultant(x - 2 * y, y ** 2 + 3, 'y').is_zero()

def test_rational_roots() -> None:
    roots, irrational = rational_roots(poly_parse('(x - 1)^2*(2*x + 1)*(x^2 - 2)'))
    assert roots == [(Fraction(-1, 2), 1), (Fraction(1), 2)]
    assert irrational == [poly_parse('x^2 - 2')]

    with pytest.raises(InputError):
        rational_roots(x * y)

def test_squarefree() -> None:
    assert is_squarefree(x ** 2 - y ** 3)
    assert not is_squarefree((x - y) ** 2 * (x + y))
    assert squarefree_part((x - y) ** 2 * (x + y)) == primitive_part((x - y) * (x + y))

def test_factor() -> None:
    factors = dict(factor(poly_parse('(x - y)^2*(x^2 + y^2 + 1)')))
    assert factors == {x - y: 2, poly_parse('x^2 + y^2 + 1'): 1}

def test_matrix_rank_and_kernel() -> None:
    identity = QMatrix.from_lists([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert identity.rank() == 3
    assert identity.kernel() == []

    zero = QMatrix.from_lists([[0, 0, 0], [0, 0, 0]])
    assert zero.rank() == 0
    assert len(zero.kernel()) == 3

    proportional = QMatrix.from_lists([[1, 2], [2, 4]])
    assert proportional.rank() == 1
    assert proportional.kernel() == [[Fraction(-2), Fraction(1)]]

def test_matrix_rank_of_transpose() -> None:
    rng = random.Random(3)
    for _ in range(10):
        rows = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(4)]
        m = QMatrix.from_lists(rows)
        assert m.rank() == m.transpose().rank()
        for vector in m.kernel():
            assert all(v == 0 for v in m.apply(vector))

def test_ideal_quotient_dimension() -> None:
    cusp = x ** 2 - y ** 3
    tjurina = PolynomialIdeal([cusp, cusp.diff('x'), cusp.diff('y')])
    assert tjurina.is_zero_dimensional()
    assert tjurina.quotient_dimension() == 2

    assert PolynomialIdeal([x ** 2 - 1, y ** 2 - 2]).quotient_dimension() == 4
    assert PolynomialIdeal([x - 1, x + 1]).is_unit()
    assert PolynomialIdeal([x - 1, x + 1]).quotient_dimension() == 0

    with pytest.raises(InputError):
        PolynomialIdeal([x * y]).quotient_dimension()

def test_ideal_membership_and_elimination() -> None:
    ideal = PolynomialIdeal([x ** 2 - 2, y - x])
    assert ideal.contains(y ** 2 - 2)
    assert not ideal.contains(y - 1)
    assert ideal.eliminant('y') == y ** 2 - 2

def test_ideal_radical() -> None:
    ideal = PolynomialIdeal([x ** 2, y ** 3])
    assert ideal.quotient_dimension() == 6
    assert ideal.radical().quotient_dimension() == 1
