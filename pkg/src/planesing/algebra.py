from fractions import Fraction
import functools
import itertools
import logging
import math
from types import MappingProxyType
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import groebner, Poly, QQ
from sympy.polys.polytools import GroebnerBasis
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from .errors import ArityMismatch, InputError, PolynomialSyntaxError

"""

Exact arithmetic over the rationals.

Polynomials are sparse maps from exponent tuples to :class:`fractions.Fraction`
coefficients. Gcds, resultants and univariate factorisation are delegated to
sympy's polynomial rings over ``QQ``; ranks and kernels to its
``DomainMatrix``. Everything here is immutable.

"""

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, Fraction, str]
Monomial = Tuple[int, ...]

AFFINE: Tuple[str, ...] = ('x', 'y')
PROJECTIVE: Tuple[str, ...] = ('x', 'y', 'z')


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, bool):
        raise TypeError('booleans are not rationals')
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace('−', '-'))
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f'not a rational number: {value!r}') from e
    raise TypeError(f'cannot interpret {value!r} as a rational number')


def rational_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def homogeneous_monomials(degree: int, nvars: int = 3) -> List[Monomial]:
    """All exponent tuples of the given total degree, lexicographically descending."""

    if degree < 0:
        return []
    if nvars == 1:
        return [(degree,)]

    monomials: List[Monomial] = []
    for first in range(degree, -1, -1):
        for rest in homogeneous_monomials(degree - first, nvars - 1):
            monomials.append((first,) + rest)
    return monomials


def monomials_below(order: int) -> List[Monomial]:
    """Bivariate monomials of total degree < ``order``.

    Ordered by degree ascending, and within a degree by descending exponent of
    the first variable. This is a local monomial ordering: the first entry of
    any polynomial in this order is its leading term in the local sense.
    """

    monomials: List[Monomial] = []
    for n in range(order):
        monomials.extend((n - j, j) for j in range(n + 1))
    return monomials


class MultiPoly(object):
    """Polynomial with rational coefficients in named variables.

    Args:
        terms: Map from exponent tuples to coefficients. Zero coefficients are
            dropped.
        variables: Variable names. ``('x', 'y')`` for affine germs and curves,
            ``('x', 'y', 'z')`` for homogeneous curve equations.
    """

    __slots__ = ('_terms', '_variables')

    def __init__(
        self,
        terms: Optional[Mapping[Sequence[int], RationalLike]] = None,
        variables: Sequence[str] = AFFINE,
    ) -> None:
        variables = tuple(variables)
        if len(variables) == 0 or len(set(variables)) != len(variables):
            raise ArityMismatch(f'invalid variables {variables!r}')

        clean: Dict[Monomial, Fraction] = {}
        if terms is not None:
            for mono, coeff in terms.items():
                exps = tuple(int(e) for e in mono)
                if len(exps) != len(variables):
                    raise ArityMismatch(f'monomial {exps!r} does not match variables {variables!r}')
                if any(e < 0 for e in exps):
                    raise InputError(f'negative exponent in {exps!r}')
                c = as_rational(coeff)
                if c != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
        self._terms: Dict[Monomial, Fraction] = {m: c for m, c in clean.items() if c != 0}
        self._variables: Tuple[str, ...] = variables

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], variables: Tuple[str, ...]) -> 'MultiPoly':
        poly = object.__new__(cls)
        poly._terms = terms
        poly._variables = variables
        return poly

    @classmethod
    def zero(cls, variables: Sequence[str] = AFFINE) -> 'MultiPoly':
        return cls._raw({}, tuple(variables))

    @classmethod
    def constant(cls, value: RationalLike, variables: Sequence[str] = AFFINE) -> 'MultiPoly':
        variables = tuple(variables)
        c = as_rational(value)
        return cls._raw({(0,) * len(variables): c} if c != 0 else {}, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] = AFFINE) -> 'MultiPoly':
        variables = tuple(variables)
        if name not in variables:
            raise ArityMismatch(f'unknown variable {name!r} for {variables!r}')
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._raw({exps: Fraction(1)}, variables)

    @classmethod
    def monomial(
        cls,
        exponents: Sequence[int],
        coefficient: RationalLike = 1,
        variables: Sequence[str] = AFFINE,
    ) -> 'MultiPoly':
        return cls({tuple(exponents): coefficient}, variables)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._variables

    @property
    def nvars(self) -> int:
        return len(self._variables)

    def is_zero(self) -> bool:
        return len(self._terms) == 0

    def __bool__(self) -> bool:
        return len(self._terms) > 0

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def degree(self) -> int:
        """Total degree, -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term, i.e. the multiplicity at the origin."""
        if not self._terms:
            raise ValueError('the zero polynomial has no order')
        return min(sum(m) for m in self._terms)

    def _index(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self._variables):
                raise ArityMismatch(f'variable index {var} out of range for {self._variables!r}')
            return var
        try:
            return self._variables.index(var)
        except ValueError:
            raise ArityMismatch(f'unknown variable {var!r} for {self._variables!r}')

    def degree_in(self, var: Union[str, int]) -> int:
        i = self._index(var)
        return max((m[i] for m in self._terms), default=-1)

    def min_exponent(self, var: Union[str, int]) -> int:
        i = self._index(var)
        return min((m[i] for m in self._terms), default=0)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        """Lexicographically largest term."""
        if not self._terms:
            raise ValueError('the zero polynomial has no leading term')
        mono = max(self._terms)
        return mono, self._terms[mono]

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def _coerce(self, other: Any) -> 'MultiPoly':
        if isinstance(other, MultiPoly):
            if other._variables != self._variables:
                raise ArityMismatch(f'variables {self._variables!r} and {other._variables!r} differ')
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(other, self._variables)
        raise TypeError(f'cannot combine polynomial with {type(other).__name__}')

    def __add__(self, other: Any) -> 'MultiPoly':
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in o._terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return MultiPoly._raw(terms, self._variables)

    __radd__ = __add__

    def __neg__(self) -> 'MultiPoly':
        return MultiPoly._raw({m: -c for m, c in self._terms.items()}, self._variables)

    def __sub__(self, other: Any) -> 'MultiPoly':
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> 'MultiPoly':
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> 'MultiPoly':
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return MultiPoly._raw({m: c for m, c in terms.items() if c != 0}, self._variables)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'MultiPoly':
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f'polynomial exponent must be a non-negative integer, got {exponent!r}')
        result = MultiPoly.constant(1, self._variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._variables == other._variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * len(self._variables): Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._variables, frozenset(self._terms.items())))

    def scale(self, factor: RationalLike) -> 'MultiPoly':
        c = as_rational(factor)
        if c == 0:
            return MultiPoly.zero(self._variables)
        return MultiPoly._raw({m: v * c for m, v in self._terms.items()}, self._variables)

    def diff(self, var: Union[str, int]) -> 'MultiPoly':
        i = self._index(var)
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            if m[i] > 0:
                terms[m[:i] + (m[i] - 1,) + m[i + 1:]] = c * m[i]
        return MultiPoly._raw(terms, self._variables)

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != len(self._variables):
            raise ArityMismatch(f'point {point!r} does not match variables {self._variables!r}')
        values = [as_rational(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v ** e
            total += term
        return total

    def substitute(
        self,
        images: Mapping[str, Union['MultiPoly', RationalLike]],
        variables: Optional[Sequence[str]] = None,
    ) -> 'MultiPoly':
        """Composes the polynomial with the given images of its variables.

        Variables without an image are kept and must exist in the target
        variables, which default to those of the images (or of ``self``).
        """

        for name in images:
            self._index(name)

        if variables is None:
            targets = {img.variables for img in images.values() if isinstance(img, MultiPoly)}
            if len(targets) > 1:
                raise ArityMismatch(f'substitution images use different variables: {targets!r}')
            target = targets.pop() if targets else self._variables
        else:
            target = tuple(variables)

        resolved: List[MultiPoly] = []
        for name in self._variables:
            if name in images:
                img = images[name]
                if isinstance(img, MultiPoly):
                    if img.variables != target:
                        raise ArityMismatch(f'image of {name!r} uses {img.variables!r}, expected {target!r}')
                    resolved.append(img)
                else:
                    resolved.append(MultiPoly.constant(img, target))
            else:
                resolved.append(MultiPoly.variable(name, target))

        powers: List[Dict[int, MultiPoly]] = [{0: MultiPoly.constant(1, target)} for _ in resolved]

        def power(i: int, e: int) -> MultiPoly:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * resolved[i]
            return cache[e]

        result: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            term = MultiPoly.constant(c, target)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for tm, tc in term._terms.items():
                result[tm] = result.get(tm, Fraction(0)) + tc
        return MultiPoly._raw({m: c for m, c in result.items() if c != 0}, target)

    def rename(self, variables: Sequence[str]) -> 'MultiPoly':
        variables = tuple(variables)
        if len(variables) != len(self._variables):
            raise ArityMismatch(f'cannot rename {self._variables!r} to {variables!r}')
        return MultiPoly._raw(dict(self._terms), variables)

    def homogenize(self, var: str = 'z', degree: Optional[int] = None) -> 'MultiPoly':
        if var in self._variables:
            raise ArityMismatch(f'{var!r} is already a variable of {self._variables!r}')
        top = self.degree()
        if degree is None:
            degree = max(top, 0)
        if degree < top:
            raise InputError(f'cannot homogenize a polynomial of degree {top} to degree {degree}')
        return MultiPoly._raw(
            {m + (degree - sum(m),): c for m, c in self._terms.items()},
            self._variables + (var,),
        )

    def dehomogenize(self, index: int = -1, variables: Sequence[str] = AFFINE) -> 'MultiPoly':
        """Sets the variable at ``index`` to 1.

        The remaining variables keep their order and are renamed to
        ``variables``.
        """

        i = self._index(index if index >= 0 else len(self._variables) + index)
        variables = tuple(variables)
        if len(variables) != len(self._variables) - 1:
            raise ArityMismatch(f'cannot dehomogenize {self._variables!r} into {variables!r}')
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            reduced = m[:i] + m[i + 1:]
            terms[reduced] = terms.get(reduced, Fraction(0)) + c
        return MultiPoly._raw({m: c for m, c in terms.items() if c != 0}, variables)

    def translate(self, point: Sequence[RationalLike]) -> 'MultiPoly':
        """Returns ``f(x + a, y + b)``, moving ``point`` to the origin."""

        if len(point) != len(self._variables):
            raise ArityMismatch(f'point {point!r} does not match variables {self._variables!r}')
        shift = [as_rational(a) for a in point]
        if all(a == 0 for a in shift):
            return self
        images = {
            name: MultiPoly.variable(name, self._variables) + a
            for name, a in zip(self._variables, shift) if a != 0
        }
        return self.substitute(images, self._variables)

    def jet(self, n: int) -> 'MultiPoly':
        """Terms of total degree at most ``n``."""
        return MultiPoly._raw({m: c for m, c in self._terms.items() if sum(m) <= n}, self._variables)

    def drop_below(self, n: int) -> 'MultiPoly':
        """Terms of total degree at least ``n``."""
        return MultiPoly._raw({m: c for m, c in self._terms.items() if sum(m) >= n}, self._variables)

    def homogeneous_part(self, n: int) -> 'MultiPoly':
        return MultiPoly._raw({m: c for m, c in self._terms.items() if sum(m) == n}, self._variables)

    def multiply_by_monomial(self, exponents: Sequence[int]) -> 'MultiPoly':
        exps = tuple(exponents)
        if len(exps) != len(self._variables):
            raise ArityMismatch(f'monomial {exps!r} does not match variables {self._variables!r}')
        return MultiPoly._raw(
            {tuple(a + b for a, b in zip(m, exps)): c for m, c in self._terms.items()},
            self._variables,
        )

    def divide_by_monomial(self, exponents: Sequence[int]) -> 'MultiPoly':
        exps = tuple(exponents)
        if len(exps) != len(self._variables):
            raise ArityMismatch(f'monomial {exps!r} does not match variables {self._variables!r}')
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            q = tuple(a - b for a, b in zip(m, exps))
            if any(e < 0 for e in q):
                raise ValueError(f'{self} is not divisible by the monomial {exps!r}')
            terms[q] = c
        return MultiPoly._raw(terms, self._variables)

    def iter_terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in canonical order: graded, then lexicographically descending."""
        return iter(sorted(
            self._terms.items(),
            key = lambda item: (-sum(item[0]),) + tuple(-e for e in item[0]),
        ))

    def _term_str(self, mono: Monomial, coeff: Fraction) -> str:
        factors = [
            name if e == 1 else f'{name}^{e}'
            for name, e in zip(self._variables, mono) if e > 0
        ]
        magnitude = abs(coeff)
        if not factors:
            return rational_str(magnitude)
        body = '*'.join(factors)
        if magnitude == 1:
            return body
        return f'{rational_str(magnitude)}*{body}'

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        parts: List[str] = []
        for mono, coeff in self.iter_terms():
            text = self._term_str(mono, coeff)
            if not parts:
                parts.append('-' + text if coeff < 0 else text)
            else:
                parts.append(('- ' if coeff < 0 else '+ ') + text)
        return ' '.join(parts)

    def __repr__(self) -> str:
        return f'MultiPoly({str(self)!r}, variables={self._variables!r})'

    def to_document(self) -> str:
        return str(self)


def linear_change(
    f: MultiPoly,
    matrix: Sequence[Sequence[RationalLike]],
    shift: Optional[Sequence[RationalLike]] = None,
) -> MultiPoly:
    """Returns ``f(A·v + s)`` for the variable vector ``v``."""

    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ArityMismatch(f'{n}x{n} matrix expected for {f.variables!r}')
    offsets = [as_rational(a) for a in shift] if shift is not None else [Fraction(0)] * n
    variables = [MultiPoly.variable(name, f.variables) for name in f.variables]
    images: Dict[str, MultiPoly] = {}
    for name, row, offset in zip(f.variables, matrix, offsets):
        image = MultiPoly.constant(offset, f.variables)
        for coeff, var in zip(row, variables):
            image = image + var.scale(coeff)
        images[name] = image
    return f.substitute(images, f.variables)


def poly_parse(text: str, variables: Optional[Sequence[str]] = None) -> MultiPoly:
    """Parses a polynomial expression.

    The grammar accepts integers, the variables, ``+ - * / ^`` (``**`` as an
    alias of ``^``) and parentheses. Division is only allowed by nonzero
    constants, so ``1/2*x`` works but ``x/y`` does not. Without explicit
    ``variables`` the result is homogeneous in ``x, y, z`` if ``z`` occurs and
    affine in ``x, y`` otherwise.

    Raises:
        PolynomialSyntaxError: The text does not parse, carrying the position
            of the offending character.
    """

    return _Parser(text, variables).parse()


class _Parser(object):
    _OPERATORS = '+-*/^()'

    def __init__(self, text: str, variables: Optional[Sequence[str]]) -> None:
        self._text: str = text
        allowed = tuple(variables) if variables is not None else PROJECTIVE
        self._tokens: List[Tuple[str, Any, int]] = self._tokenize(allowed)
        if variables is not None:
            self._variables: Tuple[str, ...] = tuple(variables)
        elif any(kind == 'var' and value == 'z' for kind, value, _ in self._tokens):
            self._variables = PROJECTIVE
        else:
            self._variables = AFFINE
        self._pos: int = 0

    def _error(self, message: str, position: int) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, self._text, position)

    def _tokenize(self, allowed: Tuple[str, ...]) -> List[Tuple[str, Any, int]]:
        text = self._text
        tokens: List[Tuple[str, Any, int]] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                start = i
                while i < len(text) and text[i].isdigit():
                    i += 1
                tokens.append(('num', int(text[start:i]), start))
            elif ch.isalpha() or ch == '_':
                start = i
                while i < len(text) and (text[i].isalnum() or text[i] == '_'):
                    i += 1
                name = text[start:i]
                if name not in allowed:
                    raise self._error(f'unknown variable {name!r}', start)
                tokens.append(('var', name, start))
            elif text.startswith('**', i):
                tokens.append(('op', '^', i))
                i += 2
            elif ch in self._OPERATORS:
                tokens.append(('op', ch, i))
                i += 1
            elif ch == '−':
                tokens.append(('op', '-', i))
                i += 1
            elif ch == '·':
                tokens.append(('op', '*', i))
                i += 1
            else:
                raise self._error(f'unexpected character {ch!r}', i)
        tokens.append(('end', None, len(text)))
        return tokens

    def _peek(self) -> Tuple[str, Any, int]:
        return self._tokens[self._pos]

    def _take(self) -> Tuple[str, Any, int]:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _at_op(self, ops: str) -> bool:
        kind, value, _ = self._peek()
        return kind == 'op' and value in ops

    def parse(self) -> MultiPoly:
        if self._peek()[0] == 'end':
            raise self._error('empty expression', 0)
        result = self._expr()
        kind, value, position = self._peek()
        if kind != 'end':
            raise self._error(f'unexpected {value!r}', position)
        return result

    def _expr(self) -> MultiPoly:
        result = self._term()
        while self._at_op('+-'):
            _, op, _ = self._take()
            right = self._term()
            result = result + right if op == '+' else result - right
        return result

    def _term(self) -> MultiPoly:
        result = self._unary()
        while self._at_op('*/'):
            _, op, position = self._take()
            right = self._unary()
            if op == '*':
                result = result * right
            else:
                if not right.is_constant() or right.is_zero():
                    raise self._error('division only by nonzero constants', position)
                result = result.scale(1 / right.coefficient((0,) * len(self._variables)))
        return result

    def _unary(self) -> MultiPoly:
        if self._at_op('-'):
            self._take()
            return -self._unary()
        if self._at_op('+'):
            self._take()
            return self._unary()
        return self._power()

    def _power(self) -> MultiPoly:
        base = self._atom()
        if self._at_op('^'):
            self._take()
            kind, value, position = self._take()
            if kind != 'num':
                raise self._error('exponent must be a non-negative integer', position)
            return base ** value
        return base

    def _atom(self) -> MultiPoly:
        kind, value, position = self._take()
        if kind == 'num':
            return MultiPoly.constant(value, self._variables)
        if kind == 'var':
            return MultiPoly.variable(value, self._variables)
        if kind == 'op' and value == '(':
            inner = self._expr()
            kind, value, position = self._take()
            if kind != 'op' or value != ')':
                raise self._error("expected ')'", position)
            return inner
        if kind == 'end':
            raise self._error('unexpected end of expression', position)
        raise self._error(f'unexpected {value!r}', position)


@functools.lru_cache(maxsize=None)
def _sympy_ring(variables: Tuple[str, ...]) -> PolyRing:
    return PolyRing(','.join(variables), QQ)


def _fraction(value: Any) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def _to_sympy(p: MultiPoly, order: Sequence[int]) -> PolyElement:
    ring = _sympy_ring(tuple(p.variables[i] for i in order))
    return ring.from_dict({
        tuple(m[i] for i in order): QQ(c.numerator, c.denominator) for m, c in p.terms.items()
    })


def _from_sympy(element: PolyElement, order: Sequence[int], variables: Tuple[str, ...]) -> MultiPoly:
    terms: Dict[Monomial, Fraction] = {}
    for mono, coeff in element.terms():
        full = [0] * len(variables)
        for k, i in enumerate(order):
            full[i] = mono[k]
        terms[tuple(full)] = _fraction(coeff)
    return MultiPoly._raw({m: c for m, c in terms.items() if c != 0}, variables)


def primitive_part(p: MultiPoly) -> MultiPoly:
    """Scales ``p`` to coprime integer coefficients with positive leading term."""

    if p.is_zero():
        return p
    den = 1
    num = 0
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
        num = math.gcd(num, c.numerator)
    factor = Fraction(den, num)
    if p.leading_term()[1] < 0:
        factor = -factor
    return p.scale(factor)


def bivariate_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalised by :func:`primitive_part`.

    Works for any number of variables; homogeneous ternary forms are handled
    directly, their gcd being homogeneous. ``gcd(0, 0) = 0``.
    """

    a._coerce(b)
    if a.is_zero():
        return primitive_part(b)
    if b.is_zero():
        return primitive_part(a)
    order = range(a.nvars)
    g = _to_sympy(a, order).gcd(_to_sympy(b, order))
    return primitive_part(_from_sympy(g, order, a.variables))


def resultant(a: MultiPoly, b: MultiPoly, var: Union[str, int]) -> MultiPoly:
    """Sylvester resultant eliminating ``var``.

    The result is expressed in the same variables as the inputs, with ``var``
    absent from every term.

    Raises:
        InputError: An input is zero or both have degree 0 in ``var``.
    """

    a._coerce(b)
    i = a._index(var)
    if a.is_zero() or b.is_zero():
        raise InputError('resultant of the zero polynomial')
    da = a.degree_in(i)
    db = b.degree_in(i)
    if da == 0 and db == 0:
        raise InputError(f'both polynomials have degree 0 in {a.variables[i]!r}')
    if da == 0:
        return a ** db
    if db == 0:
        return b ** da

    order = [i] + [k for k in range(a.nvars) if k != i]
    res = _to_sympy(a, order).resultant(_to_sympy(b, order))
    if isinstance(res, PolyElement):
        return _from_sympy(res, order[1:], a.variables)
    return MultiPoly.constant(_fraction(res), a.variables)


def univariate_in(p: MultiPoly) -> Optional[int]:
    """Index of the only variable occurring in ``p``, None for constants."""

    occurring = {i for m in p.terms for i, e in enumerate(m) if e > 0}
    if len(occurring) > 1:
        raise InputError(f'{p} is not univariate')
    return occurring.pop() if occurring else None


def rational_roots(p: MultiPoly) -> Tuple[List[Tuple[Fraction, int]], List[MultiPoly]]:
    """Rational roots of a univariate polynomial with their multiplicities.

    Returns:
        The roots in ascending order, and the factors of degree >= 2 which are
        irreducible over the rationals (hence carry only irrational roots).
    """

    if p.is_zero():
        raise InputError('roots of the zero polynomial')
    i = univariate_in(p)
    if i is None:
        return [], []

    ring = _sympy_ring((p.variables[i],))
    element = ring.from_dict({(m[i],): QQ(c.numerator, c.denominator) for m, c in p.terms.items()})
    _, factors = element.factor_list()

    roots: List[Tuple[Fraction, int]] = []
    irrational: List[MultiPoly] = []
    for factor, multiplicity in factors:
        coeffs = {mono[0]: _fraction(c) for mono, c in factor.terms()}
        degree = max(coeffs)
        if degree == 1:
            roots.append((-coeffs.get(0, Fraction(0)) / coeffs[1], multiplicity))
        elif degree > 1:
            terms: Dict[Monomial, Fraction] = {}
            for e, c in coeffs.items():
                full = [0] * p.nvars
                full[i] = e
                terms[tuple(full)] = c
            irrational.append(primitive_part(MultiPoly._raw(terms, p.variables)))
    roots.sort()
    return roots, irrational


def is_squarefree(f: MultiPoly) -> bool:
    """Whether ``f`` has no repeated factor, via ``gcd(f, f_x, f_y)``."""

    if f.is_zero():
        return False
    g = f
    for name in f.variables:
        g = bivariate_gcd(g, f.diff(name))
    return g.degree() <= 0


def squarefree_part(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        raise InputError('square-free part of the zero polynomial')
    order = range(p.nvars)
    return primitive_part(_from_sympy(_to_sympy(p, order).sqf_part(), order, p.variables))


def factor(p: MultiPoly) -> List[Tuple[MultiPoly, int]]:
    """Irreducible factors over the rationals with multiplicities, constants dropped."""

    if p.is_zero():
        raise InputError('factorisation of the zero polynomial')
    order = range(p.nvars)
    _, factors = _to_sympy(p, order).factor_list()
    return [(primitive_part(_from_sympy(q, order, p.variables)), e) for q, e in factors]


def _from_poly(poly: Poly, order: Sequence[int], variables: Tuple[str, ...]) -> MultiPoly:
    terms: Dict[Monomial, Fraction] = {}
    for mono, coeff in poly.as_dict().items():
        full = [0] * len(variables)
        for k, i in enumerate(order):
            full[i] = mono[k]
        terms[tuple(full)] = Fraction(int(coeff.p), int(coeff.q))
    return MultiPoly._raw({m: c for m, c in terms.items() if c != 0}, variables)


class PolynomialIdeal(object):
    """Ideal of the polynomial ring over the rationals, given by generators.

    Gröbner bases are computed by sympy, in ``grevlex`` for quotient
    dimensions and membership and in ``lex`` for eliminants, and cached.
    """

    def __init__(self, generators: Iterable[MultiPoly], variables: Sequence[str] = AFFINE) -> None:
        super(PolynomialIdeal, self).__init__()
        self._variables: Tuple[str, ...] = tuple(variables)
        gens: List[MultiPoly] = []
        for g in generators:
            if g.variables != self._variables:
                raise ArityMismatch(f'generator in {g.variables!r}, ideal in {self._variables!r}')
            if not g.is_zero():
                gens.append(g)
        self._generators: Tuple[MultiPoly, ...] = tuple(gens)
        self._bases: Dict[Tuple[str, Tuple[int, ...]], GroebnerBasis] = {}

    @property
    def generators(self) -> Tuple[MultiPoly, ...]:
        return self._generators

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._variables

    def extend(self, generators: Iterable[MultiPoly]) -> 'PolynomialIdeal':
        return PolynomialIdeal(self._generators + tuple(generators), self._variables)

    def _basis(self, order: str, variable_order: Sequence[int]) -> GroebnerBasis:
        key = (order, tuple(variable_order))
        if key not in self._bases:
            ring = _sympy_ring(tuple(self._variables[i] for i in variable_order))
            exprs = [_to_sympy(g, variable_order).as_expr() for g in self._generators]
            if not exprs:
                exprs = [0]
            logger.debug('Gröbner basis (%s) of %d generators', order, len(self._generators))
            self._bases[key] = groebner(exprs, *ring.symbols, order=order, domain=QQ)
        return self._bases[key]

    def is_unit(self) -> bool:
        basis = self._basis('grevlex', range(len(self._variables)))
        return any(p.is_ground and not p.is_zero for p in basis.polys)

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return True
        return bool(self._basis('grevlex', range(len(self._variables))).is_zero_dimensional)

    def quotient_dimension(self) -> int:
        """Dimension over the rationals of the quotient ring.

        Raises:
            InputError: The ideal is not zero-dimensional.
        """

        if self.is_unit():
            return 0
        if not self.is_zero_dimensional():
            raise InputError('the ideal is not zero-dimensional')
        n = len(self._variables)
        basis = self._basis('grevlex', range(n))
        leading = [tuple(p.monoms(order='grevlex')[0]) for p in basis.polys]
        bounds = [
            min(m[i] for m in leading if m[i] > 0 and sum(m) == m[i])
            for i in range(n)
        ]
        count = 0
        for exps in itertools.product(*(range(b) for b in bounds)):
            if not any(all(e >= l for e, l in zip(exps, lead)) for lead in leading):
                count += 1
        return count

    def contains(self, p: MultiPoly) -> bool:
        if p.is_zero():
            return True
        if self.is_unit():
            return True
        order = range(len(self._variables))
        basis = self._basis('grevlex', order)
        return bool(basis.contains(_to_sympy(p, order).as_expr()))

    def eliminant(self, var: Union[str, int]) -> MultiPoly:
        """The monic generator of the ideal's intersection with the ring in ``var`` alone.

        Raises:
            InputError: The intersection is zero.
        """

        i = self._variables.index(var) if isinstance(var, str) else var
        order = [k for k in range(len(self._variables)) if k != i] + [i]
        basis = self._basis('lex', order)
        for poly in basis.polys:
            q = _from_poly(poly, order, self._variables)
            if all(e == 0 for m in q.terms for k, e in enumerate(m) if k != i):
                if q.is_constant():
                    return MultiPoly.constant(1, self._variables)
                return q.scale(1 / q.leading_term()[1])
        raise InputError(f'the ideal has no nonzero element in {self._variables[i]!r} alone')

    def radical(self) -> 'PolynomialIdeal':
        """Radical of a zero-dimensional ideal, adding the square-free parts of all eliminants."""

        if self.is_unit():
            return self
        extra = [squarefree_part(self.eliminant(i)) for i in range(len(self._variables))]
        return self.extend(extra)

    def __repr__(self) -> str:
        return f'PolynomialIdeal({", ".join(str(g) for g in self._generators)})'


class QMatrix(object):
    """Sparse matrix over the rationals.

    Rows are maps from column index to nonzero entry. Reduction is done by
    sympy's ``DomainMatrix`` over ``QQ`` and cached.
    """

    def __init__(self, rows: Iterable[Mapping[int, RationalLike]], ncols: int) -> None:
        if ncols < 0:
            raise InputError(f'negative column count {ncols}')
        clean: List[Dict[int, Fraction]] = []
        for row in rows:
            entries: Dict[int, Fraction] = {}
            for j, value in row.items():
                if not 0 <= j < ncols:
                    raise ArityMismatch(f'column {j} out of range for {ncols} columns')
                c = as_rational(value)
                if c != 0:
                    entries[j] = c
            clean.append(entries)
        self._rows: Tuple[Dict[int, Fraction], ...] = tuple(clean)
        self._ncols: int = ncols
        self._rref: Optional[Tuple[List[Dict[int, Fraction]], List[int]]] = None

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[RationalLike]], ncols: Optional[int] = None) -> 'QMatrix':
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ArityMismatch('rows of unequal length')
        return cls(({j: v for j, v in enumerate(row)} for row in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rows(self) -> Tuple[Mapping[int, Fraction], ...]:
        return tuple(MappingProxyType(row) for row in self._rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i].get(j, Fraction(0))

    def to_lists(self) -> List[List[Fraction]]:
        return [[row.get(j, Fraction(0)) for j in range(self._ncols)] for row in self._rows]

    def transpose(self) -> 'QMatrix':
        columns: List[Dict[int, Fraction]] = [{} for _ in range(self._ncols)]
        for i, row in enumerate(self._rows):
            for j, c in row.items():
                columns[j][i] = c
        return QMatrix(columns, len(self._rows))

    def vstack(self, other: 'QMatrix') -> 'QMatrix':
        if other.ncols != self._ncols:
            raise ArityMismatch(f'cannot stack {self._ncols} and {other.ncols} columns')
        return QMatrix(self._rows + other._rows, self._ncols)

    def apply(self, vector: Sequence[RationalLike]) -> List[Fraction]:
        if len(vector) != self._ncols:
            raise ArityMismatch(f'vector of length {len(vector)} for {self._ncols} columns')
        values = [as_rational(v) for v in vector]
        return [sum((c * values[j] for j, c in row.items()), Fraction(0)) for row in self._rows]

    def rref(self) -> Tuple[List[Dict[int, Fraction]], List[int]]:
        """Nonzero rows of the reduced row echelon form and their pivot columns."""

        if self._rref is None:
            self._rref = self._compute_rref()
        return [dict(row) for row in self._rref[0]], list(self._rref[1])

    def _compute_rref(self) -> Tuple[List[Dict[int, Fraction]], List[int]]:
        nonzero = {
            i: {j: QQ(c.numerator, c.denominator) for j, c in row.items()}
            for i, row in enumerate(self._rows) if row
        }
        if not nonzero or self._ncols == 0:
            return [], []

        dm = DomainMatrix(nonzero, (len(self._rows), self._ncols), QQ)
        reduced, pivots = dm.rref()
        rows: List[Dict[int, Fraction]] = [{} for _ in pivots]
        for (i, j), c in reduced.to_dok().items():
            if i < len(pivots) and c:
                rows[i][j] = _fraction(c)
        return rows, list(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> List[List[Fraction]]:
        return kernel_and_rank(self)[1]

    def __repr__(self) -> str:
        return f'QMatrix({self.nrows}x{self._ncols})'


def kernel_and_rank(m: QMatrix) -> Tuple[int, List[List[Fraction]]]:
    """Rank and a kernel basis of ``m``.

    The basis has one vector per non-pivot column of the reduced row echelon
    form, with a 1 in that column.
    """

    rows, pivots = m.rref()
    pivot_set = set(pivots)
    basis: List[List[Fraction]] = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * m.ncols
        vector[free] = Fraction(1)
        for row, pivot in zip(rows, pivots):
            c = row.get(free)
            if c:
                vector[pivot] = -c
        basis.append(vector)
    return len(pivots), basis
