from dataclasses import dataclass
from fractions import Fraction
import functools
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import AFFINE, as_rational, bivariate_gcd, kernel_and_rank, Monomial, monomials_below, MultiPoly, QMatrix, RationalLike
from .config import config
from .errors import ArityMismatch, CommonComponentError, InputError, NonZeroDimensionalIdeal

"""

Computations in the local ring at a point of the affine plane.

Ideals are linearised on jets: modulo ``m^T`` an ideal is a subspace of the
polynomials of degree < T, kept in reduced row echelon form over the columns
of :func:`planesing.algebra.monomials_below`. Since that column order is a
local monomial ordering, the non-pivot columns always form a staircase and
count the colength once ``m^T`` is known to lie in the ideal. That inclusion
is certified by Nakayama: ``m^T ⊆ I`` as soon as every monomial of degree T
is a pivot of the truncation at degree ≤ T.

"""

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]
_Vector = Dict[int, Fraction]


def as_point(point: Sequence[RationalLike]) -> Point:
    if len(point) != 2:
        raise ArityMismatch(f'affine point expected, got {point!r}')
    return (as_rational(point[0]), as_rational(point[1]))


def _require_affine(f: MultiPoly) -> None:
    if f.variables != AFFINE:
        raise ArityMismatch(f'affine polynomial in {AFFINE!r} expected, got {f.variables!r}')


@functools.lru_cache(maxsize=None)
def _column_index(order: int) -> Mapping[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_below(order))}


def _column_count(order: int) -> int:
    return order * (order + 1) // 2


def jet_vector(g: MultiPoly, order: int) -> _Vector:
    """Coefficients of the terms of degree < ``order`` over the jet columns."""

    index = _column_index(order)
    return {index[m]: c for m, c in g.terms.items() if sum(m) < order}


def _multiples(generators: Iterable[MultiPoly], order: int) -> List[_Vector]:
    index = _column_index(order)
    rows: List[_Vector] = []
    for g in generators:
        if g.is_zero():
            continue
        low = g.order()
        for n in range(order - low):
            for a in range(n, -1, -1):
                b = n - a
                row: _Vector = {}
                for (i, j), c in g.terms.items():
                    if i + j + n < order:
                        row[index[(i + a, j + b)]] = c
                rows.append(row)
    return rows


@dataclass(frozen=True)
class ColengthCertificate:
    """Colength of a zero-dimensional ideal with its proof data.

    ``order`` is the least N with ``m^N`` inside the ideal, ``staircase`` the
    monomial basis of the quotient.
    """

    colength: int
    order: int
    staircase: Tuple[Monomial, ...]

    def to_document(self) -> Dict[str, object]:
        return {
            'colength': self.colength,
            'order': self.order,
            'staircase': [list(m) for m in self.staircase],
        }


class LocalIdeal(object):
    """Ideal of the local ring at ``point``, generated by global polynomials."""

    def __init__(self, point: Sequence[RationalLike], generators: Iterable[MultiPoly]) -> None:
        super(LocalIdeal, self).__init__()
        self._point: Point = as_point(point)
        gens = tuple(generators)
        if not gens:
            raise InputError('a local ideal needs at least one generator')
        for g in gens:
            _require_affine(g)
            if g.is_zero():
                raise InputError('generators of a local ideal must be nonzero')
        self._generators: Tuple[MultiPoly, ...] = gens

    @property
    def point(self) -> Point:
        return self._point

    @property
    def generators(self) -> Tuple[MultiPoly, ...]:
        return self._generators

    def local_generators(self) -> Tuple[MultiPoly, ...]:
        """Generators in coordinates centred at the point."""
        return tuple(g.translate(self._point) for g in self._generators)

    def __repr__(self) -> str:
        gens = ', '.join(str(g) for g in self._generators)
        return f'LocalIdeal(({self._point[0]}, {self._point[1]}), <{gens}>)'


class JetIdeal(object):
    """Ideal of the local ring at the origin that contains ``m^order``.

    Represented by the reduced row echelon form of its image in
    ``O / m^order``. Instances built by :meth:`from_generators` represent
    ``I + m^order``, which is the ideal itself once ``m^order ⊆ I``.
    """

    def __init__(self, order: int, rows: Sequence[Mapping[int, Fraction]], pivots: Sequence[int]) -> None:
        super(JetIdeal, self).__init__()
        if order < 1:
            raise InputError(f'jet order must be positive, got {order}')
        if len(rows) != len(pivots):
            raise ValueError('each row needs a pivot')
        self._order: int = order
        self._rows: Tuple[Dict[int, Fraction], ...] = tuple(dict(row) for row in rows)
        self._pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def from_span(cls, vectors: Iterable[Mapping[int, Fraction]], order: int) -> 'JetIdeal':
        """Ideal spanned (as a vector space modulo ``m^order``) by jet vectors.

        The caller guarantees the span is closed under multiplication.
        """

        matrix = QMatrix(vectors, _column_count(order))
        rows, pivots = matrix.rref()
        return cls(order, rows, pivots)

    @classmethod
    def from_generators(cls, generators: Iterable[MultiPoly], order: int) -> 'JetIdeal':
        """The ideal ``I + m^order`` for I generated by local germs."""

        return cls.from_span(_multiples(generators, order), order)

    @classmethod
    def maximal_power(cls, n: int) -> 'JetIdeal':
        return cls(n, [], [])

    @property
    def order(self) -> int:
        return self._order

    @property
    def columns(self) -> List[Monomial]:
        return monomials_below(self._order)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return self._pivots

    @property
    def rows(self) -> Tuple[Mapping[int, Fraction], ...]:
        return self._rows

    @property
    def colength(self) -> int:
        return _column_count(self._order) - len(self._pivots)

    def staircase_columns(self) -> List[int]:
        pivots = set(self._pivots)
        return [j for j in range(_column_count(self._order)) if j not in pivots]

    @property
    def staircase(self) -> Tuple[Monomial, ...]:
        columns = self.columns
        return tuple(columns[j] for j in self.staircase_columns())

    def multiplicity(self) -> int:
        """Largest ν with the ideal inside ``m^ν``."""

        if not self._pivots:
            return self._order
        columns = self.columns
        return min(sum(columns[p]) for p in self._pivots)

    def reduce(self, vector: Mapping[int, Fraction]) -> _Vector:
        v = dict(vector)
        for row, pivot in zip(self._rows, self._pivots):
            c = v.get(pivot)
            if c:
                for j, value in row.items():
                    s = v.get(j, Fraction(0)) - c * value
                    if s:
                        v[j] = s
                    else:
                        v.pop(j, None)
        return v

    def normal_form(self, g: MultiPoly) -> _Vector:
        """Coordinates of the local germ ``g`` in the quotient, keyed by staircase column."""
        return self.reduce(jet_vector(g, self._order))

    def contains(self, g: MultiPoly) -> bool:
        return not self.normal_form(g)

    def extend(self, generators: Iterable[MultiPoly]) -> 'JetIdeal':
        """Sum of this ideal and the ideal generated by local germs."""

        rows: List[Mapping[int, Fraction]] = list(self._rows)
        rows.extend(_multiples(generators, self._order))
        return JetIdeal.from_span(rows, self._order)

    def condition_functionals(self) -> List[_Vector]:
        """Linear forms on jets whose common kernel is the ideal.

        One form per staircase monomial, evaluating the normal form there.
        """

        functionals: List[_Vector] = []
        for s in self.staircase_columns():
            functional: _Vector = {s: Fraction(1)}
            for row, pivot in zip(self._rows, self._pivots):
                c = row.get(s)
                if c:
                    functional[pivot] = -c
            functionals.append(functional)
        return functionals

    def restrict(self, order: int) -> 'JetIdeal':
        """The same ideal stored modulo a smaller power ``m^order``."""

        if order > self._order:
            raise ValueError(f'cannot raise jet order from {self._order} to {order}')
        if any(sum(m) >= order for m in self.staircase):
            raise ValueError(f'm^{order} is not contained in the ideal')
        width = _column_count(order)
        rows: List[Dict[int, Fraction]] = []
        pivots: List[int] = []
        for row, pivot in zip(self._rows, self._pivots):
            if pivot < width:
                rows.append({j: c for j, c in row.items() if j < width})
                pivots.append(pivot)
        return JetIdeal(order, rows, pivots)

    def certificate(self) -> ColengthCertificate:
        staircase = self.staircase
        order = max((sum(m) for m in staircase), default=0) + 1
        return ColengthCertificate(self.colength, order, staircase)

    def __repr__(self) -> str:
        return f'JetIdeal(order={self._order}, colength={self.colength})'


def jet_matrix(i: LocalIdeal, order: int) -> QMatrix:
    """Monomial multiples of the generators, truncated at degree ≤ ``order``."""

    if order < 1:
        raise InputError(f'jet order must be at least 1, got {order}')
    return QMatrix(_multiples(i.local_generators(), order + 1), _column_count(order + 1))


def certified_jet_ideal(generators: Sequence[MultiPoly], cap: Optional[int] = None) -> JetIdeal:
    """Certifies ``m^N ⊆ I`` for local germs generating I and returns I.

    The jet order starts at ``max(4, 2·degree)`` and doubles up to the
    configured ``jet_cap``.

    Raises:
        NonZeroDimensionalIdeal: The generators share a factor through the
            origin, or no certificate exists below the cap.
    """

    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise NonZeroDimensionalIdeal(0, 'the zero ideal is not zero-dimensional')
    for g in gens:
        _require_affine(g)

    if any(g.coefficient((0, 0)) != 0 for g in gens):
        return JetIdeal(1, [{0: Fraction(1)}], [0])

    common = gens[0]
    for g in gens[1:]:
        common = bivariate_gcd(common, g)
    if common.degree() > 0 and common.coefficient((0, 0)) == 0:
        raise NonZeroDimensionalIdeal(0, f'generators share the factor {common} through the point')

    if cap is None:
        cap = config[__name__].positive_int('jet_cap')

    order = min(max(4, 2 * max(g.degree() for g in gens)), cap)
    while True:
        matrix = QMatrix(_multiples(gens, order + 1), _column_count(order + 1))
        rows, pivots = matrix.rref()
        top = range(_column_count(order), _column_count(order + 1))
        pivot_set = set(pivots)
        if all(j in pivot_set for j in top):
            width = _column_count(order)
            kept = [(row, p) for row, p in zip(rows, pivots) if p < width]
            ideal = JetIdeal(
                order,
                [{j: c for j, c in row.items() if j < width} for row, _ in kept],
                [p for _, p in kept],
            )
            minimal = max(ideal.certificate().order, 1)
            logger.debug('certified colength %d at jet order %d', ideal.colength, order)
            return ideal.restrict(minimal)

        logger.debug('no certificate at jet order %d', order)
        if order >= cap:
            raise NonZeroDimensionalIdeal(order)
        order = min(2 * order, cap)


def jet_ideal(i: Union[LocalIdeal, JetIdeal]) -> JetIdeal:
    if isinstance(i, JetIdeal):
        return i
    return certified_jet_ideal(i.local_generators())


def colength(i: Union[LocalIdeal, JetIdeal]) -> ColengthCertificate:
    """Dimension of the quotient of the local ring by a zero-dimensional ideal."""
    return jet_ideal(i).certificate()


def capped_colength(i: LocalIdeal, cap: int) -> int:
    """Colength of ``I + m^cap``.

    Exact colength of I when the result is below ``cap``; otherwise only a
    lower bound, the true value being at least ``cap``.
    """

    return JetIdeal.from_generators(i.local_generators(), cap).colength


def _require_on_curve(f: MultiPoly, point: Point) -> None:
    _require_affine(f)
    if f.evaluate(point) != 0:
        raise InputError(f'point ({point[0]}, {point[1]}) is not on the curve {f} = 0')


def _require_singular(f: MultiPoly, point: Point) -> None:
    _require_on_curve(f, point)
    if f.diff('x').evaluate(point) != 0 or f.diff('y').evaluate(point) != 0:
        raise InputError(f'point ({point[0]}, {point[1]}) is a nonsingular point of {f} = 0')


def tjurina_ideal(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> LocalIdeal:
    p = as_point(point)
    _require_singular(f, p)
    return LocalIdeal(p, (f, f.diff('x'), f.diff('y')))


def milnor_ideal(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> LocalIdeal:
    p = as_point(point)
    _require_singular(f, p)
    return LocalIdeal(p, (f.diff('x'), f.diff('y')))


def iea_fix_ideal(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> LocalIdeal:
    """``<f> + m·j(f)``; its colength is τ + 2."""

    p = as_point(point)
    _require_singular(f, p)
    x = MultiPoly.variable('x') - p[0]
    y = MultiPoly.variable('y') - p[1]
    generators = [f]
    for g in (f, f.diff('x'), f.diff('y')):
        if not g.is_zero():
            generators.extend((x * g, y * g))
    return LocalIdeal(p, generators)


def fat_point_ideal(point: Sequence[RationalLike], m: int) -> LocalIdeal:
    """``m_p^m``, the ideal of germs of multiplicity at least m."""

    if m < 1:
        raise InputError(f'fat point multiplicity must be positive, got {m}')
    p = as_point(point)
    x = MultiPoly.variable('x') - p[0]
    y = MultiPoly.variable('y') - p[1]
    return LocalIdeal(p, [x ** (m - i) * y ** i for i in range(m + 1)])


def tilde_ia_ideal(
    f: MultiPoly,
    point: Sequence[RationalLike] = (0, 0),
    order: Optional[int] = None,
) -> LocalIdeal:
    """Germs ``α0·f + α1·f_x + α2·f_y`` with ``(α1, α2)·Hess(f) ≡ 0 mod j(f)``.

    The congruence is solved for α of degree below ``order`` (default μ+2);
    higher order α solve it trivially and contribute ``m^order·<f_x, f_y>``.

    Raises:
        NonZeroDimensionalIdeal: The singularity is not isolated.
    """

    p = as_point(point)
    _require_singular(f, p)
    g = f.translate(p)
    fx = g.diff('x')
    fy = g.diff('y')
    fxx = fx.diff('x')
    fxy = fx.diff('y')
    fyy = fy.diff('y')

    tjurina = certified_jet_ideal((g, fx, fy))
    mu = certified_jet_ideal((fx, fy)).colength
    solve_order = max(order if order is not None else mu + 2, tjurina.order)

    monomials = monomials_below(solve_order)
    width = len(monomials)
    stair_index = {s: k for k, s in enumerate(tjurina.staircase_columns())}
    height = len(stair_index)

    rows: List[_Vector] = [{} for _ in range(2 * height)]

    def put(equation: int, column: int, product: MultiPoly) -> None:
        for s, c in tjurina.normal_form(product).items():
            rows[equation * height + stair_index[s]][column] = c

    for k, u in enumerate(monomials):
        mono = MultiPoly.monomial(u)
        put(0, k, mono * fxx)
        put(1, k, mono * fxy)
        put(0, width + k, mono * fxy)
        put(1, width + k, mono * fyy)

    _, kernel = kernel_and_rank(QMatrix(rows, 2 * width))
    logger.debug('Hessian congruence at order %d has %d solutions', solve_order, len(kernel))

    generators: List[MultiPoly] = [g]
    for vector in kernel:
        a1 = MultiPoly({u: vector[k] for k, u in enumerate(monomials)})
        a2 = MultiPoly({u: vector[width + k] for k, u in enumerate(monomials)})
        h = a1 * fx + a2 * fy
        if not h.is_zero():
            generators.append(h)
    for a in range(solve_order, -1, -1):
        mono = MultiPoly.monomial((a, solve_order - a))
        for h in (mono * fx, mono * fy):
            if not h.is_zero():
                generators.append(h)

    back = (-p[0], -p[1])
    return LocalIdeal(p, [h.translate(back) for h in generators])


def intersection_multiplicity(f: MultiPoly, g: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> int:
    """Local intersection number ``(f, g)_p`` as the colength of ``<f, g>``.

    Raises:
        CommonComponentError: f and g share a component through the point.
    """

    p = as_point(point)
    _require_affine(f)
    _require_affine(g)
    if f.evaluate(p) != 0 or g.evaluate(p) != 0:
        return 0
    common = bivariate_gcd(f, g)
    if common.degree() > 0 and common.evaluate(p) == 0:
        raise CommonComponentError(f'{f} and {g} share the component {common} through ({p[0]}, {p[1]})')
    return colength(LocalIdeal(p, (f, g))).colength


def multiplicity(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> int:
    _require_affine(f)
    if f.is_zero():
        raise InputError('the zero polynomial has no multiplicity')
    return f.translate(as_point(point)).order()


def milnor_number(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> int:
    return colength(milnor_ideal(f, point)).colength


def tjurina_number(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> int:
    return colength(tjurina_ideal(f, point)).colength


def determinacy_bound(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> int:
    """Order k such that f is k-determined for contact equivalence (τ+1)."""
    return tjurina_number(f, point) + 1


def scheme_multiplicity(i: Union[LocalIdeal, JetIdeal]) -> int:
    """``mt(X, z)``: the largest ν with the ideal of X inside ``m^ν``."""

    if isinstance(i, JetIdeal):
        return i.multiplicity()
    return min(g.order() for g in i.local_generators())


def ideal_sum(i: Union[LocalIdeal, JetIdeal], generators: Iterable[MultiPoly]) -> JetIdeal:
    """``I + <g_1, ..., g_k>``; the generators are global polynomials for a
    :class:`LocalIdeal` and local ones for a :class:`JetIdeal`."""

    gens = list(generators)
    if isinstance(i, LocalIdeal):
        return jet_ideal(LocalIdeal(i.point, i.generators + tuple(gens)))
    return i.extend(gens)


def contains(i: Union[LocalIdeal, JetIdeal], g: MultiPoly) -> bool:
    """Membership of ``g`` (global for a :class:`LocalIdeal`) in the ideal."""

    if isinstance(i, LocalIdeal):
        return jet_ideal(i).contains(g.translate(i.point))
    return i.contains(g)
