import abc
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import (
    as_rational, bivariate_gcd, homogeneous_monomials, kernel_and_rank, MultiPoly,
    poly_parse, PROJECTIVE, primitive_part, QMatrix, RationalLike,
)
from .cluster import Cluster, cluster_degree, cluster_from_document, cluster_from_tree, cluster_jet_ideal, passing_conditions
from .config import config
from .errors import CommonComponentError, InputError, InternalInconsistency, UnsupportedPiece
from .localring import certified_jet_ideal, JetIdeal, LocalIdeal
from .resolution import resolve

"""

Cohomology of ideal sheaves of zero-dimensional schemes in the plane.

A scheme is a union of pieces supported at distinct points. Each piece turns
into linear conditions on the coefficients of curves of degree d; stacking them
gives ``h0(J_X(d))`` as a kernel dimension, and ``h1`` follows from the
structure sequence. The Castelnuovo function is the first difference of
``h1``.

"""

logger = logging.getLogger(__name__)

HomogeneousPoint = Tuple[Fraction, Fraction, Fraction]


def _normalize_point(point: Sequence[RationalLike]) -> HomogeneousPoint:
    if len(point) == 2:
        coords = [as_rational(point[0]), as_rational(point[1]), Fraction(1)]
    elif len(point) == 3:
        coords = [as_rational(c) for c in point]
    else:
        raise InputError(f'point must have 2 affine or 3 homogeneous coordinates, got {point!r}')
    nonzero = [c for c in coords if c != 0]
    if not nonzero:
        raise InputError('(0:0:0) is not a point')
    last = nonzero[-1]
    return (coords[0] / last, coords[1] / last, coords[2] / last)


def _chart(point: HomogeneousPoint) -> Tuple[int, Tuple[Fraction, Fraction]]:
    index = max(i for i, c in enumerate(point) if c != 0)
    rest = [c for i, c in enumerate(point) if i != index]
    return index, (rest[0], rest[1])


def _local_germ(form: MultiPoly, point: HomogeneousPoint) -> MultiPoly:
    index, shift = _chart(point)
    return form.dehomogenize(index).translate(shift)


class Piece(abc.ABC):
    """Part of a zero-dimensional scheme."""

    @property
    @abc.abstractmethod
    def degree(self) -> int:
        ...

    @abc.abstractmethod
    def conditions(self, d: int) -> QMatrix:
        """Linear forms on the coefficients of degree ``d`` forms, vanishing
        exactly on the forms whose curve contains the piece."""
        ...

    @abc.abstractmethod
    def intersect_curve(self, curve: MultiPoly) -> 'Piece':
        ...

    @abc.abstractmethod
    def to_document(self) -> Dict[str, Any]:
        ...


class LocalPiece(Piece):
    """Piece supported at a single point, given by its local ideal.

    The ideal lives in the affine chart where the last nonzero coordinate of
    the point is 1, centred at the point.
    """

    def __init__(self, point: Sequence[RationalLike]) -> None:
        super(LocalPiece, self).__init__()
        self._point: HomogeneousPoint = _normalize_point(point)

    @property
    def point(self) -> HomogeneousPoint:
        return self._point

    @abc.abstractmethod
    def jet_ideal(self) -> JetIdeal:
        ...

    @property
    def degree(self) -> int:
        return self.jet_ideal().colength

    def multiplicity(self) -> int:
        return self.jet_ideal().multiplicity()

    def conditions(self, d: int) -> QMatrix:
        ideal = self.jet_ideal()
        stair = {s: k for k, s in enumerate(ideal.staircase_columns())}
        rows: List[Dict[int, Fraction]] = [{} for _ in stair]
        columns = homogeneous_monomials(d)
        for j, mono in enumerate(columns):
            germ = _local_germ(MultiPoly.monomial(mono, 1, PROJECTIVE), self._point)
            for s, c in ideal.normal_form(germ.jet(ideal.order - 1)).items():
                rows[stair[s]][j] = c
        return QMatrix(rows, len(columns))

    def intersect_curve(self, curve: MultiPoly) -> 'Piece':
        germ = _local_germ(curve, self._point)
        return JetPiece(self._point, self.jet_ideal().extend([germ]))


class JetPiece(LocalPiece):
    def __init__(self, point: Sequence[RationalLike], ideal: JetIdeal) -> None:
        super(JetPiece, self).__init__(point)
        self._ideal: JetIdeal = ideal

    def jet_ideal(self) -> JetIdeal:
        return self._ideal

    def to_document(self) -> Dict[str, Any]:
        return {
            'kind': 'ideal',
            'point': [str(c) for c in self._point],
            'degree': self.degree,
            'staircase': [list(m) for m in self._ideal.staircase],
        }


class FatPoint(LocalPiece):
    """The point defined by ``m_z^m``; a simple point for m = 1."""

    def __init__(self, point: Sequence[RationalLike], m: int = 1) -> None:
        super(FatPoint, self).__init__(point)
        if m < 1:
            raise InputError(f'fat point multiplicity must be positive, got {m}')
        self._m: int = m
        self._ideal: JetIdeal = JetIdeal.maximal_power(m)

    @property
    def m(self) -> int:
        return self._m

    def jet_ideal(self) -> JetIdeal:
        return self._ideal

    def to_document(self) -> Dict[str, Any]:
        return {'kind': 'fat', 'point': [str(c) for c in self._point], 'm': self._m}


class IdealPiece(LocalPiece):
    """A piece given by a local ideal at an affine point."""

    def __init__(self, ideal: LocalIdeal) -> None:
        super(IdealPiece, self).__init__(ideal.point)
        self._local: LocalIdeal = ideal
        self._ideal: JetIdeal = certified_jet_ideal(ideal.local_generators())

    def jet_ideal(self) -> JetIdeal:
        return self._ideal

    def to_document(self) -> Dict[str, Any]:
        return {
            'kind': 'ideal',
            'point': [str(c) for c in self._point],
            'generators': [str(g) for g in self._local.generators],
            'degree': self.degree,
        }


class ClusterPiece(LocalPiece):
    """Curves through a cluster; the conditions are the cluster's own."""

    def __init__(self, cluster: Cluster) -> None:
        super(ClusterPiece, self).__init__(cluster.origin)
        self._cluster: Cluster = cluster
        self._ideal: JetIdeal = cluster_jet_ideal(cluster)
        if self._ideal.colength != cluster_degree(cluster):
            logger.warning(
                'cluster %r imposes %d conditions instead of %d',
                cluster, self._ideal.colength, cluster_degree(cluster),
            )

    @property
    def cluster(self) -> Cluster:
        return self._cluster

    def jet_ideal(self) -> JetIdeal:
        return self._ideal

    def conditions(self, d: int) -> QMatrix:
        if self._ideal.colength == cluster_degree(self._cluster):
            return passing_conditions(self._cluster, d)
        return super(ClusterPiece, self).conditions(d)

    def to_document(self) -> Dict[str, Any]:
        doc = self._cluster.to_document()
        doc['kind'] = 'cluster'
        return doc


class CurvePairPiece(Piece):
    """The complete intersection of two plane curves without common component."""

    def __init__(self, f: MultiPoly, g: MultiPoly) -> None:
        super(CurvePairPiece, self).__init__()
        for h in (f, g):
            if h.variables != PROJECTIVE or not h.is_homogeneous() or h.degree() < 1:
                raise InputError(f'{h} is not a homogeneous form of positive degree in x, y, z')
        common = bivariate_gcd(f, g)
        if common.degree() > 0:
            raise CommonComponentError(f'{f} and {g} share the component {common}')
        self._f: MultiPoly = f
        self._g: MultiPoly = g

    @property
    def curves(self) -> Tuple[MultiPoly, MultiPoly]:
        return self._f, self._g

    @property
    def degree(self) -> int:
        return self._f.degree() * self._g.degree()

    def conditions(self, d: int) -> QMatrix:
        columns = homogeneous_monomials(d)
        index = {m: j for j, m in enumerate(columns)}
        multiples: List[Dict[int, Fraction]] = []
        for h in (self._f, self._g):
            for mono in homogeneous_monomials(d - h.degree()):
                multiples.append({
                    index[tuple(a + b for a, b in zip(m, mono))]: c for m, c in h.terms.items()
                })
        _, annihilator = kernel_and_rank(QMatrix(multiples, len(columns)))
        return QMatrix([{j: c for j, c in enumerate(v) if c} for v in annihilator], len(columns))

    def contains_curve_of(self, curve: MultiPoly) -> bool:
        """Whether the curve of the form ``curve`` passes through the piece."""

        if curve.variables != PROJECTIVE or not curve.is_homogeneous():
            raise InputError(f'{curve} is not a homogeneous form in x, y, z')
        columns = homogeneous_monomials(curve.degree())
        return all(
            sum((c * curve.terms.get(columns[j], 0) for j, c in row.items()), Fraction(0)) == 0
            for row in self.conditions(curve.degree()).rows
        )

    def intersect_curve(self, curve: MultiPoly) -> 'Piece':
        # only curves through the whole piece, where X ∩ D = X
        if self.contains_curve_of(curve):
            return self
        raise UnsupportedPiece(f'{curve} meets the complete intersection in a proper subscheme, which is not supported')

    def to_document(self) -> Dict[str, Any]:
        return {'kind': 'curve_pair', 'f': str(self._f), 'g': str(self._g), 'degree': self.degree}


class SchemeSpec(object):
    def __init__(self, pieces: Sequence[Piece]) -> None:
        super(SchemeSpec, self).__init__()
        self._pieces: Tuple[Piece, ...] = tuple(pieces)
        seen = set()
        for piece in self._pieces:
            if isinstance(piece, LocalPiece):
                if piece.point in seen:
                    raise InputError(f'two pieces at the point {piece.point!r}')
                seen.add(piece.point)
            elif len(self._pieces) > 1:
                raise InputError('a complete intersection piece cannot be combined with other pieces')
        self._degree: int = sum(piece.degree for piece in self._pieces)
        self._conditions: Dict[int, QMatrix] = {}

    @property
    def pieces(self) -> Tuple[Piece, ...]:
        return self._pieces

    @property
    def degree(self) -> int:
        return self._degree

    def is_empty(self) -> bool:
        return self._degree == 0

    def conditions(self, d: int) -> QMatrix:
        if d < 0:
            raise InputError(f'degree must be nonnegative, got {d}')
        if d not in self._conditions:
            ncols = (d + 1) * (d + 2) // 2
            rows: List[Mapping[int, Fraction]] = []
            for piece in self._pieces:
                rows.extend(piece.conditions(d).rows)
            self._conditions[d] = QMatrix(rows, ncols)
        return self._conditions[d]

    def restrict(self, indices: Sequence[int]) -> 'SchemeSpec':
        """The subscheme made of the pieces at ``indices``."""
        return SchemeSpec([self._pieces[i] for i in indices])

    def intersect_curve(self, curve: MultiPoly) -> 'SchemeSpec':
        """``X ∩ D`` for a plane curve D given by a form in x, y, z."""

        pieces = [piece.intersect_curve(curve) for piece in self._pieces]
        return SchemeSpec([piece for piece in pieces if piece.degree > 0])

    def to_document(self) -> Dict[str, Any]:
        return {'degree': self._degree, 'pieces': [piece.to_document() for piece in self._pieces]}


def scheme_from_document(doc: Mapping[str, Any]) -> SchemeSpec:
    """Reads a scheme from a parsed YAML or JSON document.

    The document holds ``points`` (simple points) and/or ``pieces``, each a
    mapping with a ``kind``: ``point``, ``fat`` (with ``m``), ``ideal`` (with
    ``generators`` as polynomial strings at an affine ``point``), ``cluster``
    (a cluster document, or a ``germ`` whose essential cluster is used) or
    ``curve_pair`` (forms ``f`` and ``g``).

    Raises:
        InputError: The document is malformed.
    """

    if not isinstance(doc, Mapping):
        raise InputError('scheme document must be a mapping')
    pieces: List[Piece] = []
    for point in doc.get('points') or []:
        pieces.append(FatPoint(point, 1))
    for entry in doc.get('pieces') or []:
        if not isinstance(entry, Mapping) or 'kind' not in entry:
            raise InputError(f'malformed scheme piece {entry!r}')
        kind = entry['kind']
        if kind == 'point':
            pieces.append(FatPoint(entry['point'], 1))
        elif kind == 'fat':
            pieces.append(FatPoint(entry['point'], int(entry.get('m', 1))))
        elif kind == 'ideal':
            generators = [poly_parse(str(g), ('x', 'y')) for g in entry.get('generators') or []]
            pieces.append(IdealPiece(LocalIdeal(entry.get('point', (0, 0)), generators)))
        elif kind == 'cluster':
            if 'germ' in entry:
                tree = resolve(poly_parse(str(entry['germ']), ('x', 'y')), entry.get('point', (0, 0)))
                pieces.append(ClusterPiece(cluster_from_tree(tree)))
            else:
                pieces.append(ClusterPiece(cluster_from_document(entry, bool(entry.get('essential_only', False)))))
        elif kind == 'curve_pair':
            pieces.append(CurvePairPiece(
                poly_parse(str(entry['f']), PROJECTIVE), poly_parse(str(entry['g']), PROJECTIVE),
            ))
        else:
            raise InputError(f'unknown scheme piece kind {kind!r}')
    return SchemeSpec(pieces)


def _monomial_count(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def h0(x: SchemeSpec, d: int) -> int:
    """``h0(J_X(d))``: dimension of the forms of degree d vanishing on X."""

    if d < 0:
        raise InputError(f'degree must be nonnegative, got {d}')
    return _monomial_count(d) - x.conditions(d).rank()


def h1(x: SchemeSpec, d: int) -> int:
    """``h1(J_X(d))`` from ``h0 - h1 = (d+1)(d+2)/2 - deg X``.

    Raises:
        InternalInconsistency: The computed value is negative.
    """

    value = h0(x, d) - _monomial_count(d) + x.degree
    if value < 0:
        raise InternalInconsistency(f'h1 at degree {d} computed as {value}')
    return value


def sections(x: SchemeSpec, d: int) -> List[MultiPoly]:
    """A basis of the forms of degree ``d`` whose curves contain X."""

    if d < 0:
        raise InputError(f'degree must be nonnegative, got {d}')
    columns = homogeneous_monomials(d)
    _, kernel = kernel_and_rank(x.conditions(d))
    return [
        MultiPoly({m: c for m, c in zip(columns, vector) if c}, PROJECTIVE)
        for vector in kernel
    ]


def fixed_curve(x: SchemeSpec, d: int) -> Optional[MultiPoly]:
    """Greatest common divisor of the degree ``d`` sections; None without sections."""

    basis = sections(x, d)
    if not basis:
        return None
    common = basis[0]
    for s in basis[1:]:
        common = bivariate_gcd(common, s)
    return primitive_part(common)


@dataclass(frozen=True)
class CastelnuovoProfile:
    """Castelnuovo function of a scheme, tabulated for ``0 <= d <= t + 2``.

    Attributes:
        a: Least degree of a curve containing the scheme.
        b: Least degree d ≥ a where the curves of degree d have no fixed
            component, searched up to ``t + 1``.
        t: Least degree with ``h1 = 0``.
        d0: Largest interior plateau start witnessing decomposability.
    """

    degree: int
    values: Tuple[int, ...]
    h0: Tuple[int, ...]
    h1: Tuple[int, ...]
    a: int
    b: Optional[int]
    t: int
    decomposable: bool
    d0: Optional[int]

    @property
    def stop(self) -> int:
        return len(self.values) - 1

    def value(self, d: int) -> int:
        if d < 0:
            return 0
        if d < len(self.values):
            return self.values[d]
        return 0

    def h1_at(self, d: int) -> int:
        if d < 0:
            return self.degree
        if d < len(self.h1):
            return self.h1[d]
        return 0

    def r0(self, d: int) -> int:
        return self.value(d + 1)

    def to_document(self) -> Dict[str, Any]:
        return {
            'degrees': list(range(len(self.values))),
            'cx': list(self.values),
            'h0': list(self.h0),
            'h1': list(self.h1),
            'a': self.a,
            'b': self.b,
            't': self.t,
            'decomposable': self.decomposable,
            'd0': self.d0,
            'degree': self.degree,
        }

    def csv_rows(self) -> List[Tuple[int, int, int, int]]:
        return [(d, self.values[d], self.h0[d], self.h1[d]) for d in range(len(self.values))]


CSV_HEADER = ('d', 'CX', 'h0', 'h1')


def _plateau(values: Sequence[int]) -> Optional[int]:
    best: Optional[int] = None
    for d0 in range(1, len(values) - 1):
        if values[d0 - 1] > values[d0] == values[d0 + 1] > 0:
            best = d0
    return best


def profile(x: SchemeSpec) -> CastelnuovoProfile:
    """Tabulates the Castelnuovo function and the degrees a, b, t.

    Raises:
        InputError: The scheme is empty.
        InternalInconsistency: ``h1`` does not vanish below the degree cap.
    """

    if x.is_empty():
        raise InputError('the Castelnuovo function of the empty scheme is not defined')
    cap = config[__name__].positive_int('degree_cap_factor') * x.degree

    values: List[int] = []
    h0s: List[int] = []
    h1s: List[int] = []
    previous = x.degree
    t: Optional[int] = None
    d = 0
    while t is None or d <= t + 2:
        if d > cap + 2:
            raise InternalInconsistency(f'h1 of a scheme of degree {x.degree} does not vanish by degree {cap}')
        h0s.append(h0(x, d))
        h1s.append(h1(x, d))
        values.append(previous - h1s[-1])
        previous = h1s[-1]
        if t is None and h1s[-1] == 0:
            t = d
        d += 1
    assert t is not None

    a = next(d for d, value in enumerate(h0s) if value > 0)
    b: Optional[int] = None
    for d in range(a, t + 2):
        curve = fixed_curve(x, d)
        if curve is not None and curve.degree() <= 0:
            b = d
            break
    d0 = _plateau(values)
    result = CastelnuovoProfile(
        degree = x.degree,
        values = tuple(values),
        h0 = tuple(h0s),
        h1 = tuple(h1s),
        a = a,
        b = b,
        t = t,
        decomposable = d0 is not None,
        d0 = d0,
    )
    logger.debug('profile of a scheme of degree %d: %r', x.degree, result.values)
    return result


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: Union[int, Fraction, None]
    rhs: Union[int, Fraction, None]
    holds: bool

    def to_document(self) -> Dict[str, Any]:
        return {'name': self.name, 'lhs': self.lhs, 'rhs': self.rhs, 'holds': self.holds}


def check_properties(p: CastelnuovoProfile) -> List[InequalityCheck]:
    """Checks the basic properties of a Castelnuovo function on its table."""

    checks: List[InequalityCheck] = []
    degrees = range(len(p.values))

    def record(name: str, failures: List[int]) -> None:
        checks.append(InequalityCheck(name, len(failures), 0, not failures))

    record('sum of C up to d equals deg X - h1(d)', [
        d for d in degrees if sum(p.values[:d + 1]) != p.degree - p.h1[d]
    ])
    record('C(d) = 0 exactly from t+1 on', [
        d for d in degrees if (p.values[d] == 0) != (d >= p.t + 1)
    ])
    record('C(d) <= d+1 with equality exactly when h0(d) = 0', [
        d for d in degrees
        if p.values[d] > d + 1 or (p.values[d] == d + 1) != (p.h0[d] == 0)
    ])
    record('C non-increasing from a on', [
        d for d in degrees if d >= max(p.a, 1) and p.values[d] > p.values[d - 1]
    ])
    if p.b is not None:
        b = p.b
        record('C strictly decreasing on [b, t+1]', [
            d for d in degrees if b <= d <= p.t + 1 and p.values[d] >= p.values[d - 1]
        ])
    record('h0(d) - h1(d) = (d+1)(d+2)/2 - deg X', [
        d for d in degrees if p.h0[d] - p.h1[d] != _monomial_count(d) - p.degree
    ])
    return checks


def reduction_bounds(h1_value: int, k: int, d: int, deg_y: int, r0: int) -> List[InequalityCheck]:
    """Degree bounds for a non-decomposable scheme Y on a curve of degree k
    with ``h1(J_Y(d)) = h1_value`` and ``r0 = C_Y(d+1)``."""

    k0 = min(k, (d + 3) // 2)
    triangle = r0 * (r0 + 1) // 2
    return [
        InequalityCheck('h1 <= r0(r0+1)/2', h1_value, triangle, h1_value <= triangle),
        InequalityCheck('k0(d+3-k0) <= deg Y', k0 * (d + 3 - k0), deg_y, k0 * (d + 3 - k0) <= deg_y),
        InequalityCheck(
            'deg Y >= h1 + (d+2-k0+r0)k0 - r0(r0+1)/2',
            deg_y,
            h1_value + (d + 2 - k0 + r0) * k0 - triangle,
            deg_y >= h1_value + (d + 2 - k0 + r0) * k0 - triangle,
        ),
    ]


@dataclass(frozen=True)
class DavisSplit:
    d0: int
    curve: MultiPoly
    expected_degree: int
    intersection: SchemeSpec
    intersection_profile: CastelnuovoProfile
    checks: Tuple[InequalityCheck, ...]

    @property
    def degree_matches(self) -> bool:
        return self.curve.degree() == self.expected_degree

    @property
    def verified(self) -> bool:
        return self.degree_matches and all(c.holds for c in self.checks)

    def to_document(self) -> Dict[str, Any]:
        return {
            'd0': self.d0,
            'curve': str(self.curve),
            'curve_degree': self.curve.degree(),
            'expected_degree': self.expected_degree,
            'degree_matches': self.degree_matches,
            'intersection': self.intersection.to_document(),
            'intersection_profile': self.intersection_profile.to_document(),
            'checks': [c.to_document() for c in self.checks],
            'verified': self.verified,
        }


def davis_split(x: SchemeSpec, d0: int, p: Optional[CastelnuovoProfile] = None) -> DavisSplit:
    """Splits off the fixed curve of the degree ``d0`` system at a plateau of C_X.

    A fixed curve whose degree differs from ``C_X(d0)`` is reported, with a
    warning, as an unverified split.

    Raises:
        InputError: ``d0 < a(X)`` or ``C_X(d0) != C_X(d0+1)`` or the plateau
            is at 0.
    """

    if p is None:
        p = profile(x)
    if d0 < p.a or p.value(d0) != p.value(d0 + 1) or p.value(d0) == 0:
        raise InputError(f'degree {d0} is not a plateau of the Castelnuovo function {list(p.values)} at or beyond a = {p.a}')

    curve = fixed_curve(x, d0)
    assert curve is not None
    expected = p.value(d0)
    if curve.degree() != expected:
        logger.warning('fixed curve %s in degree %d has degree %d, expected %d', curve, d0, curve.degree(), expected)

    intersection = x.intersect_curve(curve)
    q = profile(intersection)
    checks = tuple(
        InequalityCheck(
            f'C_(X∩D)({d}) = min(C_X({d}), C_X({d0}))',
            q.value(d),
            min(p.value(d), expected),
            q.value(d) == min(p.value(d), expected),
        )
        for d in range(p.t + 2)
    )
    logger.debug('split degree %d scheme along %s', x.degree, curve)
    return DavisSplit(d0, curve, expected, intersection, q, checks)


@dataclass(frozen=True)
class BarkatsReduction:
    d: int
    k: int
    y: SchemeSpec
    y_profile: CastelnuovoProfile
    splits: Tuple[DavisSplit, ...]
    checks: Tuple[InequalityCheck, ...] = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_document(self) -> Dict[str, Any]:
        return {
            'd': self.d,
            'k': self.k,
            'y_degree': self.y.degree,
            'y_profile': self.y_profile.to_document(),
            'splits': [s.to_document() for s in self.splits],
            'checks': [c.to_document() for c in self.checks],
            'holds': self.holds,
        }


def barkats_reduce(x: SchemeSpec, d: int) -> BarkatsReduction:
    """Reduces X to a non-decomposable subscheme Y with the same ``h1`` in degree d.

    Splits along the fixed curve at the largest plateau while the scheme is
    decomposable; Y then lies on a curve of degree ``k = a(Y)``.

    Raises:
        InputError: ``h1(J_X(d)) = 0`` or ``d <= a(X)``.
        InternalInconsistency: A split is not verified or does not terminate.
    """

    p = profile(x)
    target = p.h1_at(d)
    if target <= 0:
        raise InputError(f'h1 vanishes in degree {d}, there is nothing to reduce')
    if d <= p.a:
        raise InputError(f'degree {d} must exceed a(X) = {p.a}')

    current, current_profile = x, p
    splits: List[DavisSplit] = []
    while current_profile.decomposable:
        if len(splits) > x.degree:
            raise InternalInconsistency('Davis splitting does not terminate')
        assert current_profile.d0 is not None
        split = davis_split(current, current_profile.d0, current_profile)
        if not split.verified:
            raise InternalInconsistency(
                f'Davis split at degree {split.d0} failed: fixed curve {split.curve} of degree '
                f'{split.curve.degree()}, expected {split.expected_degree}'
            )
        splits.append(split)
        current, current_profile = split.intersection, split.intersection_profile

    k = current_profile.a
    r0 = current_profile.r0(d)
    y_h1 = current_profile.h1_at(d)
    checks = [
        InequalityCheck('h1(Y,d) = h1(X,d)', y_h1, target, y_h1 == target),
        InequalityCheck('k >= 3', k, 3, k >= 3),
        InequalityCheck('r0 <= k-2', r0, k - 2, r0 <= k - 2),
    ]
    checks.extend(reduction_bounds(y_h1, k, d, current.degree, r0))
    return BarkatsReduction(d, k, current, current_profile, tuple(splits), tuple(checks))


def scheme_multiplicity(x: SchemeSpec, point: Sequence[RationalLike]) -> int:
    """``mt(X, z)``, 0 when the scheme is not supported at z."""

    z = _normalize_point(point)
    for piece in x.pieces:
        if isinstance(piece, LocalPiece) and piece.point == z:
            return piece.multiplicity()
    return 0
