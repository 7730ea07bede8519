from dataclasses import dataclass, field
from fractions import Fraction
import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .algebra import (
    bivariate_gcd,
    factor,
    homogeneous_monomials,
    is_squarefree,
    linear_change,
    MultiPoly,
    PolynomialIdeal,
    PROJECTIVE,
    rational_roots,
)
from .catalog import describe_germ
from .config import config
from .criteria import compare, CriterionResult
from .errors import DomainLimitation, InputError, InternalInconsistency, IrrationalBranchPoint
from .localring import milnor_number, tjurina_number
from .resolution import SingularityRecord

"""

Explicit families of cuspidal curves over the rationals and the verification
of their singular loci.

Generic members are drawn from a seeded random stream and accepted only with
a rational certificate (Gröbner bases and gcds). Singular points with
irrational coordinates are never resolved one by one: they are grouped into
Galois-stable clusters whose Milnor and Tjurina numbers are read off
localised quotient dimensions.

"""

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]

_IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _as_form(c: MultiPoly) -> MultiPoly:
    if c.variables == PROJECTIVE:
        form = c
    elif len(c.variables) == 2:
        form = c.rename(('x', 'y')).homogenize('z')
    else:
        raise InputError(f'plane curves live in x, y or x, y, z, got {c.variables!r}')
    if form.is_zero() or form.degree() < 1:
        raise InputError('a plane curve needs an equation of positive degree')
    if not form.is_homogeneous():
        raise InputError(f'{c} is not homogeneous')
    return form


def _affine(form: MultiPoly) -> MultiPoly:
    return form.dehomogenize(2)


def _at_infinity(form: MultiPoly) -> MultiPoly:
    """Restriction to the line ``z = 0`` as a binary form in x, y."""
    return MultiPoly({m[:2]: c for m, c in form.terms.items() if m[2] == 0})


def _partials(form: MultiPoly) -> List[MultiPoly]:
    return [form.diff(v) for v in PROJECTIVE]


def _gcd_all(polys: Sequence[MultiPoly]) -> MultiPoly:
    g = MultiPoly.zero(polys[0].variables)
    for p in polys:
        g = bivariate_gcd(g, p)
    return g


def _meets_line_at_infinity(polys: Sequence[MultiPoly]) -> bool:
    g = _gcd_all([_at_infinity(p) for p in polys])
    return g.is_zero() or g.degree() > 0


def singular_at_infinity(form: MultiPoly) -> bool:
    return _meets_line_at_infinity([form] + _partials(form))


def is_smooth_curve(c: MultiPoly) -> bool:
    form = _as_form(c)
    f = _affine(form)
    if not PolynomialIdeal([f, f.diff('x'), f.diff('y')]).is_unit():
        return False
    return not singular_at_infinity(form)


def meet_transversally(a: MultiPoly, b: MultiPoly) -> bool:
    """Whether two curves meet in ``deg a · deg b`` distinct affine points."""

    a, b = _as_form(a), _as_form(b)
    if _meets_line_at_infinity([a, b]):
        return False
    ideal = PolynomialIdeal([_affine(a), _affine(b)])
    if not ideal.is_zero_dimensional():
        return False
    n = ideal.quotient_dimension()
    return n == a.degree() * b.degree() and ideal.radical().quotient_dimension() == n


def _avoids(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> bool:
    return PolynomialIdeal([_affine(a), _affine(b), _affine(c)]).is_unit()


def _random_form(rng: random.Random, degree: int, bound: int) -> MultiPoly:
    while True:
        form = MultiPoly(
            {m: rng.randint(-bound, bound) for m in homogeneous_monomials(degree)},
            PROJECTIVE,
        )
        if not form.is_zero():
            return form


def _det(m: Matrix) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _random_matrix(rng: random.Random, bound: int) -> Matrix:
    def row() -> Tuple[int, int, int]:
        return (rng.randint(-bound, bound), rng.randint(-bound, bound), rng.randint(-bound, bound))

    while True:
        m: Matrix = (row(), row(), row())
        if _det(m) != 0:
            return m


def _map_point(m: Matrix, point: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    image = [sum((Fraction(c) * v for c, v in zip(row, point)), Fraction(0)) for row in m]
    scale = next(v for v in reversed(image) if v != 0)
    return (image[0] / scale, image[1] / scale, image[2] / scale)


@dataclass(frozen=True)
class SingularCluster:
    """A rational singular point, or a Galois-stable set of conjugate ones.

    ``mu`` and ``tau`` are totals over the cluster; ``label`` describes each
    of its (conjugate, hence equisingular) points.
    """

    points: int
    mu: int
    tau: int
    label: Optional[str]
    defining: Tuple[MultiPoly, ...]
    point: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    record: Optional[SingularityRecord] = None

    @property
    def rational(self) -> bool:
        return self.point is not None

    def to_document(self) -> Dict[str, Any]:
        return {
            'points': self.points,
            'mu': self.mu,
            'tau': self.tau,
            'label': self.label,
            'defining': [str(g) for g in self.defining],
            'point': list(self.point) if self.point is not None else None,
            'record': self.record.to_document() if self.record is not None else None,
        }


@dataclass(frozen=True)
class SingularLocus:
    curve: MultiPoly
    chart: Matrix
    clusters: Tuple[SingularCluster, ...]
    total_mu: int
    total_tau: int
    ideal: PolynomialIdeal = field(compare=False, repr=False)

    @property
    def total_points(self) -> int:
        return sum(c.points for c in self.clusters)

    def label_counts(self) -> Dict[Optional[str], int]:
        counts: Dict[Optional[str], int] = {}
        for c in self.clusters:
            counts[c.label] = counts.get(c.label, 0) + c.points
        return counts

    def confined_to(self, curves: Sequence[MultiPoly]) -> bool:
        """Whether every singular point lies on each of the given curves."""

        for c in curves:
            moved = linear_change(_as_form(c), self.chart)
            if not self.ideal.contains(_affine(moved)):
                return False
        return True

    def to_document(self) -> Dict[str, Any]:
        return {
            'curve': str(self.curve),
            'chart': [list(row) for row in self.chart],
            'total_points': self.total_points,
            'total_mu': self.total_mu,
            'total_tau': self.total_tau,
            'clusters': [c.to_document() for c in self.clusters],
        }


def _stable_dimension(ideal: PolynomialIdeal, equations: Sequence[MultiPoly]) -> int:
    """Dimension of the quotient localised at the zeros of ``equations``.

    Adds growing powers of the equations until two consecutive powers give the
    same quotient, which then equals the localisation.
    """

    n = 1
    while True:
        low = ideal.extend([e ** n for e in equations]).quotient_dimension()
        high = ideal.extend([e ** (n + 1) for e in equations]).quotient_dimension()
        if low == high:
            return low
        logger.debug('localisation not stable at power %d (%d < %d)', n, low, high)
        n *= 2


def _milnor_ideal(f: MultiPoly) -> PolynomialIdeal:
    """``<f_x, f_y, f^N>`` with N large enough to discard critical points off the curve."""

    base = PolynomialIdeal([f.diff('x'), f.diff('y')])
    n = 1
    while True:
        low = base.extend([f ** n])
        if low.quotient_dimension() == base.extend([f ** (n + 1)]).quotient_dimension():
            return low
        n *= 2


def _label(mu: int) -> Optional[str]:
    if mu == 1:
        return 'A1'
    if mu == 2:
        return 'A2'
    return None


def _rational_cluster(
    f: MultiPoly, chart: Matrix, point: Tuple[Fraction, Fraction],
) -> SingularCluster:
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    defining = (x - point[0], y - point[1])
    original = _map_point(chart, (point[0], point[1], Fraction(1)))
    try:
        record = describe_germ(f, point)
    except IrrationalBranchPoint as e:
        logger.info('point %s needs irrational blowups (%s), reporting local numbers only', original, e)
        mu = milnor_number(f, point)
        return SingularCluster(1, mu, tjurina_number(f, point), _label(mu), defining, original)
    tau = record.tau if record.tau is not None else tjurina_number(f, point)
    return SingularCluster(1, record.mu, tau, record.label, defining, original, record)


def curve_singular_locus(c: MultiPoly, seed: int = 0) -> SingularLocus:
    """Singular points of a reduced plane curve with exact total Milnor and
    Tjurina numbers.

    If the curve is singular on the line ``z = 0``, coordinates are changed by
    a seeded random integer matrix first; rational points are reported in the
    original coordinates, cluster equations in the chart.

    Raises:
        InputError: The curve is not reduced.
        DomainLimitation: No chart without singular points at infinity was
            found within the retry cap.
    """

    form = _as_form(c)
    if not is_squarefree(form):
        raise InputError(f'{c} is not reduced')

    cfg = config[__name__]
    rng = random.Random(seed)
    chart = _IDENTITY
    moved = form
    for attempt in range(cfg.positive_int('retry_cap')):
        if not singular_at_infinity(moved):
            break
        chart = _random_matrix(rng, cfg.positive_int('coefficient_bound'))
        moved = linear_change(form, chart)
        logger.debug('singular at infinity, trying chart %s (attempt %d)', chart, attempt + 1)
    else:
        raise DomainLimitation('no coordinate chart keeps the singular points affine')

    f = _affine(moved)
    tjurina = PolynomialIdeal([f, f.diff('x'), f.diff('y')])
    if not tjurina.is_zero_dimensional():
        raise InputError(f'{c} has non-isolated singularities')
    total_tau = tjurina.quotient_dimension()
    if total_tau == 0:
        return SingularLocus(form, chart, (), 0, 0, tjurina)

    milnor = _milnor_ideal(f)
    total_mu = milnor.quotient_dimension()
    radical = tjurina.radical()

    x = MultiPoly.variable('x')
    rational: List[Tuple[Fraction, Fraction]] = []
    groups: List[Tuple[MultiPoly, ...]] = []
    roots, irreducible = rational_roots(radical.eliminant('x'))
    for a, _ in roots:
        over = radical.extend([x - a])
        y_roots, y_irreducible = rational_roots(over.eliminant('y'))
        rational.extend((a, b) for b, _ in y_roots)
        groups.extend((x - a, h) for h in y_irreducible)
    groups.extend((q,) for q in irreducible)

    clusters = [_rational_cluster(f, chart, p) for p in rational]
    for equations in groups:
        points = radical.extend(equations).quotient_dimension()
        if len(groups) == 1 and not rational:
            tau, mu = total_tau, total_mu
        else:
            tau = _stable_dimension(tjurina, equations)
            mu = _stable_dimension(milnor, equations)
        if mu % points != 0:
            raise InternalInconsistency(f'conjugate points {equations} with total μ = {mu} over {points} points')
        clusters.append(SingularCluster(points, mu, tau, _label(mu // points), equations))

    if sum(cl.tau for cl in clusters) != total_tau or sum(cl.mu for cl in clusters) != total_mu:
        raise InternalInconsistency('local Milnor or Tjurina numbers do not add up to the totals')
    logger.info('%d singular points, total μ = %d, total τ = %d', sum(cl.points for cl in clusters), total_mu, total_tau)
    return SingularLocus(form, chart, tuple(clusters), total_mu, total_tau, radical)


def verify_singularities(c: MultiPoly, seed: int = 0) -> List[SingularCluster]:
    return list(curve_singular_locus(c, seed).clusters)


def irreducibility_certificate(c: MultiPoly) -> str:
    """Factorisation over the rationals; absolute irreducibility is not decided."""

    factors = factor(_as_form(c))
    if len(factors) == 1 and factors[0][1] == 1:
        return 'irreducible over Q, absolute irreducibility not certified'
    return 'reducible over Q'


@dataclass(frozen=True)
class ZariskiInstance:
    """``C_d = A^3 F + B^2 G`` with A of degree 2p, B of degree 3p and F, G of degree d - 6p."""

    p: int
    d: int
    seed: int
    a: MultiPoly
    b: MultiPoly
    f: MultiPoly
    g: MultiPoly
    curve: MultiPoly
    attempts: int
    irreducibility: str = 'not certified'

    @property
    def expected_cusps(self) -> int:
        return 6 * self.p * self.p

    def to_document(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'd': self.d,
            'seed': self.seed,
            'attempts': self.attempts,
            'A': str(self.a),
            'B': str(self.b),
            'F': str(self.f),
            'G': str(self.g),
            'curve': str(self.curve),
            'expected_cusps': self.expected_cusps,
            'irreducibility': self.irreducibility,
        }


def _draw(p: int, d: int, seed: int, fixed_factors: bool, check: bool) -> ZariskiInstance:
    cfg = config[__name__]
    bound = cfg.positive_int('coefficient_bound')
    rng = random.Random(seed)
    rest = d - 6 * p
    one = MultiPoly.constant(1, PROJECTIVE)
    for attempt in range(1, cfg.positive_int('retry_cap') + 1):
        a = _random_form(rng, 2 * p, bound)
        b = _random_form(rng, 3 * p, bound)
        if fixed_factors:
            f, g = one, one
        else:
            f = _random_form(rng, rest, bound)
            g = _random_form(rng, rest, bound)
        if not is_smooth_curve(a):
            logger.debug('draw %d: A is singular', attempt)
            continue
        if not meet_transversally(a, b):
            logger.debug('draw %d: A and B are not transverse', attempt)
            continue
        if rest > 0 and not (_avoids(a, b, f) and _avoids(a, b, g)):
            logger.debug('draw %d: F or G passes through A ∩ B', attempt)
            continue
        curve = a ** 3 * f + b ** 2 * g
        if curve.degree() != d:
            raise InternalInconsistency(f'assembled curve has degree {curve.degree()}, expected {d}')
        irreducibility = irreducibility_certificate(curve) if check else 'not certified'
        instance = ZariskiInstance(p, d, seed, a, b, f, g, curve, attempt, irreducibility)
        logger.info('cuspidal curve of degree %d after %d draws', d, attempt)
        return instance
    raise DomainLimitation(f'no generic draw for p = {p}, d = {d} within {cfg.positive_int("retry_cap")} attempts')


def zariski_curve(p: int, d: int, seed: int = 0, certify_irreducibility: bool = False) -> ZariskiInstance:
    """Draws a curve of degree d with 6p² cusps on the intersection of a
    curve of degree 2p and one of degree 3p.

    Raises:
        InputError: Unless ``d > 6p >= 6``.
        DomainLimitation: Every draw within the retry cap was degenerate.
    """

    if p < 1:
        raise InputError(f'p must be positive, got {p}')
    if d <= 6 * p:
        raise InputError(f'the construction needs d > 6p = {6 * p}, got d = {d}')
    return _draw(p, d, seed, False, certify_irreducibility)


def zariski_sextic(seed: int = 0) -> ZariskiInstance:
    """``A^3 + B^2`` for a smooth conic A and a cubic B meeting it transversally."""
    return _draw(1, 6, seed, True, False)


@dataclass(frozen=True)
class ZariskiReport:
    instance: ZariskiInstance
    locus: SingularLocus
    confined: bool

    @property
    def verified(self) -> bool:
        n = self.instance.expected_cusps
        return (
            self.confined
            and self.locus.total_points == n
            and self.locus.total_tau == 2 * n
            and self.locus.total_mu == 2 * n
            and all(c.label == 'A2' for c in self.locus.clusters)
        )

    def to_document(self) -> Dict[str, Any]:
        return {
            'instance': self.instance.to_document(),
            'locus': self.locus.to_document(),
            'confined_to_A_and_B': self.confined,
            'verified': self.verified,
        }


def verify_zariski(instance: ZariskiInstance, seed: int = 0) -> ZariskiReport:
    locus = curve_singular_locus(instance.curve, seed)
    confined = locus.confined_to([instance.a, instance.b])
    report = ZariskiReport(instance, locus, confined)
    if not report.verified:
        logger.warning('singular locus of the degree %d curve differs from 6p² = %d cusps', instance.d, instance.expected_cusps)
    return report


@dataclass(frozen=True)
class FamilyDimensions:
    p: int
    d: int
    expected: Fraction
    constructed: Fraction
    constructed_closed_form: Fraction
    window_valid: bool

    @property
    def constructed_larger(self) -> bool:
        return self.constructed > self.expected

    def to_document(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'd': self.d,
            'dim_expected_component': self.expected,
            'dim_constructed_family': self.constructed,
            'window_valid': self.window_valid,
            'constructed_larger': self.constructed_larger,
        }


def in_window(p: int, d: int) -> bool:
    """``p >= 15`` and ``6p < d <= 12p - 3/2 - sqrt(35p^2 - 15p + 1/4)``, compared by squaring."""

    if p < 15 or d <= 6 * p:
        return False
    gap = Fraction(24 * p - 3, 2) - d
    return gap >= 0 and gap * gap >= 35 * p * p - 15 * p + Fraction(1, 4)


def family_dimensions(p: int, d: int) -> FamilyDimensions:
    """Dimensions of the component of expected dimension and of the
    constructed family ``A^3 F + B^2 G``, the latter both as the sum over the
    four component spaces and in closed form.

    Raises:
        InputError: p or d is not positive.
        InternalInconsistency: The two forms disagree.
    """

    if p < 1 or d < 1:
        raise InputError(f'p and d must be positive, got p = {p}, d = {d}')
    half = Fraction(1, 2)
    expected = half * d * (d + 3) - 12 * p * p
    rest = d - 6 * p
    constructed = (
        half * 2 * p * (2 * p + 3)
        + half * 3 * p * (3 * p + 3)
        + rest * (rest + 3)
        + 1
    )
    closed = expected + half * d * d - d * (12 * p - Fraction(3, 2)) + half * (109 * p * p - 21 * p + 2)
    if closed != constructed:
        raise InternalInconsistency(f'family dimension {constructed} differs from its closed form {closed}')
    return FamilyDimensions(p, d, expected, constructed, closed, in_window(p, d))


def existence_check(p: int, d: int) -> List[CriterionResult]:
    """Numerical conditions behind the construction with 6p² cusps in degree d."""

    cusps = 6 * p * p
    return [
        compare(
            'cusp_existence', '6p^2 < ((d-1)(d-2) + 2) / 4',
            cusps, Fraction((d - 1) * (d - 2) + 2, 4), '<',
        ),
        compare(
            'cusp_existence_lowest_degree', '6p^2 < ((6p-1)(6p-2) + 2) / 4',
            cusps, Fraction((6 * p - 1) * (6 * p - 2) + 2, 4), '<',
        ),
        compare('nori_cusps', '6 * 6p^2 < d^2', 6 * cusps, d * d, '<'),
    ]
