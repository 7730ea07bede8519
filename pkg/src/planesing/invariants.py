from dataclasses import dataclass
from fractions import Fraction
import itertools
import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .algebra import as_rational, bivariate_gcd, monomials_below, MultiPoly, RationalLike
from .config import config
from .errors import CommonComponentError, DomainLimitation, InputError, InternalInconsistency
from .localring import as_point, intersection_multiplicity, jet_ideal, JetIdeal, LocalIdeal, Point, tjurina_ideal
from .resolution import nu_s, resolve, SingularityRecord

"""

The γ-invariant of a germ relative to a scheme, bracketed between an
enumerated lower bound and the a priori upper bounds, and the maximal contact
of smooth germs with a scheme.

The enumerators only ever certify lower bounds. Candidates are generated in a
fixed order and the first candidate reaching the maximum is the witness.

"""

logger = logging.getLogger(__name__)

XLike = Union[LocalIdeal, JetIdeal]


def _local_scheme(x: XLike) -> JetIdeal:
    return jet_ideal(x)


@dataclass(frozen=True)
class GammaTerm:
    germ: MultiPoly
    intersection_degree: int
    intersection_number: int
    delta: int
    value: Fraction

    def to_document(self) -> Dict[str, Any]:
        return {
            'germ': str(self.germ),
            'intersection_degree': self.intersection_degree,
            'intersection_number': self.intersection_number,
            'delta': self.delta,
            'value': self.value,
        }


def _gamma_value(n: int, delta: int) -> Fraction:
    return Fraction(n * n, delta) + 2 * n + delta


def delta_cd(f: MultiPoly, g: MultiPoly, x: XLike, point: Sequence[RationalLike] = (0, 0)) -> int:
    """``Δ(C, D; X) = min((C, D)_z - deg(D ∩ X), deg(D ∩ X))``.

    ``f`` and ``g`` are global equations of C and D, X a scheme at ``point``
    given in coordinates centred there.

    Raises:
        CommonComponentError: C and D share a component through the point.
    """

    return _term(f, g, _local_scheme(x), as_point(point)).delta


def _term(f: MultiPoly, g: MultiPoly, x: JetIdeal, point: Point) -> GammaTerm:
    n = x.extend([g.translate(point)]).colength
    cd = intersection_multiplicity(f, g, point)
    delta = min(cd - n, n)
    return GammaTerm(g, n, cd, delta, _gamma_value(n, delta) if delta > 0 else Fraction(0))


@dataclass(frozen=True)
class GammaReport:
    lower: Fraction
    upper: Optional[Fraction]
    witness: Optional[GammaTerm]
    candidates: int
    on_boundary: bool

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_document(self) -> Dict[str, Any]:
        return {
            'lower': self.lower,
            'upper': self.upper,
            'exact': self.exact,
            'witness': self.witness.to_document() if self.witness is not None else None,
            'candidates': self.candidates,
            'on_boundary': self.on_boundary,
        }


def _grid(values: Optional[Sequence[RationalLike]]) -> List[Fraction]:
    if values is None:
        values = config[__name__]['budget_grid']
    grid: List[Fraction] = []
    for v in values:
        q = as_rational(v)
        if q != 0 and q not in grid:
            grid.append(q)
    if not grid:
        raise InputError('the coefficient grid needs a nonzero value')
    return grid


def default_budget_degree(f: MultiPoly, ideal: JetIdeal, point: Sequence[RationalLike] = (0, 0)) -> int:
    """Default total degree of the germs enumerated for γ."""

    p = as_point(point)
    try:
        nu = nu_s(resolve(f, p))
    except DomainLimitation:
        return ideal.order + 1
    return max(nu + 2, ideal.order + 1)


def _candidates(ideal: JetIdeal, degree: int, mult: int, grid: Sequence[Fraction]) -> Iterator[MultiPoly]:
    """Germs through the origin: elements of the scheme's ideal built from
    its echelon rows first, then sums of monomials by number of terms with
    leading coefficient 1."""

    columns = ideal.columns
    rows = [
        MultiPoly({columns[j]: c for j, c in row.items()})
        for row in ideal.rows if len(row) > 0 and 0 not in row
    ]
    rows = [g for g in rows if g.order() <= mult]
    yield from rows
    for a, b in itertools.combinations(rows, 2):
        for c in grid:
            yield a + b.scale(c)

    monomials = [m for m in monomials_below(degree + 1) if sum(m) >= 1]
    for size in range(1, len(monomials) + 1):
        for chosen in itertools.combinations(monomials, size):
            if sum(chosen[0]) > mult:
                continue
            for coeffs in itertools.product(grid, repeat=size - 1):
                yield MultiPoly(dict(zip(chosen, (Fraction(1),) + coeffs)))


def gamma_lower_bound(
    f: MultiPoly,
    x: Optional[XLike] = None,
    point: Sequence[RationalLike] = (0, 0),
    upper: Optional[Fraction] = None,
    budget_degree: Optional[int] = None,
    budget_mult: Optional[int] = None,
    grid: Optional[Sequence[RationalLike]] = None,
) -> GammaReport:
    """Maximises the γ-term over enumerated germs D.

    X defaults to the Tjurina ideal. Germs have total degree at most
    ``budget_degree`` and multiplicity at most ``budget_mult`` (default: the
    multiplicity of C), with coefficients from the grid. The degree defaults
    to ``ν^s + 2``, raised to ``N + 1`` for the order N with ``m^N ⊆ X``; a
    germ that does not resolve over the rationals gets ``N + 1`` alone.
    Enumeration stops early once ``upper`` (default ``(deg X + 1)^2``) is
    reached.

    Raises:
        InputError: X does not contain the Tjurina ideal, or no candidate
            survives.
        InternalInconsistency: A candidate has ``Δ < 1``.
    """

    p = as_point(point)
    ideal = _local_scheme(x if x is not None else tjurina_ideal(f, p))
    local_f = f.translate(p)
    for g in (local_f, local_f.diff('x'), local_f.diff('y')):
        if not ideal.contains(g):
            raise InputError('the scheme must contain the Tjurina ideal of the curve')

    cfg = config[__name__]
    degree = budget_degree if budget_degree is not None else cfg.get('budget_degree')
    if degree is None:
        degree = default_budget_degree(f, ideal, p)
    mult = budget_mult if budget_mult is not None else cfg.get('budget_mult', local_f.order())
    cap = cfg.positive_int('max_candidates')
    ceiling = upper if upper is not None else Fraction((ideal.colength + 1) ** 2)
    back = (-p[0], -p[1])

    best: Optional[GammaTerm] = None
    count = 0
    for local_g in _candidates(ideal, int(degree), int(mult), _grid(grid)):
        if count >= cap:
            break
        count += 1
        n = ideal.extend([local_g]).colength
        if best is not None and Fraction((n + 1) ** 2) <= best.value:
            continue
        g = local_g.translate(back)
        common = bivariate_gcd(f, g)
        if common.degree() > 0 and common.evaluate(p) == 0:
            continue
        try:
            term = _term(f, g, ideal, p)
        except CommonComponentError:
            continue
        if term.delta < 1:
            raise InternalInconsistency(f'Δ = {term.delta} for the germ {g}')
        if best is None or term.value > best.value:
            best = term
            if best.value >= ceiling:
                break

    if best is None:
        raise InputError('no admissible germ within the search budget')
    witness_germ = best.germ.translate(p)
    on_boundary = witness_germ.degree() >= degree or witness_germ.order() >= mult
    if on_boundary and best.value < ceiling:
        logger.warning('γ maximum %s sits on the search boundary (witness %s)', best.value, best.germ)
    logger.debug('γ lower bound %s after %d candidates', best.value, count)
    return GammaReport(best.value, upper, best, count, on_boundary)


def gamma_upper_bound(entry: Union[int, SingularityRecord]) -> Fraction:
    """Upper bound ``(τ′ + 1)^2`` for γ^es, sharpened for ordinary points.

    Ordinary points of multiplicity m get 4 (m = 2), 18 (m = 3) and
    ``16/7·m^2`` otherwise.

    Raises:
        InputError: The record carries no τ^es.
    """

    if isinstance(entry, SingularityRecord):
        if entry.ordinary:
            if entry.m == 2:
                return Fraction(4)
            if entry.m == 3:
                return Fraction(18)
            return Fraction(16 * entry.m * entry.m, 7)
        if entry.tau_es is None:
            raise InputError('γ^es bound needs τ^es')
        return Fraction((entry.tau_es + 1) ** 2)
    if entry < 0:
        raise InputError(f'τ′ must be nonnegative, got {entry}')
    return Fraction((entry + 1) ** 2)


def gamma_ea_upper_bound(tau: int) -> Fraction:
    """``(τ + 1)^2``, bounding γ^ea."""
    return gamma_upper_bound(tau)


@dataclass(frozen=True)
class SmoothContact:
    value: int
    cap: int
    witness: MultiPoly
    candidates: int

    def to_document(self) -> Dict[str, Any]:
        return {'value': self.value, 'cap': self.cap, 'witness': str(self.witness), 'candidates': self.candidates}


def _smooth_candidates(order: int, grid: Sequence[Fraction]) -> Iterator[MultiPoly]:
    values = [Fraction(0)] + list(grid)
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    tail = max(order - 2, 0)
    for slope in values:
        for coeffs in itertools.product(values, repeat=tail):
            g = x - y.scale(slope)
            for j, c in enumerate(coeffs, start=2):
                g = g - (y ** j).scale(c)
            yield g
    for coeffs in itertools.product(values, repeat=tail):
        g = y
        for j, c in enumerate(coeffs, start=2):
            g = g - (x ** j).scale(c)
        yield g


def smooth_intersection_max(
    x: XLike,
    nu_prime: Optional[int] = None,
    grid: Optional[Sequence[RationalLike]] = None,
) -> SmoothContact:
    """Largest ``deg(D ∩ X)`` over enumerated smooth germs D at the origin.

    Germs are graphs ``x = φ(y)`` or ``y = φ(x)`` with jet coefficients from
    the grid up to the order where X contains the maximal ideal power. The
    value never exceeds ``ν′ + 1``.
    """

    ideal = _local_scheme(x)
    nu = nu_prime if nu_prime is not None else ideal.order - 1
    cap = config[__name__].positive_int('max_candidates')
    best_value = -1
    best: Optional[MultiPoly] = None
    count = 0
    for g in _smooth_candidates(ideal.order, _grid(grid)):
        if count >= cap:
            break
        count += 1
        n = ideal.extend([g]).colength
        if n > best_value:
            best_value, best = n, g
            if n >= nu + 1:
                break
    assert best is not None
    if best_value > nu + 1:
        raise InternalInconsistency(f'smooth germ {best} meets the scheme in degree {best_value} > ν′+1 = {nu + 1}')
    return SmoothContact(best_value, nu + 1, best, count)
