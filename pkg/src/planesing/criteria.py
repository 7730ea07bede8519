from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
import logging
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .catalog import catalog_record, parse_type_list
from .errors import InputError
from .invariants import gamma_ea_upper_bound
from .resolution import SingularityRecord

"""

Numerical criteria for equisingular families of plane curves of degree d.

Each criterion compares an exact left-hand side with an exact right-hand side
and yields a verdict. Missing invariants make a criterion inapplicable; no
value is ever guessed. Criteria built from several inequalities report each
of them as an item.

"""

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]

_INCONCLUSIVE = 'inconclusive: sufficient condition not met'


class Verdict(Enum):
    PASS = 'pass'
    FAIL = 'fail'
    INAPPLICABLE = 'inapplicable'


@dataclass(frozen=True)
class CriterionResult:
    name: str
    formula: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    verdict: Verdict
    notes: str = ''
    items: Tuple['CriterionResult', ...] = field(default_factory=tuple)

    def to_document(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            'name': self.name,
            'formula': self.formula,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'verdict': self.verdict.value,
        }
        if self.notes:
            doc['notes'] = self.notes
        if self.items:
            doc['items'] = [item.to_document() for item in self.items]
        return doc


_RELATIONS: Mapping[str, Callable[[Fraction, Fraction], bool]] = {
    '<': lambda a, b: a < b,
    '<=': lambda a, b: a <= b,
    '>': lambda a, b: a > b,
}


def compare(name: str, formula: str, lhs: Number, rhs: Number, relation: str, notes: str = '') -> CriterionResult:
    left = Fraction(lhs)
    right = Fraction(rhs)
    verdict = Verdict.PASS if _RELATIONS[relation](left, right) else Verdict.FAIL
    return CriterionResult(name, formula, left, right, verdict, notes)


def _inapplicable(name: str, formula: str, notes: str) -> CriterionResult:
    return CriterionResult(name, formula, None, None, Verdict.INAPPLICABLE, notes)


def _conjunction(name: str, formula: str, items: Sequence[CriterionResult], notes: str = '') -> CriterionResult:
    verdicts = [item.verdict for item in items]
    if Verdict.FAIL in verdicts:
        verdict = Verdict.FAIL
    elif Verdict.INAPPLICABLE in verdicts:
        verdict = Verdict.INAPPLICABLE
    else:
        verdict = Verdict.PASS
    return CriterionResult(name, formula, None, None, verdict, notes, tuple(items))


@dataclass(frozen=True)
class CurveSummary:
    """Degree and singularities of a plane curve."""

    d: int
    singularities: Tuple[SingularityRecord, ...] = ()

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InputError(f'curve degree must be positive, got {self.d}')

    @property
    def nodes(self) -> int:
        return sum(1 for s in self.singularities if s.is_node)

    @property
    def cusps(self) -> int:
        return sum(1 for s in self.singularities if s.is_cusp)

    def only_nodes_and_cusps(self) -> bool:
        return all(s.is_node or s.is_cusp for s in self.singularities)

    def all_ordinary(self) -> bool:
        return all(s.ordinary for s in self.singularities)

    def ordinary_multiplicities(self) -> List[int]:
        return sorted(s.m for s in self.singularities if s.ordinary)

    def with_degree(self, d: int) -> 'CurveSummary':
        return replace(self, d=d)

    def to_document(self) -> Dict[str, Any]:
        return {
            'd': self.d,
            'n': self.nodes,
            'k': self.cusps,
            'singularities': [s.to_document() for s in self.singularities],
        }

    @classmethod
    def from_types(cls, d: int, types: Iterable[Tuple[str, int]]) -> 'CurveSummary':
        records: List[SingularityRecord] = []
        for name, count in types:
            records.extend([catalog_record(name, True)] * count)
        return cls(d, tuple(records))

    @classmethod
    def from_document(cls, doc: Mapping[str, Any]) -> 'CurveSummary':
        """Reads a summary from a parsed YAML or JSON document.

        Accepted keys: ``d`` (required), ``n`` and ``k`` (node and cusp
        counts), ``types`` (``"20*A1, 5*A2"``) and ``singularities``, a list
        of catalog references ``{type, count, ...overrides}`` or full
        records.

        Raises:
            InputError: The document is malformed.
        """

        if not isinstance(doc, Mapping):
            raise InputError('curve summary must be a mapping')
        d = doc.get('d')
        if isinstance(d, bool) or not isinstance(d, int):
            raise InputError(f'curve summary needs an integer degree d, got {d!r}')

        types: List[Tuple[str, int]] = []
        for key, name in (('n', 'A1'), ('k', 'A2')):
            count = doc.get(key, 0)
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise InputError(f'{key!r} must be a nonnegative integer, got {count!r}')
            if count:
                types.append((name, count))
        if doc.get('types'):
            types.extend(parse_type_list(str(doc['types'])))
        summary = cls.from_types(d, types)

        records = list(summary.singularities)
        for entry in doc.get('singularities') or []:
            if not isinstance(entry, Mapping):
                raise InputError(f'malformed singularity entry {entry!r}')
            count = entry.get('count', 1)
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise InputError(f'malformed singularity count {count!r}')
            if 'type' in entry:
                base = catalog_record(str(entry['type']), True)
                overrides = {k: v for k, v in entry.items() if k not in ('type', 'count')}
                if overrides:
                    merged = base.to_document()
                    merged.update(overrides)
                    base = SingularityRecord.from_document(merged)
                records.extend([base] * count)
            else:
                records.extend([SingularityRecord.from_document(entry)] * count)
        return cls(d, tuple(records))


def _smoothness_rhs(d: int) -> int:
    return d * d + 6 * d + 8


def check_smoothness_gamma(s: CurveSummary) -> CriterionResult:
    """Σ γ^es < d² + 6d + 8, with upper bounds where γ is not known exactly."""

    name = 'smoothness_gamma'
    formula = 'sum gamma^es(S_i) < d^2 + 6d + 8'
    values: List[Fraction] = []
    bounded = False
    for record in s.singularities:
        if record.gamma_exact and record.gamma_lower is not None:
            values.append(record.gamma_lower)
        elif record.gamma_upper is not None:
            values.append(record.gamma_upper)
            bounded = True
        else:
            return _inapplicable(name, formula, 'gamma^es unknown for some singularity')
    notes = 'conservative: upper bounds of gamma used' if bounded else ''
    return compare(name, formula, sum(values, Fraction(0)), _smoothness_rhs(s.d), '<', notes)


def check_smoothness_gamma_ea(s: CurveSummary) -> CriterionResult:
    name = 'smoothness_gamma_ea'
    formula = 'sum (tau(S_i)+1)^2 < d^2 + 6d + 8'
    if any(r.tau is None for r in s.singularities):
        return _inapplicable(name, formula, 'tau unknown for some singularity')
    total = sum((gamma_ea_upper_bound(r.tau) for r in s.singularities if r.tau is not None), Fraction(0))
    return compare(name, formula, total, _smoothness_rhs(s.d), '<', 'conservative: (tau+1)^2 bounds gamma^ea')


def check_smoothness_tau(s: CurveSummary) -> CriterionResult:
    name = 'smoothness_tau'
    formula = "sum (tau'(S_i)+1)^2 < d^2 + 6d + 8"
    if any(r.tau_es is None for r in s.singularities):
        return _inapplicable(name, formula, "tau' unknown for some singularity")
    total = sum(((r.tau_es or 0) + 1) ** 2 for r in s.singularities)
    return compare(name, formula, total, _smoothness_rhs(s.d), '<')


def check_smoothness_nodes_cusps(s: CurveSummary) -> CriterionResult:
    name = 'smoothness_nodes_cusps'
    formula = '4n + 9k < d^2 + 6d + 8'
    if not s.only_nodes_and_cusps():
        return _inapplicable(name, formula, 'singularities other than nodes and cusps')
    return compare(name, formula, 4 * s.nodes + 9 * s.cusps, _smoothness_rhs(s.d), '<')


def check_smoothness_ordinary(s: CurveSummary) -> CriterionResult:
    name = 'smoothness_ordinary'
    formula = '4 #nodes + 18 #triple points + sum_{m_i >= 4} 16/7 m_i^2 < d^2 + 6d + 8'
    if not s.all_ordinary():
        return _inapplicable(name, formula, 'not all singularities are ordinary')
    total = Fraction(0)
    for m in s.ordinary_multiplicities():
        total += 4 if m == 2 else 18 if m == 3 else Fraction(16 * m * m, 7)
    return compare(name, formula, total, _smoothness_rhs(s.d), '<')


def check_irreducibility(s: CurveSummary) -> CriterionResult:
    name = 'irreducibility'
    formula = "max nu' <= 2/5 d - 1, sum (nu'+2)^2 < 9/10 d^2, 25/2 #nodes + 18 #cusps + sum_{tau'>=3} (tau'+2)^2 < d^2"
    d = s.d
    if any(r.tau_es is None for r in s.singularities):
        return _inapplicable(name, formula, "tau' unknown for some singularity")
    nus = [r.nu_s for r in s.singularities]
    large = sum(
        ((r.tau_es or 0) + 2) ** 2 for r in s.singularities
        if (r.tau_es or 0) >= 3
    )
    items = [
        compare('max_nu', "max nu' <= 2/5 d - 1", max(nus, default=0), Fraction(2 * d, 5) - 1, '<='),
        compare('sum_nu', "sum (nu'+2)^2 < 9/10 d^2", sum((n + 2) ** 2 for n in nus), Fraction(9 * d * d, 10), '<'),
        compare(
            'weighted_sum',
            "25/2 #nodes + 18 #cusps + sum_{tau'>=3} (tau'+2)^2 < d^2",
            Fraction(25, 2) * s.nodes + 18 * s.cusps + large,
            d * d,
            '<',
        ),
    ]
    return _conjunction(name, formula, items)


def check_irreducibility_weak(s: CurveSummary) -> CriterionResult:
    name = 'irreducibility_weak'
    formula = "max tau' <= 2/5 d - 1, 25/2 #nodes + 18 #cusps + 10/9 sum_{tau'>=3} (tau'+2)^2 < d^2"
    if any(r.tau_es is None for r in s.singularities):
        return _inapplicable(name, formula, "tau' unknown for some singularity")
    taus = [r.tau_es or 0 for r in s.singularities]
    large = Fraction(10, 9) * sum((t + 2) ** 2 for t in taus if t >= 3)
    items = [
        compare('max_tau', "max tau' <= 2/5 d - 1", max(taus, default=0), Fraction(2 * s.d, 5) - 1, '<='),
        compare(
            'weighted_sum',
            "25/2 #nodes + 18 #cusps + 10/9 sum_{tau'>=3} (tau'+2)^2 < d^2",
            Fraction(25, 2) * s.nodes + 18 * s.cusps + large,
            s.d * s.d,
            '<',
        ),
    ]
    return _conjunction(name, formula, items)


def check_irreducibility_nodes_cusps(s: CurveSummary) -> CriterionResult:
    name = 'irreducibility_nodes_cusps'
    formula = '25/2 n + 18 k < d^2'
    if not s.only_nodes_and_cusps():
        return _inapplicable(name, formula, 'singularities other than nodes and cusps')
    return compare(name, formula, Fraction(25, 2) * s.nodes + 18 * s.cusps, s.d * s.d, '<')


def check_irreducibility_ordinary(s: CurveSummary) -> CriterionResult:
    name = 'irreducibility_ordinary'
    formula = 'max m_i <= 2/5 d, 25/2 #nodes + sum_{m_i>=3} m_i^2 (m_i+1)^2 / 4 < d^2'
    if not s.all_ordinary():
        return _inapplicable(name, formula, 'not all singularities are ordinary')
    ms = s.ordinary_multiplicities()
    items = [
        compare('max_m', 'max m_i <= 2/5 d', max(ms, default=0), Fraction(2 * s.d, 5), '<='),
        compare(
            'weighted_sum',
            '25/2 #nodes + sum_{m_i>=3} m_i^2 (m_i+1)^2 / 4 < d^2',
            Fraction(25, 2) * ms.count(2) + sum(Fraction(m * m * (m + 1) ** 2, 4) for m in ms if m >= 3),
            s.d * s.d,
            '<',
        ),
    ]
    return _conjunction(name, formula, items)


def check_existence_and_nori(s: CurveSummary) -> List[CriterionResult]:
    """Existence conditions and the numerical condition for an abelian
    fundamental group of the complement.

    The sufficient conditions can only confirm; a failed one is reported as
    inconclusive.
    """

    d = s.d
    mu = sum(r.mu for r in s.singularities)
    sufficient = compare(
        'existence_sufficient', 'sum mu(S_i) < (d+2)^2 / 46', mu, Fraction((d + 2) ** 2, 46), '<',
    )
    if sufficient.verdict is Verdict.FAIL:
        sufficient = replace(sufficient, notes=_INCONCLUSIVE)
    results = [
        sufficient,
        compare('existence_necessary', 'sum mu(S_i) <= (d-1)^2', mu, (d - 1) ** 2, '<='),
    ]
    formula = 'sum m_i (m_i - 1) <= (d-1)(d-2)'
    if s.all_ordinary():
        results.append(compare(
            'existence_ordinary_necessary',
            formula,
            sum(m * (m - 1) for m in s.ordinary_multiplicities()),
            (d - 1) * (d - 2),
            '<=',
        ))
    else:
        results.append(_inapplicable('existence_ordinary_necessary', formula, 'not all singularities are ordinary'))

    nori = compare(
        'nori',
        '2 #nodes + sum_{S_i != A1} (deg X^s(S_i) + delta(S_i)) < d^2',
        2 * s.nodes + sum(r.deg_xs + r.delta for r in s.singularities if not r.is_node),
        d * d,
        '<',
    )
    if nori.verdict is Verdict.FAIL:
        nori = replace(nori, notes=_INCONCLUSIVE)
    results.append(nori)
    return results


def _legacy_f(record: SingularityRecord) -> Fraction:
    if record.f_value is not None:
        return record.f_value
    mu, m = record.mu, record.m
    return Fraction(2, (mu + m - 1) ** 2 * (3 * mu - m * m + 3 * m + 2) ** 2)


def _alpha(record: SingularityRecord) -> Optional[Fraction]:
    if record.alpha is not None:
        return record.alpha
    if record.is_node:
        return Fraction(3)
    if record.is_cusp:
        return Fraction(5)
    return None


def check_legacy(s: CurveSummary) -> List[CriterionResult]:
    """Earlier criteria, kept for comparison with the current ones."""

    d = s.d
    results: List[CriterionResult] = []

    formula = 'sum mu(S_i) < min f(S_i) d^2'
    if s.singularities:
        results.append(compare(
            'legacy_mu_f', formula,
            sum(r.mu for r in s.singularities),
            min(_legacy_f(r) for r in s.singularities) * d * d,
            '<',
        ))
    else:
        results.append(_inapplicable('legacy_mu_f', formula, 'no singularities'))

    formula = 'sum alpha(S_i) < (2a-3)/(2a(a-1)) d^2 - (2a-9)/(2(a-1)) d - 4a/(a-1), a = max alpha(S_i)'
    alphas = [_alpha(r) for r in s.singularities]
    if not alphas or any(a is None for a in alphas):
        results.append(_inapplicable('legacy_alpha', formula, 'alpha unknown for some singularity'))
    else:
        values = [a for a in alphas if a is not None]
        a = max(values)
        rhs = (
            (2 * a - 3) / (2 * a * (a - 1)) * d * d
            - (2 * a - 9) / (2 * (a - 1)) * d
            - 4 * a / (a - 1)
        )
        results.append(compare('legacy_alpha', formula, sum(values, Fraction(0)), rhs, '<'))

    if s.only_nodes_and_cusps():
        n, k = s.nodes, s.cusps
        results.append(compare('legacy_smoothness_nodes_cusps', '4n + 9k < d^2', 4 * n + 9 * k, d * d, '<'))
        results.append(compare('legacy_irreducibility_nodes_cusps', '225n + 450k < d^2', 225 * n + 450 * k, d * d, '<'))
        results.append(compare(
            'legacy_irreducibility_nodes_cusps_sharp',
            '120/7 n + 200/7 k < d^2 - 5/7 d - 200/7',
            Fraction(120, 7) * n + Fraction(200, 7) * k,
            d * d - Fraction(5, 7) * d - Fraction(200, 7),
            '<',
        ))
    else:
        for name in ('legacy_smoothness_nodes_cusps', 'legacy_irreducibility_nodes_cusps', 'legacy_irreducibility_nodes_cusps_sharp'):
            results.append(_inapplicable(name, 'nodes and cusps only', 'singularities other than nodes and cusps'))

    formula = "sum (tau'(S_i)+1)^2 < d^2"
    if any(r.tau_es is None for r in s.singularities):
        results.append(_inapplicable('legacy_tau', formula, "tau' unknown for some singularity"))
    else:
        results.append(compare('legacy_tau', formula, sum(((r.tau_es or 0) + 1) ** 2 for r in s.singularities), d * d, '<'))
    return results


def _fat(record: SingularityRecord) -> Tuple[Optional[int], Optional[int]]:
    return record.x_fix_degree, record.smooth_max


def check_density(s: CurveSummary) -> List[CriterionResult]:
    """Density conditions in terms of ``deg X^es_fix`` and smooth contact
    maxima (degree at least 8), and the fat point condition in terms of ν′."""

    d = s.d
    results: List[CriterionResult] = []
    names = [f'density_{i}' for i in range(6)]
    formulas = [
        'd^2 + 6d + 8 > 4 sum F_i',
        'd^2 > sum F_i^2',
        '2 (d+3)^2 > sum (F_i+2)^2',
        '9/10 d^2 > sum s_i^2',
        '(d-1)^2 > sum max(s_i^2, F_i^2 / 2)',
        '16/15 (d+3)^2 > sum max((s_i+16/15)^2, (F_i+32/15)^2 / 2)',
    ]
    data = [_fat(r) for r in s.singularities]
    if d < 8:
        results.extend(_inapplicable(n, f, 'requires d >= 8') for n, f in zip(names, formulas))
    elif any(f is None or m is None for f, m in data):
        results.extend(
            _inapplicable(n, f, 'deg X^es_fix or smooth contact maximum unknown')
            for n, f in zip(names, formulas)
        )
    else:
        fs = [Fraction(f or 0) for f, _ in data]
        ss = [Fraction(m or 0) for _, m in data]
        pairs = list(zip(fs, ss))
        c1, c2 = Fraction(16, 15), Fraction(32, 15)
        values = [
            (Fraction(d * d + 6 * d + 8), 4 * sum(fs, Fraction(0))),
            (Fraction(d * d), sum((f * f for f in fs), Fraction(0))),
            (Fraction(2 * (d + 3) ** 2), sum(((f + 2) ** 2 for f in fs), Fraction(0))),
            (Fraction(9 * d * d, 10), sum((m * m for m in ss), Fraction(0))),
            (Fraction((d - 1) ** 2), sum((max(m * m, f * f / 2) for f, m in pairs), Fraction(0))),
            (c1 * (d + 3) ** 2, sum((max((m + c1) ** 2, (f + c2) ** 2 / 2) for f, m in pairs), Fraction(0))),
        ]
        results.extend(
            compare(n, f, lhs, rhs, '>') for n, f, (lhs, rhs) in zip(names, formulas, values)
        )

    nus = [r.nu_s for r in s.singularities]
    results.append(_conjunction(
        'fat_points',
        "2d > 5 max nu' + 4, 9/10 (d+3)^2 > sum (nu'+2)^2",
        [
            compare('max_nu', "2d > 5 max nu' + 4", 2 * d, 5 * max(nus, default=0) + 4, '>'),
            compare(
                'sum_nu', "9/10 (d+3)^2 > sum (nu'+2)^2",
                Fraction(9 * (d + 3) ** 2, 10), sum((n + 2) ** 2 for n in nus), '>',
            ),
        ],
    ))
    return results


_KINDS: Mapping[str, Callable[[SingularityRecord], Optional[int]]] = {
    'es': lambda r: r.tau_es,
    'ea': lambda r: r.tau,
    's': lambda r: r.deg_xs,
    'es_fix': lambda r: None if r.tau_es is None else r.tau_es + 2,
    'ea_fix': lambda r: None if r.tau is None else r.tau + 2,
}


def expected_dimension(s: CurveSummary, kind: str = 'es') -> int:
    """``d(d+3)/2 - deg X`` for the scheme of the given kind (``es``, ``ea``,
    ``s``, ``es_fix`` or ``ea_fix``).

    Raises:
        InputError: Unknown kind, or a singularity lacks the needed degree.
    """

    if kind not in _KINDS:
        raise InputError(f'unknown scheme kind {kind!r}, expected one of {sorted(_KINDS)}')
    total = 0
    for record in s.singularities:
        value = _KINDS[kind](record)
        if value is None:
            raise InputError(f'scheme degree of kind {kind!r} unknown for {record.label or record}')
        total += value
    return s.d * (s.d + 3) // 2 - total


def all_criteria(s: CurveSummary) -> List[CriterionResult]:
    results = [
        check_smoothness_gamma(s),
        check_smoothness_gamma_ea(s),
        check_smoothness_tau(s),
        check_smoothness_nodes_cusps(s),
        check_smoothness_ordinary(s),
        check_irreducibility(s),
        check_irreducibility_weak(s),
        check_irreducibility_nodes_cusps(s),
        check_irreducibility_ordinary(s),
    ]
    results.extend(check_existence_and_nori(s))
    results.extend(check_density(s))
    results.extend(check_legacy(s))
    return results


SELECTORS: Mapping[str, Callable[[CurveSummary], List[CriterionResult]]] = {
    'smoothness': lambda s: [
        check_smoothness_gamma(s), check_smoothness_gamma_ea(s), check_smoothness_tau(s),
        check_smoothness_nodes_cusps(s), check_smoothness_ordinary(s),
    ],
    'irreducibility': lambda s: [
        check_irreducibility(s), check_irreducibility_weak(s),
        check_irreducibility_nodes_cusps(s), check_irreducibility_ordinary(s),
    ],
    'existence': check_existence_and_nori,
    'density': check_density,
    'legacy': check_legacy,
    'all': all_criteria,
}


def criteria_matrix(s: CurveSummary, degrees: Iterable[int], selector: str = 'all') -> Tuple[List[str], List[List[Any]]]:
    """Verdicts of the selected criteria for the same singularities over a range of degrees.

    Returns:
        The header (``d`` and the criterion names) and one row per degree.
    """

    if selector not in SELECTORS:
        raise InputError(f'unknown criteria selector {selector!r}')
    header: List[str] = []
    rows: List[List[Any]] = []
    for d in degrees:
        results = SELECTORS[selector](s.with_degree(d))
        if not header:
            header = ['d'] + [r.name for r in results]
        rows.append([d] + [r.verdict.value for r in results])
    return header, rows
