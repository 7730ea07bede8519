from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
import logging
import math
from typing import Any, Deque, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .algebra import AFFINE, as_rational, is_squarefree, MultiPoly, RationalLike, rational_roots
from .errors import InputError, InternalInconsistency, IrrationalBranchPoint
from .localring import as_point, milnor_number, Point, tjurina_number

"""

Embedded resolution of plane curve germs by point blowups.

Every infinitely near point is handled in local coordinates (u, v), stored
as the affine variables ``x`` and ``y``, together with a frame recording which
exceptional divisors pass through it: ``{u = 0}`` and ``{v = 0}`` are either
the strict transform of the exceptional divisor of an earlier point (labelled
by its id) or not exceptional at all. Blowing up uses the chart
``v = u·w`` for every finite direction and the chart ``u = u'·v`` for the
direction of the v axis.

"""

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Frame:
    """Ids of the points whose exceptional divisors are ``{u=0}`` and ``{v=0}``."""

    u: Optional[int] = None
    v: Optional[int] = None

    def labels(self) -> Tuple[int, ...]:
        return tuple(label for label in (self.u, self.v) if label is not None)


@dataclass(frozen=True)
class InfinitelyNearPoint:
    id: int
    level: int
    parent: Optional[int]
    chart: Optional[int]
    position: Tuple[Fraction, Fraction]
    m: int
    mhat: int
    proximate_to: Tuple[int, ...]
    essential: bool
    leaf: bool
    frame: Frame
    strict_transform: MultiPoly

    @property
    def free(self) -> bool:
        return len(self.proximate_to) <= 1

    @property
    def satellite(self) -> bool:
        return len(self.proximate_to) == 2

    def to_document(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'level': self.level,
            'parent': self.parent,
            'chart': self.chart,
            'position': [str(c) for c in self.position],
            'm': self.m,
            'mhat': self.mhat,
            'proximate_to': list(self.proximate_to),
            'essential': self.essential,
            'free': self.free,
            'leaf': self.leaf,
        }


class ResolutionTree(object):
    """Infinitely near points of a germ, ids assigned breadth first from the root."""

    def __init__(
        self,
        germ: MultiPoly,
        point: Point,
        nodes: Sequence[InfinitelyNearPoint],
        witnesses: Mapping[int, str],
    ) -> None:
        super(ResolutionTree, self).__init__()
        self._germ: MultiPoly = germ
        self._point: Point = point
        self._nodes: Tuple[InfinitelyNearPoint, ...] = tuple(nodes)
        self._witnesses: Dict[int, str] = dict(witnesses)
        self._children: Dict[int, List[int]] = {n.id: [] for n in self._nodes}
        for n in self._nodes:
            if n.parent is not None:
                self._children[n.parent].append(n.id)

    @property
    def germ(self) -> MultiPoly:
        return self._germ

    @property
    def point(self) -> Point:
        return self._point

    @property
    def nodes(self) -> Tuple[InfinitelyNearPoint, ...]:
        return self._nodes

    @property
    def root(self) -> InfinitelyNearPoint:
        return self._nodes[0]

    @property
    def witnesses(self) -> Mapping[int, str]:
        """Per leaf, why the strict transform and exceptional divisor are nodal there."""
        return self._witnesses

    def node(self, id: int) -> InfinitelyNearPoint:
        return self._nodes[id]

    def children(self, id: int) -> List[int]:
        return list(self._children[id])

    def path(self, id: int) -> List[int]:
        """Ids from the root down to ``id``."""

        ids: List[int] = []
        current: Optional[int] = id
        while current is not None:
            ids.append(current)
            current = self._nodes[current].parent
        return ids[::-1]

    def leaves(self) -> List[int]:
        return [n.id for n in self._nodes if n.leaf]

    def branches(self) -> List[Tuple[int, ...]]:
        """One root-to-leaf path per branch of the germ."""
        return [tuple(self.path(leaf)) for leaf in self.leaves()]

    def to_document(self) -> Dict[str, Any]:
        return {
            'germ': str(self._germ),
            'point': [str(c) for c in self._point],
            'nodes': [n.to_document() for n in self._nodes],
            'witnesses': {str(k): v for k, v in sorted(self._witnesses.items())},
        }


@dataclass(frozen=True)
class SingularityRecord:
    """Invariants of one singular point.

    Optional fields are unknown unless filled from the catalog or by the
    caller; criteria needing them report themselves inapplicable.
    """

    m: int
    r: int
    delta: int
    mu: int
    nu_s: int
    deg_xs: int
    tau: Optional[int] = None
    tau_es: Optional[int] = None
    label: Optional[str] = None
    ordinary: bool = False
    gamma_lower: Optional[Fraction] = None
    gamma_upper: Optional[Fraction] = None
    gamma_exact: bool = False
    smooth_max: Optional[int] = None
    branch_multiplicities: Tuple[int, ...] = field(default_factory=tuple)
    alpha: Optional[Fraction] = None
    f_value: Optional[Fraction] = None

    @property
    def x_fix_degree(self) -> Optional[int]:
        """``deg X^es_fix = τ^es + 2``."""
        return None if self.tau_es is None else self.tau_es + 2

    @property
    def is_node(self) -> bool:
        return self.m == 2 and self.mu == 1

    @property
    def is_cusp(self) -> bool:
        return self.m == 2 and self.mu == 2 and self.r == 1

    def with_values(self, **changes: Any) -> 'SingularityRecord':
        return replace(self, **changes)

    def to_document(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'm': self.m,
            'r': self.r,
            'delta': self.delta,
            'mu': self.mu,
            'tau': self.tau,
            'tau_es': self.tau_es,
            'nu_s': self.nu_s,
            'deg_xs': self.deg_xs,
            'x_fix_degree': self.x_fix_degree,
            'ordinary': self.ordinary,
            'gamma_lower': self.gamma_lower,
            'gamma_upper': self.gamma_upper,
            'gamma_exact': self.gamma_exact,
            'smooth_max': self.smooth_max,
            'branch_multiplicities': list(self.branch_multiplicities),
            'alpha': self.alpha,
            'f_value': self.f_value,
        }

    @classmethod
    def from_document(cls, doc: Mapping[str, Any]) -> 'SingularityRecord':
        """Builds a record from a mapping such as a parsed summary entry.

        Raises:
            InputError: A required field is missing or malformed.
        """

        def integer(key: str, required: bool = True) -> Optional[int]:
            value = doc.get(key)
            if value is None:
                if required:
                    raise InputError(f'singularity record lacks {key!r}')
                return None
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputError(f'{key!r} must be an integer, got {value!r}')
            return value

        def rational(key: str) -> Optional[Fraction]:
            value = doc.get(key)
            if isinstance(value, float):
                value = str(value)
            return None if value is None else as_rational(value)

        m = integer('m')
        r = integer('r')
        delta = integer('delta')
        mu = integer('mu')
        nu_s = integer('nu_s')
        deg_xs = integer('deg_xs')
        assert m is not None and r is not None and delta is not None
        assert mu is not None and nu_s is not None and deg_xs is not None

        return cls(
            m = m,
            r = r,
            delta = delta,
            mu = mu,
            nu_s = nu_s,
            deg_xs = deg_xs,
            tau = integer('tau', False),
            tau_es = integer('tau_es', False),
            label = doc.get('label'),
            ordinary = bool(doc.get('ordinary', False)),
            gamma_lower = rational('gamma_lower'),
            gamma_upper = rational('gamma_upper'),
            gamma_exact = bool(doc.get('gamma_exact', False)),
            smooth_max = integer('smooth_max', False),
            branch_multiplicities = tuple(doc.get('branch_multiplicities') or ()),
            alpha = rational('alpha'),
            f_value = rational('f_value'),
        )


@dataclass
class _Pending:
    parent: Optional[int]
    level: int
    chart: Optional[int]
    position: Tuple[Fraction, Fraction]
    frame: Frame
    strict: MultiPoly
    total: MultiPoly


def _transverse(g: MultiPoly, frame: Frame) -> bool:
    if frame.u is not None:
        return g.coefficient((0, 1)) != 0
    return g.coefficient((1, 0)) != 0


def _chart_one(g: MultiPoly, t: Fraction) -> MultiPoly:
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    return g.substitute({'y': x * (y + t)}, AFFINE)


def _chart_two(g: MultiPoly) -> MultiPoly:
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    return g.substitute({'x': x * y}, AFFINE)


def _homogenize_direction(factor: MultiPoly, degree: int) -> MultiPoly:
    # factor is a polynomial in the slope t = v/u, stored in the y slot
    return MultiPoly({(degree - m[1], m[1]): c for m, c in factor.terms.items()})


def resolve(f: MultiPoly, point: Sequence[RationalLike] = (0, 0)) -> ResolutionTree:
    """Resolves the germ of ``f = 0`` at ``point`` by blowing up points.

    A point is blown up unless it is a node of the union of the strict
    transform and the reduced exceptional divisor, that is unless the strict
    transform is smooth there and meets exactly one exceptional component,
    transversally.

    Raises:
        InputError: ``f`` is not reduced or does not vanish at the point.
        IrrationalBranchPoint: Some tangent direction is irrational.
        InternalInconsistency: The Enriques recurrence fails on a point.
    """

    if f.variables != AFFINE:
        raise InputError(f'affine germ expected, got variables {f.variables!r}')
    p = as_point(point)
    if f.evaluate(p) != 0:
        raise InputError(f'point ({p[0]}, {p[1]}) is not on the curve {f} = 0')
    if not is_squarefree(f):
        raise InputError(f'{f} is not reduced')

    local = f.translate(p)
    queue: Deque[_Pending] = deque([
        _Pending(None, 0, None, (Fraction(0), Fraction(0)), Frame(), local, local),
    ])
    nodes: List[InfinitelyNearPoint] = []
    witnesses: Dict[int, str] = {}
    mhats: Dict[int, int] = {}

    while queue:
        pending = queue.popleft()
        id = len(nodes)
        g = pending.strict
        m = g.order()
        labels = pending.frame.labels()

        mhat = m + sum(mhats[label] for label in labels)
        if pending.total.order() != mhat:
            raise InternalInconsistency(
                f'point {id}: total transform has order {pending.total.order()}, Enriques gives {mhat}'
            )
        mhats[id] = mhat

        if pending.parent is None:
            leaf = m <= 1
            if leaf:
                witnesses[id] = 'smooth germ'
        else:
            leaf = m == 1 and len(labels) == 1 and _transverse(g, pending.frame)
            if leaf:
                witnesses[id] = f'smooth and transverse to the exceptional divisor of point {labels[0]}'

        nodes.append(InfinitelyNearPoint(
            id = id,
            level = pending.level,
            parent = pending.parent,
            chart = pending.chart,
            position = pending.position,
            m = m,
            mhat = mhat,
            proximate_to = labels,
            essential = not leaf,
            leaf = leaf,
            frame = pending.frame,
            strict_transform = g,
        ))
        if leaf:
            continue

        cone = g.homogeneous_part(m)
        slopes = cone.substitute({'x': 1}, AFFINE)
        roots, irrational = rational_roots(slopes)
        if irrational:
            direction = _homogenize_direction(irrational[0], irrational[0].degree())
            raise IrrationalBranchPoint(
                direction,
                f'tangent cone {cone} at point {id} has the irrational factor {direction}',
            )
        logger.debug('blowing up point %d (m=%d) towards %d finite directions', id, m, len(roots))

        for t, _ in roots:
            strict = _chart_one(g, t).divide_by_monomial((m, 0))
            total = _chart_one(pending.total, t)
            frame = Frame(u=id, v=pending.frame.v if t == 0 else None)
            queue.append(_Pending(id, pending.level + 1, 1, (Fraction(0), t), frame, strict, total))

        if cone.coefficient((0, m)) == 0:
            strict = _chart_two(g).divide_by_monomial((0, m))
            total = _chart_two(pending.total)
            frame = Frame(u=pending.frame.u, v=id)
            queue.append(_Pending(
                id, pending.level + 1, 2, (Fraction(0), Fraction(0)), frame, strict, total,
            ))

    return ResolutionTree(f, p, nodes, witnesses)


def essential_subtree(t: ResolutionTree) -> FrozenSet[int]:
    """``T*``: the root and every point that had to be blown up."""
    return frozenset([t.root.id] + [n.id for n in t.nodes if n.essential and n.parent is not None])


def branch_multiplicities(t: ResolutionTree) -> List[Dict[int, int]]:
    """Per branch, the multiplicity of its strict transform at each point of its path.

    Computed from the leaf upwards through the proximity equality of an
    irreducible branch.

    Raises:
        InternalInconsistency: Branch multiplicities do not add up to the
            multiplicities of the curve.
    """

    result: List[Dict[int, int]] = []
    for path in t.branches():
        mult: Dict[int, int] = {path[-1]: 1}
        for k in range(len(path) - 2, -1, -1):
            q = path[k]
            mult[q] = sum(mult[p] for p in path[k + 1:] if q in t.node(p).proximate_to)
        result.append(mult)

    for n in t.nodes:
        total = sum(mult.get(n.id, 0) for mult in result)
        if total != n.m:
            raise InternalInconsistency(
                f'branches through point {n.id} add up to multiplicity {total}, expected {n.m}'
            )
    return result


def branch_intersections(t: ResolutionTree) -> List[List[int]]:
    """Symmetric table of intersection numbers of distinct branches, by Noether's formula."""

    mults = branch_multiplicities(t)
    r = len(mults)
    table = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            shared = mults[i].keys() & mults[j].keys()
            value = sum(mults[i][q] * mults[j][q] for q in shared)
            table[i][j] = table[j][i] = value
    return table


def _triangular(m: int) -> int:
    return m * (m - 1) // 2


def nu_s(t: ResolutionTree) -> int:
    """Least ν with ``m^(ν+1)`` inside the singularity ideal of the germ."""

    mults = branch_multiplicities(t)
    table = branch_intersections(t)
    star = essential_subtree(t)
    best = Fraction(0)
    for j, mult in enumerate(mults):
        delta_j = sum(_triangular(m) for m in mult.values())
        contact = sum(table[j][i] for i in range(len(mults)) if i != j)
        along = sum(m for q, m in mult.items() if q in star)
        best = max(best, Fraction(2 * delta_j + contact + along, mult[t.root.id]))
    return max(math.ceil(best) - 1, 0)


def _is_ordinary(t: ResolutionTree) -> bool:
    root = t.root
    children = t.children(root.id)
    return root.m >= 2 and len(children) == root.m and all(t.node(c).leaf for c in children)


def invariants_from_tree(
    t: ResolutionTree,
    tau_es: Optional[int] = None,
    label: Optional[str] = None,
) -> SingularityRecord:
    """Collects δ, μ, τ, ν^s and ``deg X^s`` of a resolved germ.

    μ is computed twice, as ``2δ - r + 1`` and as the colength of the Milnor
    ideal. Ordinary points get ``τ^es = m(m+1)/2 - 2`` when none is given.

    Raises:
        InternalInconsistency: The two values of μ disagree.
    """

    root = t.root
    r = len(t.leaves())
    delta = sum(_triangular(n.m) for n in t.nodes)
    mu = 2 * delta - r + 1
    star = essential_subtree(t)
    deg_xs = delta + sum(t.node(q).m for q in star)
    ordinary = _is_ordinary(t)

    if root.m >= 2:
        colength_mu = milnor_number(t.germ, t.point)
        if colength_mu != mu:
            raise InternalInconsistency(
                f'Milnor number {colength_mu} of {t.germ} differs from 2δ-r+1 = {mu}'
            )
        tau: Optional[int] = tjurina_number(t.germ, t.point)
    else:
        tau = 0

    if tau_es is None and ordinary:
        tau_es = root.m * (root.m + 1) // 2 - 2

    mults = branch_multiplicities(t)
    record = SingularityRecord(
        m = root.m,
        r = r,
        delta = delta,
        mu = mu,
        nu_s = nu_s(t),
        deg_xs = deg_xs,
        tau = tau,
        tau_es = tau_es,
        label = label,
        ordinary = ordinary,
        branch_multiplicities = tuple(mult[root.id] for mult in mults),
    )
    logger.debug('invariants at (%s, %s): %r', t.point[0], t.point[1], record)
    return record


@dataclass(frozen=True)
class NuBound:
    name: str
    lhs: int
    rhs: Optional[int]
    applicable: bool
    holds: Optional[bool]

    def to_document(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'applicable': self.applicable,
            'holds': self.holds,
        }


def nu_s_bounds(record: SingularityRecord) -> List[NuBound]:
    """The two upper bounds on ν^s: by τ^es, and by δ when every branch has multiplicity ≥ 3."""

    checks: List[NuBound] = []
    if record.tau_es is None:
        checks.append(NuBound('nu_s <= tau_es', record.nu_s, None, False, None))
    else:
        checks.append(NuBound(
            'nu_s <= tau_es', record.nu_s, record.tau_es, True, record.nu_s <= record.tau_es,
        ))

    applicable = bool(record.branch_multiplicities) and min(record.branch_multiplicities) >= 3
    checks.append(NuBound(
        'nu_s <= delta',
        record.nu_s,
        record.delta,
        applicable,
        record.nu_s <= record.delta if applicable else None,
    ))
    return checks
