from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .algebra import (
    AFFINE, as_rational, homogeneous_monomials, kernel_and_rank, monomials_below,
    MultiPoly, PROJECTIVE, QMatrix, RationalLike,
)
from .errors import InputError
from .localring import JetIdeal
from .resolution import essential_subtree, Frame, ResolutionTree

"""

Clusters of infinitely near points with virtual multiplicities.

A curve goes through a cluster if it has multiplicity at least ``m_q`` at
the origin and its virtual transform, the pull back divided by the exceptional
coordinate to the power ``m_q``, goes through the rest of the cluster. All of
this is linear in the coefficients of the curve, so passing through a cluster
is a set of linear conditions, one per monomial of degree < ``m_q`` at each
point.

"""

logger = logging.getLogger(__name__)

Origin = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class ClusterPoint:
    """A point of a cluster.

    Non-root points sit either in the chart ``v = u·w`` of their parent, at
    slope ``position``, or at the origin of the chart ``u = u'·v`` (chart 2,
    no position).
    """

    id: int
    parent: Optional[int]
    m: int
    proximate_to: Tuple[int, ...]
    chart: Optional[int]
    position: Optional[Fraction]
    frame: Frame

    @property
    def free(self) -> bool:
        return len(self.proximate_to) <= 1

    def to_document(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            'id': self.id,
            'parent': self.parent,
            'm': self.m,
            'proximate_to': list(self.proximate_to),
            'free': self.free,
        }
        if self.chart == 1:
            doc['position'] = str(self.position)
        elif self.chart == 2:
            doc['position'] = 'inf'
        return doc


class Cluster(object):
    def __init__(self, origin: Sequence[RationalLike], points: Sequence[ClusterPoint]) -> None:
        super(Cluster, self).__init__()
        if len(origin) != 3:
            raise InputError(f'cluster origin must be a homogeneous triple, got {origin!r}')
        coords = tuple(as_rational(c) for c in origin)
        if all(c == 0 for c in coords):
            raise InputError('cluster origin (0:0:0) is not a point')
        if not points:
            raise InputError('a cluster needs at least its origin point')
        self._origin: Origin = (coords[0], coords[1], coords[2])
        self._points: Tuple[ClusterPoint, ...] = tuple(points)
        self._children: Dict[int, List[int]] = {p.id: [] for p in self._points}
        for p in self._points:
            if p.parent is not None:
                self._children[p.parent].append(p.id)

    @property
    def origin(self) -> Origin:
        return self._origin

    @property
    def points(self) -> Tuple[ClusterPoint, ...]:
        return self._points

    @property
    def root(self) -> ClusterPoint:
        return self._points[0]

    def point(self, id: int) -> ClusterPoint:
        return self._points[id]

    def children(self, id: int) -> List[int]:
        return list(self._children[id])

    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(p.m for p in self._points)

    def local_chart(self) -> Tuple[int, Tuple[Fraction, Fraction]]:
        """Affine chart holding the origin: the index of the coordinate set
        to 1, and the affine coordinates of the origin in it."""

        index = max(i for i, c in enumerate(self._origin) if c != 0)
        rest = [c / self._origin[index] for i, c in enumerate(self._origin) if i != index]
        return index, (rest[0], rest[1])

    def to_document(self) -> Dict[str, Any]:
        return {
            'origin': [str(c) for c in self._origin],
            'points': [p.to_document() for p in self._points],
            'degree': cluster_degree(self),
        }

    def __repr__(self) -> str:
        return f'Cluster(origin={self._origin!r}, m={self.multiplicities()!r})'


def _child_frame(parent: ClusterPoint, chart: int, position: Optional[Fraction]) -> Frame:
    if chart == 1:
        return Frame(u=parent.id, v=parent.frame.v if position == 0 else None)
    return Frame(u=parent.frame.u, v=parent.id)


def cluster_from_tree(
    t: ResolutionTree,
    subtree: Optional[Sequence[int]] = None,
) -> Cluster:
    """The cluster of a resolved germ on ``subtree`` (default ``T*``),
    with the strict transform multiplicities as virtual multiplicities.

    Raises:
        InputError: ``subtree`` misses the parent of one of its points.
    """

    ids = sorted(set(subtree) if subtree is not None else essential_subtree(t))
    chosen = set(ids)
    if t.root.id not in chosen:
        raise InputError('a cluster subtree must contain the root')
    for id in ids:
        parent = t.node(id).parent
        if parent is not None and parent not in chosen:
            raise InputError(f'subtree contains point {id} but not its parent {parent}')

    index = {old: new for new, old in enumerate(ids)}
    points: List[ClusterPoint] = []
    for old in ids:
        n = t.node(old)
        points.append(ClusterPoint(
            id = index[old],
            parent = index[n.parent] if n.parent is not None else None,
            m = n.m,
            proximate_to = tuple(index[p] for p in n.proximate_to),
            chart = n.chart,
            position = n.position[1] if n.chart == 1 else None,
            frame = Frame(
                u = index[n.frame.u] if n.frame.u is not None else None,
                v = index[n.frame.v] if n.frame.v is not None else None,
            ),
        ))
    a, b = t.point
    return Cluster((a, b, Fraction(1)), points)


def _parse_position(value: Any) -> Tuple[int, Optional[Fraction]]:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InputError(f'malformed position {value!r}')
        return 1, as_rational(value[1])
    if isinstance(value, str) and value.strip().lower() in ('inf', 'infinity', '∞'):
        return 2, None
    return 1, as_rational(value)


def cluster_from_document(doc: Mapping[str, Any], essential_only: bool = False) -> Cluster:
    """Reads a cluster from a parsed YAML or JSON document.

    The document has an optional ``origin`` (homogeneous triple, default the
    affine origin, or an affine ``point``) and a list ``points`` (or
    ``nodes``, as written for resolution trees) of entries with ``id``,
    ``parent``, ``m`` and ``proximate_to``. Positions are optional: a slope,
    ``inf`` for the direction of the v axis, or the ``[0, t]`` pairs of tree
    documents with their ``chart``. Satellite positions follow from the
    proximities; free points without a position get the slopes 1, 2, ...

    Raises:
        InputError: The document is malformed or its proximities contradict
            the positions.
    """

    if not isinstance(doc, Mapping):
        raise InputError('cluster document must be a mapping')
    entries = doc.get('points', doc.get('nodes'))
    if not isinstance(entries, list) or not entries:
        raise InputError('cluster document needs a nonempty list of points')

    if 'origin' in doc:
        origin = [as_rational(c) for c in doc['origin']]
    elif 'point' in doc:
        origin = [as_rational(c) for c in doc['point']] + [Fraction(1)]
    else:
        origin = [Fraction(0), Fraction(0), Fraction(1)]

    if essential_only:
        entries = [e for e in entries if e.get('parent') is None or e.get('essential', True)]

    index: Dict[Any, int] = {}
    points: List[ClusterPoint] = []
    used: Dict[int, Set[Tuple[int, Optional[Fraction]]]] = {}
    for entry in entries:
        if not isinstance(entry, Mapping) or 'id' not in entry or 'm' not in entry:
            raise InputError(f'malformed cluster point {entry!r}')
        key = entry['id']
        if key in index:
            raise InputError(f'duplicate cluster point id {key!r}')
        m = entry['m']
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise InputError(f'virtual multiplicity must be a nonnegative integer, got {m!r}')
        proximate = entry.get('proximate_to') or []
        parent_key = entry.get('parent')
        new_id = len(points)

        if parent_key is None:
            if points:
                raise InputError('only the first cluster point may lack a parent')
            if proximate:
                raise InputError('the cluster origin is proximate to no point')
            index[key] = new_id
            points.append(ClusterPoint(new_id, None, m, (), None, None, Frame()))
            used[new_id] = set()
            continue

        if parent_key not in index:
            raise InputError(f'cluster point {key!r} listed before its parent {parent_key!r}')
        parent = points[index[parent_key]]
        try:
            prox = {index[p] for p in proximate}
        except KeyError as e:
            raise InputError(f'cluster point {key!r} is proximate to an unknown point {e.args[0]!r}') from e
        if parent.id not in prox or len(prox) > 2:
            raise InputError(f'cluster point {key!r} must be proximate to its parent and at most one more point')

        chart: int
        position: Optional[Fraction]
        if 'chart' in entry and entry['chart'] is not None:
            chart = int(entry['chart'])
            position = _parse_position(entry.get('position'))[1] if chart == 1 else None
        elif entry.get('position') is not None:
            chart, position = _parse_position(entry['position'])
        elif len(prox) == 2:
            other = (prox - {parent.id}).pop()
            if other == parent.frame.v:
                chart, position = 1, Fraction(0)
            elif other == parent.frame.u:
                chart, position = 2, None
            else:
                raise InputError(f'cluster point {key!r} cannot be proximate to point {other}')
        else:
            slope = 1
            while (1, Fraction(slope)) in used[parent.id]:
                slope += 1
            chart, position = 1, Fraction(slope)

        if chart not in (1, 2):
            raise InputError(f'chart must be 1 or 2, got {chart!r}')
        slot = (chart, position)
        if slot in used[parent.id]:
            raise InputError(f'two children of point {parent_key!r} at the same position')
        used[parent.id].add(slot)

        frame = _child_frame(parent, chart, position)
        if set(frame.labels()) != prox:
            raise InputError(
                f'cluster point {key!r}: proximities {sorted(prox)} contradict its position, '
                f'which lies on the exceptional divisors of {sorted(frame.labels())}'
            )
        index[key] = new_id
        points.append(ClusterPoint(new_id, parent.id, m, frame.labels(), chart, position, frame))
        used[new_id] = set()

    return Cluster(origin, points)


def cluster_degree(k: Cluster) -> int:
    """Number of linear conditions imposed by the cluster."""
    return sum(p.m * (p.m + 1) // 2 for p in k.points)


def proximity_violations(k: Cluster) -> List[int]:
    """Points q with ``m_q < Σ m_p`` over the points p proximate to q."""

    load: Dict[int, int] = {p.id: 0 for p in k.points}
    for p in k.points:
        for q in p.proximate_to:
            load[q] += p.m
    return [p.id for p in k.points if p.m < load[p.id]]


def is_consistent(k: Cluster) -> bool:
    return not proximity_violations(k)


def free_point_count(k: Cluster) -> int:
    return sum(1 for p in k.points if p.free)


def _needs(k: Cluster) -> Dict[int, int]:
    need: Dict[int, int] = {}
    for p in reversed(k.points):
        need[p.id] = p.m + max((need[c] for c in k.children(p.id)), default=0)
    return need


def _local_conditions(k: Cluster, germs: Sequence[MultiPoly]) -> List[Dict[int, Fraction]]:
    """Condition rows for germs at the origin, one column per germ."""

    need = _needs(k)
    offsets: Dict[int, int] = {}
    total = 0
    for p in k.points:
        offsets[p.id] = total
        total += p.m * (p.m + 1) // 2
    rows: List[Dict[int, Fraction]] = [{} for _ in range(total)]
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')

    def visit(column: int, id: int, g: MultiPoly) -> None:
        point = k.point(id)
        if g.is_zero():
            return
        for i, mono in enumerate(monomials_below(point.m)):
            c = g.coefficient(mono)
            if c:
                rows[offsets[id] + i][column] = c
        rest = g.drop_below(point.m)
        for child_id in k.children(id):
            child = k.point(child_id)
            if child.chart == 1:
                assert child.position is not None
                moved = rest.substitute({'y': x * (y + child.position)}, AFFINE)
                transform = moved.divide_by_monomial((point.m, 0))
            else:
                moved = rest.substitute({'x': x * y}, AFFINE)
                transform = moved.divide_by_monomial((0, point.m))
            visit(column, child_id, transform.jet(need[child_id] - 1))

    root = k.root.id
    for column, germ in enumerate(germs):
        visit(column, root, germ.jet(need[root] - 1))
    return rows


def passing_conditions(k: Cluster, d: int) -> QMatrix:
    """Linear conditions for a curve of degree ``d`` to go through the cluster.

    Columns are the monomials of degree ``d`` in lexicographically descending
    order, rows the conditions, ``cluster_degree(k)`` of them.

    Raises:
        InputError: ``d`` is negative.
    """

    if d < 0:
        raise InputError(f'degree must be nonnegative, got {d}')
    if not is_consistent(k):
        logger.warning('cluster %r violates the proximity inequalities at %r', k, proximity_violations(k))

    index, shift = k.local_chart()
    columns = homogeneous_monomials(d)
    germs = [
        MultiPoly.monomial(mono, 1, PROJECTIVE).dehomogenize(index).translate(shift)
        for mono in columns
    ]
    return QMatrix(_local_conditions(k, germs), len(columns))


def cluster_jet_ideal(k: Cluster) -> JetIdeal:
    """Ideal of germs at the origin going through the cluster, in local coordinates."""

    order = _needs(k)[k.root.id]
    if order == 0:
        return JetIdeal(1, [{0: Fraction(1)}], [0])
    columns = monomials_below(order)
    germs = [MultiPoly.monomial(mono) for mono in columns]
    _, kernel = kernel_and_rank(QMatrix(_local_conditions(k, germs), len(columns)))
    vectors = [{j: c for j, c in enumerate(v) if c} for v in kernel]
    return JetIdeal.from_span(vectors, order)


@dataclass(frozen=True)
class ClusterGraph:
    """Oriented tree of a cluster with solid edges to immediate successors and
    dashed edges from a point to the further points it is proximate to."""

    multiplicities: Tuple[int, ...]
    solid: Tuple[Tuple[int, int], ...]
    dashed: Tuple[Tuple[int, int], ...]
    canonical: Tuple[Any, ...]

    def to_document(self) -> Dict[str, Any]:
        return {
            'multiplicities': list(self.multiplicities),
            'solid': [list(e) for e in self.solid],
            'dashed': [list(e) for e in self.dashed],
        }


def graph_of(k: Cluster) -> ClusterGraph:
    levels: Dict[int, int] = {}
    for p in k.points:
        levels[p.id] = 0 if p.parent is None else levels[p.parent] + 1

    solid = tuple((p.parent, p.id) for p in k.points if p.parent is not None)
    dashed = tuple(
        (p.id, q) for p in k.points for q in p.proximate_to if q != p.parent
    )

    def canonical(id: int) -> Tuple[Any, ...]:
        p = k.point(id)
        reach = tuple(sorted(levels[id] - levels[q] for q in p.proximate_to if q != p.parent))
        below = tuple(sorted(canonical(c) for c in k.children(id)))
        return (p.m, reach, below)

    return ClusterGraph(k.multiplicities(), solid, dashed, canonical(k.root.id))


def graphs_isomorphic(a: ClusterGraph, b: ClusterGraph) -> bool:
    return a.canonical == b.canonical
