import functools
import logging
import re
from typing import List, Optional, Sequence, Tuple

from .algebra import MultiPoly, RationalLike
from .errors import InputError
from .invariants import gamma_lower_bound, gamma_upper_bound, smooth_intersection_max
from .localring import as_point, fat_point_ideal, iea_fix_ideal, tjurina_ideal
from .resolution import invariants_from_tree, resolve, ResolutionTree, SingularityRecord

"""

Normal forms of the standard singularity types and classification of
resolved germs into them. Every invariant of a catalog entry is computed from
its normal form, never tabulated.

"""

logger = logging.getLogger(__name__)

_ALIASES = {
    'node': 'A1',
    'cusp': 'A2',
    'tacnode': 'A3',
    'ord:2': 'A1',
    'ord:3': 'D4',
}

_NAME = re.compile(r'^(?:(?P<family>[ADE])_?(?P<k>\d+)|ord:(?P<m>\d+))$')


def normalize_name(name: str) -> str:
    """Canonical spelling of a type name: ``A3``, ``D5``, ``E7`` or ``ord:5``.

    Raises:
        InputError: The name is not a known type.
    """

    key = name.strip()
    key = _ALIASES.get(key.lower(), key)
    match = _NAME.match(key.upper() if not key.lower().startswith('ord') else key.lower())
    if match is None:
        raise InputError(f'unknown singularity type {name!r}')
    if match.group('m') is not None:
        m = int(match.group('m'))
        if m < 2:
            raise InputError(f'ordinary points need multiplicity at least 2, got {m}')
        return _ALIASES.get(f'ord:{m}', f'ord:{m}')
    family = match.group('family')
    k = int(match.group('k'))
    if (family == 'A' and k < 1) or (family == 'D' and k < 4) or (family == 'E' and k not in (6, 7, 8)):
        raise InputError(f'unknown singularity type {name!r}')
    return f'{family}{k}'


def normal_form(name: str) -> MultiPoly:
    """An equation of the type at the origin whose resolution is rational."""

    label = normalize_name(name)
    x = MultiPoly.variable('x')
    y = MultiPoly.variable('y')
    if label.startswith('ord:'):
        m = int(label[4:])
        f = MultiPoly.constant(1)
        for i in range(m):
            f = f * (x - y.scale(i))
        return f
    k = int(label[1:])
    if label[0] == 'A':
        return x ** 2 - y ** (k + 1)
    if label[0] == 'D':
        return x ** 2 * y - y ** (k - 1)
    if k == 6:
        return x ** 3 - y ** 4
    if k == 7:
        return x ** 3 - x * y ** 3
    return x ** 3 - y ** 5


def is_simple(label: Optional[str]) -> bool:
    return label is not None and label[0] in 'ADE'


def classify(t: ResolutionTree, mu: int) -> Optional[str]:
    """Topological type of a resolved germ among the catalog types, if any."""

    root = t.root
    directions = len(t.children(root.id))
    if root.m == 2:
        return f'A{mu}'
    if root.m == 3:
        if directions == 3:
            return 'D4'
        if directions == 2:
            return f'D{mu}'
        if mu in (6, 7, 8):
            return f'E{mu}'
        return None
    if root.m >= 4 and directions == root.m and all(t.node(c).leaf for c in t.children(root.id)):
        return f'ord:{root.m}'
    return None


def describe_germ(
    f: MultiPoly,
    point: Sequence[RationalLike] = (0, 0),
    with_gamma: bool = False,
    tau_es: Optional[int] = None,
) -> SingularityRecord:
    """Resolves a germ and collects every invariant that can be certified.

    τ^es is known for simple types (``τ^es = μ``) and ordinary points, or
    may be supplied. With ``with_gamma`` the γ^es bracket is computed as well,
    for simple types by enumeration over their Tjurina ideal.

    Raises:
        IrrationalBranchPoint: The resolution needs irrational points.
    """

    p = as_point(point)
    tree = resolve(f, p)
    record = invariants_from_tree(tree, tau_es=tau_es)
    label = classify(tree, record.mu) if record.m >= 2 else None
    if is_simple(label) and record.tau_es is None:
        record = record.with_values(tau_es=record.mu)
    record = record.with_values(label=label)

    if record.m < 2:
        return record

    if is_simple(label):
        record = record.with_values(smooth_max=smooth_intersection_max(iea_fix_ideal(f, p)).value)
    elif record.ordinary:
        record = record.with_values(smooth_max=smooth_intersection_max(fat_point_ideal(p, record.m)).value)

    if with_gamma:
        upper = gamma_upper_bound(record) if record.tau_es is not None or record.ordinary else None
        if is_simple(label):
            report = gamma_lower_bound(f, tjurina_ideal(f, p), p, upper=upper)
            record = record.with_values(
                gamma_lower = report.lower,
                gamma_upper = upper,
                gamma_exact = report.exact,
            )
        else:
            record = record.with_values(gamma_upper=upper)
    return record


@functools.lru_cache(maxsize=None)
def catalog_record(name: str, with_gamma: bool = False) -> SingularityRecord:
    """Invariants of a catalog type, computed from its normal form."""

    label = normalize_name(name)
    record = describe_germ(normal_form(label), with_gamma=with_gamma)
    if record.label != label:
        logger.debug('normal form of %s classifies as %s', label, record.label)
    return record.with_values(label=label)


def catalog_names(max_index: int = 8) -> List[str]:
    names = [f'A{k}' for k in range(1, max_index + 1)]
    names.extend(f'D{k}' for k in range(4, max_index + 1))
    names.extend(['E6', 'E7', 'E8'])
    names.extend(f'ord:{m}' for m in range(4, 7))
    return names


def parse_type_list(text: str) -> List[Tuple[str, int]]:
    """Parses ``"20*A1, 5*A2, ord:4"`` into (type, count) pairs."""

    result: List[Tuple[str, int]] = []
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        count = 1
        if '*' in item:
            head, _, tail = item.partition('*')
            try:
                count = int(head)
            except ValueError as e:
                raise InputError(f'malformed type count {item!r}') from e
            item = tail.strip()
        if count < 0:
            raise InputError(f'negative type count in {item!r}')
        result.append((normalize_name(item), count))
    return result
