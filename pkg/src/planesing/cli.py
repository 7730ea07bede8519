import argparse
import logging
import sys
from typing import Any, cast, Dict, List, Optional, Sequence, Tuple

import yaml

from . import __version__
from .algebra import as_rational, MultiPoly, poly_parse
from .castelnuovo import barkats_reduce, check_properties, CSV_HEADER, davis_split, fixed_curve, h0, h1, profile, scheme_from_document
from .catalog import catalog_record, describe_germ, normal_form
from .config import config as config_obj
from .constructions import curve_singular_locus, existence_check, family_dimensions, verify_zariski, zariski_curve, zariski_sextic
from .criteria import criteria_matrix, CurveSummary, expected_dimension, SELECTORS
from .csv import RowsWriteable
from .errors import InputError, InternalInconsistency, PlaneSingError
from .invariants import gamma_lower_bound, gamma_upper_bound
from .io import read_document, WriteableFromStr, WriteOpenable, WriteOpenableFromPath, WriteOpenableWrapBinaryIO
from .json import to_document, Writeable
from .resolution import nu_s_bounds, resolve

logger = logging.getLogger(__name__)

EXIT_OK = 0


class CommonArgs:
    format: str
    out: Optional[str]
    config_path: Optional[str]
    verbose: bool
    seed: int
    budget_degree: Optional[int]
    budget_grid: Optional[str]
    jet_cap: Optional[int]


class AnalyzeArgs(CommonArgs):
    germ: Optional[str]
    curve: Optional[str]
    type: Optional[str]
    point: str
    gamma: bool
    tree: bool


class CastelnuovoArgs(CommonArgs):
    file: str
    degree: Optional[int]
    davis: bool
    d0: Optional[int]
    barkats: Optional[int]


class CheckArgs(CommonArgs):
    file: Optional[str]
    d: Optional[int]
    n: int
    k: int
    types: Optional[str]
    select: str
    d_range: Optional[str]


class ZariskiArgs(CommonArgs):
    sextic: bool
    p: Optional[int]
    d: Optional[int]
    build: bool
    certify_irreducibility: bool


class GammaArgs(CommonArgs):
    germ: Optional[str]
    type: Optional[str]
    point: str


def _point(text: str) -> Tuple[Any, Any]:
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 2:
        raise InputError(f'a point is given as "a,b", got {text!r}')
    return as_rational(parts[0]), as_rational(parts[1])


def _affine_germ(text: str) -> MultiPoly:
    f = poly_parse(text)
    if f.variables != ('x', 'y'):
        raise InputError(f'a germ is an affine polynomial in x and y, got {text!r}')
    return f


def _degree_range(text: str) -> range:
    start, sep, stop = text.partition(':')
    try:
        low, high = int(start), int(stop)
    except ValueError as e:
        raise InputError(f'degree range is given as "a:b", got {text!r}') from e
    if not sep or low < 1 or high < low:
        raise InputError(f'degree range is given as "a:b" with 1 <= a <= b, got {text!r}')
    return range(low, high + 1)


def _configure(args: CommonArgs) -> None:
    config_obj.reset()
    if args.config_path is not None:
        config_obj.read_yaml(args.config_path)
    if args.budget_degree is not None:
        config_obj.set('planesing.invariants.budget_degree', args.budget_degree)
    if args.budget_grid is not None:
        config_obj.set('planesing.invariants.budget_grid', [v.strip() for v in args.budget_grid.split(',') if v.strip()])
    if args.jet_cap is not None:
        config_obj.set('planesing.localring.jet_cap', args.jet_cap)


def _report(command: str, result: Any) -> Dict[str, Any]:
    return {
        'tool': 'planesing',
        'version': __version__,
        'command': command,
        'config': config_obj.snapshot(),
        'result': result,
    }


def _target(args: CommonArgs) -> WriteOpenable:
    if args.out is not None:
        return WriteOpenableFromPath(args.out)
    return WriteOpenableWrapBinaryIO(sys.stdout.buffer)


def _emit(args: CommonArgs, command: str, result: Any, table: Optional[Tuple[Sequence[str], Sequence[Sequence[Any]]]] = None) -> None:
    target = _target(args)
    if args.format == 'csv':
        if table is None:
            raise InputError(f'CSV output is not available for {command!r}')
        RowsWriteable(table[0], table[1]).write_to(target)
    elif args.format == 'text':
        text = yaml.safe_dump(to_document(_report(command, result)), sort_keys=True, allow_unicode=True)
        WriteableFromStr(text).write_to(target)
    else:
        Writeable(_report(command, result)).write_to(target)


def analyze(args: AnalyzeArgs) -> None:
    if args.type is not None:
        _emit(args, 'analyze', {'type': args.type, 'record': catalog_record(args.type, args.gamma)})
        return
    if args.curve is not None:
        _emit(args, 'analyze', curve_singular_locus(poly_parse(args.curve), args.seed))
        return
    if args.germ is None:
        raise InputError('analyze needs one of --germ, --curve or --type')

    f = _affine_germ(args.germ)
    point = _point(args.point)
    record = describe_germ(f, point, with_gamma=args.gamma)
    result: Dict[str, Any] = {
        'germ': str(f),
        'point': list(point),
        'record': record,
        'nu_s_bounds': nu_s_bounds(record),
    }
    if args.tree:
        result['tree'] = resolve(f, point)
    _emit(args, 'analyze', result)


def castelnuovo(args: CastelnuovoArgs) -> None:
    x = scheme_from_document(read_document(args.file))
    p = profile(x)
    result: Dict[str, Any] = {
        'scheme': x,
        'profile': p,
        'properties': check_properties(p),
    }
    if args.degree is not None:
        curve = fixed_curve(x, args.degree)
        result['degree'] = {
            'd': args.degree,
            'h0': h0(x, args.degree),
            'h1': h1(x, args.degree),
            'fixed_curve': str(curve) if curve is not None else None,
        }
    if args.davis or args.d0 is not None:
        d0 = args.d0 if args.d0 is not None else p.d0
        if d0 is None:
            raise InputError('the Castelnuovo function has no plateau; pass --d0')
        result['davis'] = davis_split(x, d0, p)
    if args.barkats is not None:
        result['reduction'] = barkats_reduce(x, args.barkats)
    _emit(args, 'castelnuovo', result, (CSV_HEADER, p.csv_rows()))


def _summary(args: CheckArgs) -> CurveSummary:
    if args.file is not None:
        return CurveSummary.from_document(read_document(args.file))
    if args.d is None:
        raise InputError('check needs a summary file or --d')
    doc: Dict[str, Any] = {'d': args.d, 'n': args.n, 'k': args.k}
    if args.types:
        doc['types'] = args.types
    return CurveSummary.from_document(doc)


def check(args: CheckArgs) -> None:
    s = _summary(args)
    if args.d_range is not None:
        header, rows = criteria_matrix(s, _degree_range(args.d_range), args.select)
        _emit(args, 'check', {'header': header, 'rows': rows}, (header, rows))
        return

    results = SELECTORS[args.select](s)
    dimensions: Dict[str, Optional[int]] = {}
    for kind in ('es', 'ea', 's'):
        try:
            dimensions[kind] = expected_dimension(s, kind)
        except InputError:
            dimensions[kind] = None
    table = (
        ['name', 'verdict', 'lhs', 'rhs'],
        [[r.name, r.verdict.value, r.lhs, r.rhs] for r in results],
    )
    _emit(args, 'check', {'summary': s, 'criteria': results, 'expected_dimension': dimensions}, table)


def zariski(args: ZariskiArgs) -> None:
    if args.sextic:
        instance = zariski_sextic(args.seed)
        _emit(args, 'zariski', {'verification': verify_zariski(instance, args.seed)})
        return
    if args.p is None or args.d is None:
        raise InputError('zariski needs --sextic or both -p and -d')
    if args.p < 1 or args.d <= 6 * args.p:
        raise InputError(f'the construction needs d > 6p >= 6, got p = {args.p}, d = {args.d}')

    result: Dict[str, Any] = {
        'dimensions': family_dimensions(args.p, args.d),
        'existence': existence_check(args.p, args.d),
    }
    if args.build:
        instance = zariski_curve(args.p, args.d, args.seed, args.certify_irreducibility)
        result['verification'] = verify_zariski(instance, args.seed)
    _emit(args, 'zariski', result)


def gamma(args: GammaArgs) -> None:
    if args.type is not None:
        f = normal_form(args.type)
        point: Tuple[Any, Any] = (0, 0)
    elif args.germ is not None:
        f = _affine_germ(args.germ)
        point = _point(args.point)
    else:
        raise InputError('gamma needs --germ or --type')

    record = describe_germ(f, point)
    upper = gamma_upper_bound(record) if record.tau_es is not None or record.ordinary else None
    report = gamma_lower_bound(f, point=point, upper=upper)
    _emit(args, 'gamma', {'germ': str(f), 'point': list(point), 'record': record, 'gamma': report})


common = argparse.ArgumentParser(add_help=False)
common.add_argument('--format', choices=('json', 'csv', 'text'), default='json', help='output format. Defaults to json.')
common.add_argument('--out', type=str, help='write the report to this file instead of standard output.')
common.add_argument('-c', '--config', type=str, dest='config_path', help='config file in YAML format.')
common.add_argument('-v', '--verbose', action='store_true', help='log debug records to standard error.')
common.add_argument('--seed', type=int, default=0, help='seed for random draws and coordinate changes.')
common.add_argument('--budget-degree', type=int, help='degree bound for enumerated germs.')
common.add_argument('--budget-grid', type=str, help='comma separated coefficient grid for enumerated germs, e.g. "1,-1,1/2".')
common.add_argument('--jet-cap', type=int, help='largest jet order used to certify colengths.')

parser = argparse.ArgumentParser(prog='planesing', description='singularities of plane curves and equisingular families.')
parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
subparsers = parser.add_subparsers(dest='command', required=True)

parser_analyze = subparsers.add_parser('analyze', parents=[common], help='resolves a germ, a curve or a catalog type.')
parser_analyze.add_argument('--germ', type=str, help='affine equation in x, y.')
parser_analyze.add_argument('--curve', type=str, help='plane curve equation, affine in x, y or homogeneous in x, y, z.')
parser_analyze.add_argument('--type', type=str, help='catalog type such as A5, D4, E6, ord:4, node or cusp.')
parser_analyze.add_argument('--point', type=str, default='0,0', help='point of the germ as "a,b". Defaults to the origin.')
parser_analyze.add_argument('--gamma', action='store_true', help='also bracket the gamma invariant.')
parser_analyze.add_argument('--tree', action='store_true', help='include the resolution tree.')

parser_castelnuovo = subparsers.add_parser('castelnuovo', parents=[common], help='Castelnuovo function of a zero-dimensional scheme.')
parser_castelnuovo.add_argument('file', type=str, help='scheme document in YAML or JSON format.')
parser_castelnuovo.add_argument('-d', '--degree', type=int, help='also report h0, h1 and the fixed curve in this degree.')
parser_castelnuovo.add_argument('--davis', action='store_true', help='split off the fixed curve at the plateau.')
parser_castelnuovo.add_argument('--d0', type=int, help='plateau degree for the split.')
parser_castelnuovo.add_argument('--barkats', type=int, metavar='D', help='reduce the scheme for degree D.')

parser_check = subparsers.add_parser('check', parents=[common], help='evaluates numerical criteria for a curve summary.')
parser_check.add_argument('file', type=str, nargs='?', help='curve summary in YAML or JSON format.')
parser_check.add_argument('-d', type=int, help='curve degree, instead of a summary file.')
parser_check.add_argument('-n', type=int, default=0, help='number of nodes.')
parser_check.add_argument('-k', type=int, default=0, help='number of cusps.')
parser_check.add_argument('--types', type=str, help='further singularities, e.g. "2*A3, D4".')
parser_check.add_argument('--select', choices=sorted(SELECTORS), default='all', help='criteria to evaluate. Defaults to all.')
parser_check.add_argument('--d-range', type=str, help='evaluate over the degrees a:b as a verdict matrix.')

parser_zariski = subparsers.add_parser('zariski', parents=[common], help='cuspidal curves A^3 F + B^2 G and their family dimensions.')
parser_zariski.add_argument('--sextic', action='store_true', help='draw and verify a sextic A^3 + B^2 with six cusps.')
parser_zariski.add_argument('-p', type=int, help='A has degree 2p, B degree 3p.')
parser_zariski.add_argument('-d', type=int, help='degree of the curve.')
parser_zariski.add_argument('--build', action='store_true', help='draw and verify the curve, not only the dimension counts.')
parser_zariski.add_argument('--certify-irreducibility', action='store_true', help='factor the drawn curve over the rationals.')

parser_gamma = subparsers.add_parser('gamma', parents=[common], help='brackets the gamma invariant of a germ.')
parser_gamma.add_argument('--germ', type=str, help='affine equation in x, y.')
parser_gamma.add_argument('--type', type=str, help='catalog type.')
parser_gamma.add_argument('--point', type=str, default='0,0', help='point of the germ as "a,b". Defaults to the origin.')


def run(argv: Sequence[str]) -> int:
    args = parser.parse_args(list(argv))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)

    try:
        _configure(cast(CommonArgs, args))
        if args.command == 'analyze':
            analyze(cast(AnalyzeArgs, args))
        elif args.command == 'castelnuovo':
            castelnuovo(cast(CastelnuovoArgs, args))
        elif args.command == 'check':
            check(cast(CheckArgs, args))
        elif args.command == 'zariski':
            zariski(cast(ZariskiArgs, args))
        elif args.command == 'gamma':
            gamma(cast(GammaArgs, args))
        else:
            raise NotImplementedError(f'No command {args.command!r}, see --help for usage info')
    except InternalInconsistency as e:
        print(f'internal inconsistency: {e}', file=sys.stderr)
        return e.exit_code
    except PlaneSingError as e:
        print(f'error: {e}', file=sys.stderr)
        return e.exit_code
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == '__main__':
    main()
