import json
import pytest # type: ignore[import]
from tempfile import NamedTemporaryFile
from typing import Any, List
import yaml

from planesing.cli import run
from planesing.config import config


def _run_json(argv: List[str]) -> Any:
    with NamedTemporaryFile(suffix='.json') as out:
        try:
            assert run(argv + ['--out', out.name]) == 0
        finally:
            config.reset()
        return json.load(out)

def _run_text(argv: List[str]) -> str:
    with NamedTemporaryFile(mode='w+', suffix='.txt') as out:
        try:
            assert run(argv + ['--out', out.name]) == 0
        finally:
            config.reset()
        return out.read()


def test_analyze_germ() -> None:
    report = _run_json(['analyze', '--germ', 'x^2-y^3'])
    assert report['tool'] == 'planesing'
    assert report['command'] == 'analyze'
    assert 'localring' in report['config']
    record = report['result']['record']
    assert (record['mu'], record['delta'], record['tau'], record['nu_s'], record['deg_xs']) == (2, 1, 2, 2, 5)
    assert record['label'] == 'A2'
    assert report['result']['nu_s_bounds'][0]['holds'] is True

def test_analyze_with_tree_and_point() -> None:
    report = _run_json(['analyze', '--germ', '(x-1)^2-(y+1)^2', '--point', '1,-1', '--tree'])
    assert report['result']['point'] == [1, -1]
    assert report['result']['record']['label'] == 'A1'
    assert len(report['result']['tree']['nodes']) == 3

def test_analyze_type() -> None:
    report = _run_json(['analyze', '--type', 'cusp', '--gamma'])
    assert report['result']['record']['gamma_lower'] == 9

def test_analyze_errors() -> None:
    assert run(['analyze', '--germ', 'x^3-y^3']) == 2
    assert run(['analyze']) == 1
    assert run(['analyze', '--germ', 'x^2-y^3', '--point', '1']) == 1
    assert run(['analyze', '--germ', 'x*z']) == 1
    assert run(['analyze', '--type', 'cusp', '--format', 'csv']) == 1
    config.reset()

def test_castelnuovo() -> None:
    with NamedTemporaryFile(mode='w', suffix='.yaml') as scheme:
        scheme.write('points: [[0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [0, 1]]\n')
        scheme.flush()
        report = _run_json(['castelnuovo', scheme.name, '--davis', '-d', '2', '--barkats', '3'])
    result = report['result']
    assert result['profile']['cx'][:6] == [1, 2, 1, 1, 1, 0]
    assert result['degree'] == {'d': 2, 'h0': 2, 'h1': 2, 'fixed_curve': 'y'}
    assert result['davis']['verified'] is True
    assert result['reduction']['k'] == 1
    assert all(p['holds'] for p in result['properties'])

def test_castelnuovo_csv() -> None:
    with NamedTemporaryFile(mode='w', suffix='.yaml') as scheme:
        scheme.write('pieces:\n  - kind: fat\n    point: [0, 0]\n    m: 3\n')
        scheme.flush()
        text = _run_text(['castelnuovo', scheme.name, '--format', 'csv'])
    lines = text.splitlines()
    assert lines[0] == 'd,CX,h0,h1'
    assert lines[3] == '2,3,0,0'

def test_castelnuovo_missing_file() -> None:
    assert run(['castelnuovo', '/nonexistent/scheme.yaml']) == 1

def test_check() -> None:
    report = _run_json(['check', '-d', '6', '-k', '6', '--select', 'smoothness'])
    criteria = {c['name']: c for c in report['result']['criteria']}
    assert criteria['smoothness_nodes_cusps']['verdict'] == 'pass'
    assert report['result']['expected_dimension']['es'] == 15

def test_check_summary_file() -> None:
    with NamedTemporaryFile(mode='w', suffix='.yaml') as summary:
        summary.write('d: 6\nk: 6\n')
        summary.flush()
        report = _run_json(['check', summary.name, '--select', 'irreducibility'])
    criteria = {c['name']: c for c in report['result']['criteria']}
    assert criteria['irreducibility_nodes_cusps']['verdict'] == 'fail'

def test_check_matrix_csv() -> None:
    text = _run_text(['check', '-d', '6', '-k', '6', '--select', 'smoothness', '--d-range', '6:8', '--format', 'csv'])
    lines = text.splitlines()
    assert lines[0].startswith('d,smoothness_gamma')
    assert [line.split(',')[0] for line in lines[1:]] == ['6', '7', '8']

def test_check_errors() -> None:
    assert run(['check']) == 1
    assert run(['check', '-d', '6', '--d-range', '8:6']) == 1

def test_zariski() -> None:
    assert run(['zariski', '-p', '1', '-d', '6']) == 1
    assert run(['zariski']) == 1
    report = _run_json(['zariski', '-p', '15', '-d', '91'])
    dimensions = report['result']['dimensions']
    assert dimensions['dim_expected_component'] == 1577
    assert dimensions['dim_constructed_family'] == 1580
    assert dimensions['window_valid'] is True

def test_gamma() -> None:
    report = _run_json(['gamma', '--type', 'A2'])
    assert report['result']['gamma']['lower'] == 9
    assert report['result']['gamma']['exact'] is True

def test_text_format_and_options() -> None:
    text = _run_text(['analyze', '--germ', 'x^2-y^2', '--format', 'text', '--jet-cap', '32', '--budget-grid', '1,-1'])
    report = yaml.safe_load(text)
    assert report['command'] == 'analyze'
    assert report['config']['localring']['jet_cap'] == 32
    assert report['config']['invariants']['budget_grid'] == ['1', '-1']

def test_config_file() -> None:
    with NamedTemporaryFile(mode='w', suffix='.yaml') as cfg:
        cfg.write('castelnuovo:\n  degree_cap_factor: 2\n')
        cfg.flush()
        report = _run_json(['analyze', '--germ', 'x^2-y^3', '-c', cfg.name])
    assert report['config']['castelnuovo']['degree_cap_factor'] == 2

def test_version() -> None:
    with pytest.raises(SystemExit):
        run(['--version'])
