import pytest # type: ignore[import]
from tempfile import NamedTemporaryFile

from planesing.config import Config, config, DEFAULTS
from planesing.errors import InputError


def test_defaults() -> None:
    c = Config(defaults=DEFAULTS)
    assert c['planesing.localring']['jet_cap'] == 64
    assert c['localring']['jet_cap'] == 64
    assert 'planesing.castelnuovo' in c
    assert 'planesing.nothing' not in c

def test_module_config() -> None:
    c = Config(defaults=DEFAULTS)
    section = c['planesing.invariants']
    assert 'budget_grid' in section
    assert 'unknown' not in section
    assert section.get('budget_degree', 5) == 5
    assert section.get('unknown', 7) == 7
    with pytest.raises(KeyError):
        section['unknown']

def test_set_and_reset() -> None:
    c = Config(defaults=DEFAULTS)
    c.set('planesing.localring.jet_cap', 4)
    assert c['planesing.localring'].positive_int('jet_cap') == 4
    snapshot = c.snapshot()
    c.reset()
    assert c['planesing.localring']['jet_cap'] == 64
    assert snapshot['localring']['jet_cap'] == 4

def test_positive_int() -> None:
    c = Config(defaults=DEFAULTS)
    for value in (0, -3, True, '4'):
        c.set('planesing.localring.jet_cap', value)
        with pytest.raises(InputError):
            c['planesing.localring'].positive_int('jet_cap')

def test_read_yaml() -> None:
    c = Config(defaults=DEFAULTS)
    with NamedTemporaryFile(mode='w', suffix='.yaml') as f:
        f.write('localring:\n  jet_cap: 12\nconstructions:\n  retry_cap: 3\n')
        f.flush()
        c.read_yaml(f.name)
    assert c['planesing.localring']['jet_cap'] == 12
    assert c['planesing.constructions']['retry_cap'] == 3
    assert c['planesing.constructions']['coefficient_bound'] == 5

def test_read_malformed_yaml() -> None:
    c = Config(defaults=DEFAULTS)
    with NamedTemporaryFile(mode='w', suffix='.yaml') as f:
        f.write('- just\n- a list\n')
        f.flush()
        with pytest.raises(InputError):
            c.read_yaml(f.name)
    with pytest.raises(InputError):
        c.read_yaml('/nonexistent/planesing.yaml')

def test_shared_instance_starts_from_defaults() -> None:
    config.reset()
    assert config.snapshot() == DEFAULTS
