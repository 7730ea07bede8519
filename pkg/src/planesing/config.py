import copy
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple, Type, Union
import yaml

from .errors import InputError
from .io import PathType


DEFAULTS: Dict[str, Any] = {
    'localring': {
        'jet_cap': 64,
    },
    'invariants': {
        'budget_degree': None,
        'budget_mult': None,
        'budget_grid': ['1', '-1', '2', '-2', '1/2', '-1/2'],
        'max_candidates': 4000,
    },
    'castelnuovo': {
        'degree_cap_factor': 4,
    },
    'constructions': {
        'retry_cap': 20,
        'coefficient_bound': 5,
    },
}


def _merge(target: Dict[str, Any], source: Mapping[str, Any]) -> None:
    for key, value in source.items():
        if isinstance(value, Mapping) and isinstance(target.get(key), dict):
            _merge(target[key], value)
        else:
            target[key] = copy.deepcopy(value)


class ModuleConfig(object):
    def __init__(self, config: 'Config', key_parts: Iterable[str]) -> None:
        super(ModuleConfig, self).__init__()
        self._config: Config = config
        self._key_parts: Tuple[str, ...] = tuple(key_parts)

    @property
    def key_parts(self) -> Tuple[str, ...]:
        return self._key_parts

    def __contains__(self, key: str) -> bool:
        config_elm: Union[Dict[str, Any], Any] = self._config._config_dict
        try:
            for key_part in self._key_parts:
                config_elm = config_elm[key_part]
            return key in config_elm
        except KeyError:
            return False
        except TypeError:
            return False

    def __getitem__(self, key: str) -> Any:
        config_elm: Union[Dict[str, Any], Any] = self._config._config_dict
        key_parts = self._key_parts + (key,)
        try:
            for key_part in key_parts:
                config_elm = config_elm[key_part]
        except KeyError:
            key_str = '.'.join((self._config.namespace,) + key_parts)
            raise KeyError(f'{key!r} in {key_str} not in config')
        except TypeError:
            key_str = '.'.join((self._config.namespace,) + key_parts)
            raise KeyError(f'{key!r} in {key_str} does not resolve to a dict')

        return config_elm

    def get(self, key: str, default: Optional[Any]=None) -> Optional[Any]:
        try:
            value = self[key]
        except KeyError:
            return default

        return default if value is None else value

    def positive_int(self, key: str) -> int:
        value = self[key]
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            key_str = '.'.join((self._config.namespace,) + self._key_parts + (key,))
            raise InputError(f'config value {key_str} must be a positive integer, got {value!r}')
        return value


class Config(object):
    """Nested configuration dictionary shared by all modules.

    Modules address their section by their own dotted module name, e.g.
    ``config['planesing.localring']['jet_cap']`` or ``config[__name__]``. The
    namespace prefix is stripped, so YAML files list sections at the top
    level::

        localring:
          jet_cap: 32
    """

    def __init__(self, namespace: str='planesing', defaults: Optional[Mapping[str, Any]]=None) -> None:
        super(Config, self).__init__()
        self._namespace: str = namespace
        self._defaults: Dict[str, Any] = copy.deepcopy(dict(defaults)) if defaults is not None else {}
        self._config_dict: Dict[str, Any] = copy.deepcopy(self._defaults)

    @property
    def namespace(self) -> str:
        return self._namespace

    def __contains__(self, key: Union[str, object, Type[object]]) -> bool:
        key_parts = self._key_parts(key)
        return len(key_parts) > 0 and key_parts[0] in self._config_dict

    def __getitem__(self, key: Union[str, object, Type[object]]) -> ModuleConfig:
        return ModuleConfig(self, self._key_parts(key))

    def read_yaml(self, path: PathType) -> None:
        try:
            with open(path) as f:
                loaded = yaml.safe_load(f)
        except OSError as e:
            raise InputError(f'cannot open config file {path!r}: {e.strerror}') from e
        except yaml.YAMLError as e:
            raise InputError(f'config file {path!r} is not valid YAML: {e}') from e

        if loaded is None:
            return
        if not isinstance(loaded, Mapping):
            raise InputError(f'config file {path!r} must contain a mapping')

        self.update(loaded)

    def update(self, values: Mapping[str, Any]) -> None:
        _merge(self._config_dict, values)

    def set(self, key: str, value: Any) -> None:
        """Sets a single dotted key, e.g. ``set('planesing.localring.jet_cap', 32)``."""

        key_parts = self._key_parts(key)
        if len(key_parts) == 0:
            raise KeyError(key)

        config_elm = self._config_dict
        for key_part in key_parts[:-1]:
            config_elm = config_elm.setdefault(key_part, {})
        config_elm[key_parts[-1]] = value

    def reset(self) -> None:
        self._config_dict = copy.deepcopy(self._defaults)

    def snapshot(self) -> Dict[str, Any]:
        return copy.deepcopy(self._config_dict)

    def _key_parts(self, key: Union[str, object, Type[object]]) -> Tuple[str, ...]:
        key_parts = self._resolve_key(key).split('.')

        if key_parts[0] == self._namespace:
            key_parts = key_parts[1:]

        return tuple(key_parts)

    def _resolve_key(self, key: Union[str, object, Type[object]]) -> str:
        if isinstance(key, str):
            return key
        elif isinstance(key, type):
            return key.__module__ + '.' + key.__name__
        else:
            return key.__module__ + '.' + key.__class__.__name__


config = Config(defaults=DEFAULTS)
