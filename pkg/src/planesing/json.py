import dataclasses
from enum import Enum
from fractions import Fraction
import json
from typing import Any, cast, Iterable, Mapping, TextIO

from .io import WriteOpenable


def to_document(value: Any) -> Any:
    """Converts report values into plain JSON-compatible data.

    Fractions become ints when integral and ``"p/q"`` strings otherwise.
    Objects providing ``to_document()`` (polynomials, trees, profiles) are
    asked to convert themselves, remaining dataclasses are turned into dicts.
    Sets are sorted so that repeated runs serialise identically.
    """

    if value is None or isinstance(value, (bool, int, float, str)):
        return value

    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f'{value.numerator}/{value.denominator}'

    if isinstance(value, Enum):
        return to_document(value.value)

    to_doc = getattr(value, 'to_document', None)
    if callable(to_doc):
        return to_document(to_doc())

    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            field.name: to_document(getattr(value, field.name)) for field in dataclasses.fields(value)
        }

    if isinstance(value, Mapping):
        return {
            str(to_document(key)): to_document(val) for key, val in value.items()
        }

    if isinstance(value, (set, frozenset)):
        return sorted((to_document(element) for element in value), key=repr)

    if isinstance(value, (bytes, bytearray)):
        return value.decode('utf-8')

    if isinstance(value, Iterable):
        return [to_document(element) for element in value]

    return str(value)


def dumps(value: Any) -> str:
    return json.dumps(to_document(value), sort_keys=True, indent=2) + '\n'


class Writeable(object):
    def __init__(self, value: Any) -> None:
        self._val: Any = to_document(value)

    @property
    def document(self) -> Any:
        return self._val

    def write_to(self, o: WriteOpenable) -> None:
        with o.open_text(encoding='utf-8') as f:
            json.dump(self._val, cast(TextIO, f), sort_keys=True, indent=2)
            f.write('\n')
