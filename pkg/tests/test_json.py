from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import json as std_json
import pytest # type: ignore[import]
from typing import Optional

from planesing import json
from planesing.algebra import poly_parse
from planesing.criteria import Verdict
from planesing.io import WriteOpenableFromBytes
from planesing.resolution import nu_s_bounds, SingularityRecord


def _serialise(value: object) -> bytes:
    w = WriteOpenableFromBytes()
    json.Writeable(value).write_to(w)
    return w.content


class Colour(Enum):
    RED = 'red'


@dataclass(frozen=True)
class Bracket:
    lower: Fraction
    upper: Optional[Fraction]


def test_simple() -> None:
    assert _serialise(1) == b'1\n'
    assert _serialise('asdf " asdf') == b'"asdf \\" asdf"\n'
    assert std_json.loads(_serialise([0, 1, 2])) == [0, 1, 2]
    assert std_json.loads(_serialise(range(3))) == [0, 1, 2]

def test_fractions() -> None:
    assert json.to_document(Fraction(4, 2)) == 2
    assert json.to_document(Fraction(-3, 4)) == '-3/4'
    assert json.to_document([Fraction(1, 3), 2]) == ['1/3', 2]

def test_enums_and_sets() -> None:
    assert json.to_document(Verdict.INAPPLICABLE) == 'inapplicable'
    assert json.to_document(Colour.RED) == 'red'
    assert json.to_document(frozenset([3, 1, 2])) == [1, 2, 3]

def test_objects() -> None:
    assert json.to_document(poly_parse('x^2 - y^3')) == 'x^2 - y^3'
    doc = json.to_document({'bracket': Bracket(Fraction(5, 2), None), 1: None})
    assert doc['1'] is None
    assert doc['bracket'] == {'lower': '5/2', 'upper': None}

    record = SingularityRecord(m=2, r=1, delta=1, mu=2, nu_s=2, deg_xs=5, tau_es=2)
    checks = json.to_document(nu_s_bounds(record))
    assert [c['applicable'] for c in checks] == [True, False]

def test_dumps_is_stable() -> None:
    value = {'b': Fraction(1, 2), 'a': [True, None]}
    assert json.dumps(value) == json.dumps(dict(reversed(list(value.items()))))
    assert std_json.loads(json.dumps(value)) == {'a': [True, None], 'b': '1/2'}

def test_document_is_evaluated_once() -> None:
    writeable = json.Writeable(iter([1, 2]))
    assert writeable.document == [1, 2]
    assert std_json.loads(_serialise(writeable.document)) == [1, 2]
