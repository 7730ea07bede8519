from fractions import Fraction
import pytest # type: ignore[import]
from tempfile import NamedTemporaryFile

from planesing import csv
from planesing.castelnuovo import CSV_HEADER, FatPoint, profile, SchemeSpec
from planesing.io import WriteOpenableFromBytes, WriteOpenableFromPath

output_simple = b"""d,CX,h0,h1
0,1,0,5
1,2,0,3
2,3,0,0
3,0,4,0
4,0,9,0
""".replace(b'\n', b'\r\n')

def test_simple() -> None:
    p = profile(SchemeSpec([FatPoint((0, 0), 3)]))
    with NamedTemporaryFile() as f:
        csv.RowsWriteable(CSV_HEADER, p.csv_rows()).write_to(WriteOpenableFromPath(f.name))

        assert f.read() == output_simple

output_cells = b"""name,lhs,rhs,holds
ratio,1/2,3,true
missing,,-2,false
""".replace(b'\n', b'\r\n')

def test_cells() -> None:
    w = WriteOpenableFromBytes()
    csv.RowsWriteable(
        ['name', 'lhs', 'rhs', 'holds'],
        [
            ['ratio', Fraction(1, 2), Fraction(6, 2), True],
            ['missing', None, -2, False],
        ],
    ).write_to(w)

    assert w.content == output_cells

def test_without_header() -> None:
    w = WriteOpenableFromBytes()
    csv.RowsWriteable(None, [[1, 2], [3]]).write_to(w)

    assert w.content == b'1,2\r\n3\r\n'

def test_csv_args() -> None:
    w = WriteOpenableFromBytes()
    csv.RowsWriteable(['a', 'b'], [[1, 2]], csv_args={'delimiter': ';'}).write_to(w)

    assert w.content == b'a;b\r\n1;2\r\n'

def test_row_width_must_match_header() -> None:
    with pytest.raises(Exception):
        csv.RowsWriteable(['a', 'b'], [[1]])
