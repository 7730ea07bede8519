import csv
from fractions import Fraction
from typing import Any, Iterable, List, Mapping, Optional, Sequence

from .io import WriteOpenable

_Row = Iterable[Any]
_Rows = Iterable[Iterable[Any]]


def _cell(value: Any) -> Any:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f'{value.numerator}/{value.denominator}'
    return value


class RowsWriteable(object):
    """Writes a header row followed by data rows as CSV.

    Args:
        header: Column names, written first unless ``None``.
        rows: Data rows. Fractions are written as ``p/q``, booleans as
            ``true``/``false`` and ``None`` as an empty cell.
        csv_args: Args passed to :func:`csv.writer`. This may include the
            ``dialect`` key.
    """

    def __init__(
        self,
        header: Optional[_Row],
        rows: _Rows,
        csv_args: Optional[Mapping[str, Any]] = None,
    ) -> None:
        super(RowsWriteable, self).__init__()
        self._header: Optional[List[Any]] = list(header) if header is not None else None
        self._rows: List[List[Any]] = [[_cell(value) for value in row] for row in rows]
        self._csv_args: Mapping[str, Any] = csv_args if csv_args is not None else {}

        if self._header is not None:
            for row in self._rows:
                if len(row) != len(self._header):
                    raise Exception(f'Row {row!r} does not match header of {len(self._header)} columns')

    @property
    def header(self) -> Optional[Sequence[Any]]:
        return self._header

    @property
    def rows(self) -> Sequence[Sequence[Any]]:
        return self._rows

    def write_to(self, o: WriteOpenable) -> None:
        with o.open_text(encoding='utf-8', newline='') as f:
            writer = csv.writer(f, **self._csv_args)
            if self._header is not None:
                writer.writerow(self._header)
            writer.writerows(self._rows)
