from io import BufferedWriter, BytesIO, FileIO, TextIOBase, TextIOWrapper
from os import PathLike
from typing import Any, BinaryIO, Callable, cast, Optional, TYPE_CHECKING, Union
from typing_extensions import Protocol
import yaml

from .errors import InputError

"""

Reports are written through small openable objects instead of plain paths, so
that the same writer code serves files, standard output and in-memory buffers
in tests. Input documents (scheme specifications, curve summaries, clusters)
are YAML; JSON is accepted as well, being read through the YAML loader.

"""

if TYPE_CHECKING:
    _AnyPathLike = PathLike[Any]
else:
    _AnyPathLike = PathLike

PathType = Union[str, bytes, _AnyPathLike]


class WriteOpenable(Protocol):
    def open_text(
        self,
        encoding: Optional[str] = None,
        errors: Optional[str] = None,
        newline: Optional[str] = None,
    ) -> TextIOBase:
        ...


class WriteOpenableFromPath(WriteOpenable):
    def __init__(self, path: PathType) -> None:
        self._path: PathType = path

    def open_text(
        self,
        encoding: Optional[str] = None,
        errors: Optional[str] = None,
        newline: Optional[str] = None,
    ) -> TextIOBase:
        try:
            return cast(TextIOBase, open(self._path, mode='wt', encoding=encoding, errors=errors, newline=newline))
        except OSError as e:
            raise InputError(f'cannot write {self._path!r}: {e.strerror}') from e


class WriteOpenableWrapBinaryIO(WriteOpenable):
    """Writes into an already open binary stream such as ``sys.stdout.buffer``.

    Closing the opened object flushes but leaves the wrapped stream open.
    """

    def __init__(self, b: BinaryIO) -> None:
        self._b: BinaryIO = b

    def open_text(
        self,
        encoding: Optional[str] = None,
        errors: Optional[str] = None,
        newline: Optional[str] = None,
    ) -> TextIOBase:
        self._b.flush()
        raw = BufferedWriter(FileIO(self._b.fileno(), mode='w', closefd=False))
        return cast(TextIOBase, TextIOWrapper(raw, encoding=encoding, errors=errors, newline=newline))


class WriteOpenableFromBytes(WriteOpenable):
    """Collects everything written into :attr:`content`."""

    class _BytesIO(BytesIO):
        def __init__(self, on_close: Callable[[BytesIO], None]) -> None:
            super(WriteOpenableFromBytes._BytesIO, self).__init__()
            self._on_close: Callable[[BytesIO], None] = on_close

        def close(self) -> None:
            self._on_close(self)
            super(WriteOpenableFromBytes._BytesIO, self).close()

    def __init__(self) -> None:
        self._content: bytes = b''

    @property
    def content(self) -> bytes:
        return self._content

    def _keep(self, buffer: BytesIO) -> None:
        self._content = buffer.getvalue()

    def open_text(
        self,
        encoding: Optional[str] = None,
        errors: Optional[str] = None,
        newline: Optional[str] = None,
    ) -> TextIOBase:
        buffer = WriteOpenableFromBytes._BytesIO(self._keep)
        return cast(TextIOBase, TextIOWrapper(buffer, encoding=encoding, errors=errors, newline=newline))


class Writeable(Protocol):
    def write_to(self, w: WriteOpenable) -> None:
        ...


class WriteableFromStr(Writeable):
    def __init__(self, content: str, encoding: Optional[str] = 'utf-8') -> None:
        self._content: str = content
        self._encoding: Optional[str] = encoding

    @property
    def content(self) -> str:
        return self._content

    def write_to(self, w: WriteOpenable) -> None:
        with w.open_text(encoding=self._encoding) as f:
            f.write(self._content)


def read_document(path: PathType) -> Any:
    """Loads a YAML (or JSON) document.

    Raises:
        InputError: The file cannot be opened or does not parse.
    """

    try:
        with open(path, mode='rt', encoding='utf-8') as f:
            return yaml.safe_load(f)
    except OSError as e:
        raise InputError(f'cannot open {path!r}: {e.strerror}') from e
    except yaml.YAMLError as e:
        raise InputError(f'malformed input document {path!r}: {e}') from e
