from typing import Optional, TYPE_CHECKING

if TYPE_CHECKING:
    from .algebra import MultiPoly


class PlaneSingError(Exception):
    """Base class of all errors raised by planesing.

    ``exit_code`` is the process exit status the command line front end uses
    when the error reaches it.
    """

    exit_code: int = 1


class InputError(PlaneSingError, ValueError):
    """Malformed input or violated precondition."""

    exit_code = 1


class PolynomialSyntaxError(InputError):
    def __init__(self, message: str, text: str, position: int) -> None:
        super(PolynomialSyntaxError, self).__init__(f'{message} at position {position} in {text!r}')
        self.text: str = text
        self.position: int = position


class ArityMismatch(InputError):
    pass


class DomainLimitation(PlaneSingError):
    """The computation needs data outside of the rationals or beyond a cap."""

    exit_code = 2


class IrrationalBranchPoint(DomainLimitation):
    def __init__(self, polynomial: 'MultiPoly', message: Optional[str] = None) -> None:
        if message is None:
            message = (
                f'tangent directions given by {polynomial} are not rational; '
                'describe the germ through a cluster document instead'
            )
        super(IrrationalBranchPoint, self).__init__(message)
        self.polynomial: MultiPoly = polynomial


class NonZeroDimensionalIdeal(DomainLimitation):
    def __init__(self, order: int, message: Optional[str] = None) -> None:
        if message is None:
            message = f'ideal is not zero-dimensional at the point (no certificate up to jet order {order})'
        super(NonZeroDimensionalIdeal, self).__init__(message)
        self.order: int = order


class CommonComponentError(DomainLimitation):
    pass


class UnsupportedPiece(DomainLimitation):
    pass


class InternalInconsistency(PlaneSingError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 3
