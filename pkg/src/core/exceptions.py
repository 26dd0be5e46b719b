from fractions import Fraction
from typing import Optional


class RWPSError(Exception):
    """Base class for all verifier errors"""


class DomainViolationError(RWPSError):
    """A coefficient left the open unit interval at a specific index"""

    def __init__(self, index: int, value: Fraction, what: str = "c"):
        self.index = index
        self.value = value
        self.what = what
        super().__init__(f"{what}_{index} = {value} is outside (0,1)")


class InadmissibleParameterError(RWPSError):
    """Family parameters do not satisfy the construction's requirements"""


class DegreeBoundError(RWPSError):
    """Requested degree exceeds the configured oracle bound"""

    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(f"degree {degree} exceeds oracle bound {bound}")


class DocumentError(RWPSError):
    """Malformed sequence document or rational string"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
