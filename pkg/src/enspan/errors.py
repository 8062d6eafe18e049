"""
enspan exceptions

classes:
    - SpannerError -- base class (a ValueError)
    - PatternError -- pattern syntax/semantics error with byte offset
    - BudgetError  -- configured size budget exceeded
    - EngineError  -- engine constraint violated
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


class SpannerError(ValueError):
    """ base error of enspan """


class PatternError(SpannerError):
    """ pattern error at a byte offset """

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class BudgetError(SpannerError):
    """ budget exceeded; `required` is the size that would have been needed """

    def __init__(self, message: str, required: int | None = None) -> None:
        super().__init__(message if required is None else f"{message}: required {required}")
        self.required = required


class EngineError(SpannerError):
    pass
