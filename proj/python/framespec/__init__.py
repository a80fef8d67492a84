from ._framespec import *  # noqa: F401,F403
from ._framespec import (
    DomainError,
    FrameError,
    NumericalError,
    ParseError,
    schema_version,
)

__all__ = [name for name in dir() if not name.startswith("_")]
