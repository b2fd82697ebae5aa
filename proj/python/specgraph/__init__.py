from ._core import *  # noqa: F401,F403
from ._core import InvariantViolation, LaplacianKind, ValidationError

__all__ = [name for name in dir() if not name.startswith("_")]
