"""Exact integral-point counting on polynomial plane curves."""
from .errors import FibertoolError, InputError
from .poly import BiPoly, UniPoly, primitive_form

__version__ = "0.1.0"

__all__ = ["BiPoly", "UniPoly", "primitive_form", "FibertoolError", "InputError"]
