"""Exact symbolic kernel for the triangular matrix presentations of quantum
gl_n / sl_n: PBW normal forms by noncommutative rewriting, Hopf structure
verification, semiclassical Poisson limits and root-of-unity power maps."""

from .freealg import Element, Generator, TensorElement, beta, gamma
from .presentations import PresentationSpec, build_presentation
from .scalars import Cyclo, Laurent, Rat
from .textio import format_element, parse_expression

__all__ = [
    "Cyclo",
    "Element",
    "Generator",
    "Laurent",
    "PresentationSpec",
    "Rat",
    "TensorElement",
    "beta",
    "build_presentation",
    "format_element",
    "gamma",
    "parse_expression",
]

__version__ = "0.1.0"
