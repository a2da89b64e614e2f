"""Exact verification toolkit for edge isoperimetry on the biased discrete cube.

Boolean functions live in `cube` as packed truth tables; `measure` computes
p-biased measures, influences and boundary polynomials exactly; `lex` builds
lexicographic families, their measure-space limits and Kruskal-Katona
shadows; `iso` holds the inequality checkers, stability machinery and
sharpness families; `analysis` grid-scans the underlying real inequalities;
`cli` drives exhaustive verification campaigns (entry point: cube-iso).
"""

from .cube import (
    BooleanFunction,
    HypothesisError,
    Subcube,
    Sym,
    complement,
    dual,
    enumerate_subcubes,
    is_monotone,
    make_function,
    restrict,
    subcube_indicator,
)
from .lex import BinaryExpansion, KUniformFamily, lex_family
from .measure import EdgeSet, MeasurePolynomial, Rational

__version__ = "0.1.0"

__all__ = [
    "BinaryExpansion",
    "BooleanFunction",
    "EdgeSet",
    "HypothesisError",
    "KUniformFamily",
    "MeasurePolynomial",
    "Rational",
    "Subcube",
    "Sym",
    "complement",
    "dual",
    "enumerate_subcubes",
    "is_monotone",
    "lex_family",
    "make_function",
    "restrict",
    "subcube_indicator",
    "__version__",
]
