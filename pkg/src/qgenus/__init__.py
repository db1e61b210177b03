"""qgenus: exact q-series verification engine for characteristic-form
identities of twisted elliptic genera."""

from .scalars import QQ, Scalar, I, PI, TWO_PI_I, rat
from .series import VarSpace, GradedPoly, QZSeries, eisenstein, euler_product

__all__ = [
    "QQ", "Scalar", "I", "PI", "TWO_PI_I", "rat",
    "VarSpace", "GradedPoly", "QZSeries", "eisenstein", "euler_product",
]

__version__ = "0.1.0"
