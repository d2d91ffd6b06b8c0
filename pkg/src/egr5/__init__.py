"""Elliptic curves over Q(sqrt 5) with good reduction away from 2."""

from .qfield import EPS, ONE, ZERO, QuadInt, QuadRat, eps_pow, parse_quad
from .curves import WeierstrassModel
from .localred import tate_at_2

__all__ = ["EPS", "ONE", "ZERO", "QuadInt", "QuadRat", "WeierstrassModel", "eps_pow", "parse_quad", "tate_at_2"]
__version__ = "0.1.0"
