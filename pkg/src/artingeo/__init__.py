"""Geodesic calculus and rapid-decay experiments for Artin groups of large type."""

from .presentation import INF, CoxeterPresentation, PresentationError
from .words import Word, format_word, free_reduce, parse_word

__all__ = [
    "INF",
    "CoxeterPresentation",
    "PresentationError",
    "Word",
    "format_word",
    "free_reduce",
    "parse_word",
]

__version__ = "0.1.0"
