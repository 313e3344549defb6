"""Chirality signs of skew line pairs and triples."""

from .models import ChiralityError, LineTriple
from .signs import TripleCensus, TripleRecord, pair_sign, triple_census, triple_sign

__all__ = [
    "ChiralityError",
    "LineTriple",
    "TripleCensus",
    "TripleRecord",
    "pair_sign",
    "triple_census",
    "triple_sign",
]
