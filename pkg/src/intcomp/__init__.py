"""Exact interval completion on small graphs, with structural checkers."""

from .graph import Graph, Special, augment, components
from .model import Event, IntervalModel
from .recognize import NotInterval, canonical_model, recognize

__all__ = [
    "Event",
    "Graph",
    "IntervalModel",
    "NotInterval",
    "Special",
    "augment",
    "canonical_model",
    "components",
    "recognize",
]
