"""Independent uncolored HOMFLY oracle on encoded crossing diagrams."""
from .diagram import UNKNOT, Crossing, Diagram, DiagramError
from .skein import CrossingBudgetError, homfly_skein, skein_triple_check
from .plat import plat_closure
from .catalog import fixture_names, load_fixture

__all__ = [
    "UNKNOT",
    "Crossing",
    "CrossingBudgetError",
    "Diagram",
    "DiagramError",
    "fixture_names",
    "homfly_skein",
    "load_fixture",
    "plat_closure",
    "skein_triple_check",
]
