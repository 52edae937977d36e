"""Diagram complexes for spaces of braids and long links.

Exact rational linear algebra on graph complexes: the braid diagram
algebra and its bar complex, the link diagram complex, the map between
them, and numeric Chen iterated integrals for planar braids.
"""

from .diagram import (Diagram, LinkDiagram, Parity, SignedKey, canonicalize,
                      canonicalize_link, chord, tripod)
from .errors import DiagramError

__all__ = ["Diagram", "LinkDiagram", "Parity", "SignedKey", "canonicalize",
           "canonicalize_link", "chord", "tripod", "DiagramError"]
__version__ = "0.1.0"
