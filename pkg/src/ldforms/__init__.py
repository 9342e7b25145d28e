"""Exact algebra for logarithmic differential forms in characteristic p.

Finite fields, symmetric functions, characterizing data of multiplicative good
deformation data, two-dimensional spaces of such data, exhaustive searches and
a machine-checked certificate for the nonexistence of L_{15,2} at p = 3.
"""

from .datum import CharacterizingDatum, ResidueTuple, verify_datum
from .errors import LDFormsError, ParseError, ResourceLimit
from .field import FieldElement, FieldSpec, make_field
from .lspace import LSpaceCandidate, verify_lspace
from .partition import block_structure, partition_condition
from .search import SearchOptions, search_datum, search_lspace

__version__ = "0.1.0"

__all__ = [
    "CharacterizingDatum", "ResidueTuple", "verify_datum", "LDFormsError", "ParseError", "ResourceLimit",
    "FieldElement", "FieldSpec", "make_field", "LSpaceCandidate", "verify_lspace", "block_structure",
    "partition_condition", "SearchOptions", "search_datum", "search_lspace", "__version__",
]
