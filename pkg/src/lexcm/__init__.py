"""Cohen-Macaulay-type properties of squarefree lexsegment complexes.

Two independent decision routes are provided: a homological oracle
(Reisner's criterion on every link, plus a shelling search) and a fast
combinatorial classifier based only on purity and connectivity of the
join factors.  :mod:`lexcm.sweep` cross-validates them exhaustively.
"""

from lexcm.errors import InvalidInputError
from lexcm.monomial import (
    LexSegmentInstance,
    Ordering,
    SqfMonomial,
    enumerate_md,
    lex_compare,
    lexsegment,
    parse_monomial,
)
from lexcm.simplicial import SimplicialComplex

__all__ = [
    "InvalidInputError",
    "LexSegmentInstance",
    "Ordering",
    "SimplicialComplex",
    "SqfMonomial",
    "enumerate_md",
    "lex_compare",
    "lexsegment",
    "parse_monomial",
]

__version__ = "0.1.0"
