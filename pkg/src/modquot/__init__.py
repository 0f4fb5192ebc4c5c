"""Generic quotients of the modular group Z2 * Z3."""

from .barbell import BarbellGraph, build_barbell, count_readable, readable, theta_readable
from .genericity import GenericityParams, GenericityReport, check_Q, survey
from .isocount import (
    GenericPresentation,
    IsoVerdict,
    asymptotic_Im,
    count_orbits,
    decode_presentation,
    ell1,
    encode_presentation,
    generic_iso,
)
from .kernels import BACKEND
from .smallcancel import dehn_normalize, greendlinger_equal, pieces, satisfies_cprime
from .tuples import (
    BudgetExceeded,
    RelatorTuple,
    SymmetrizedSet,
    canonical_tuple,
    equivalent,
    orbit,
    symmetrized_closure,
)
from .words import CyclicWord, WordError, cyclic_reduce, enumerate_cyclic, eta, invert, normalize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BarbellGraph",
    "BudgetExceeded",
    "CyclicWord",
    "GenericPresentation",
    "GenericityParams",
    "GenericityReport",
    "IsoVerdict",
    "RelatorTuple",
    "SymmetrizedSet",
    "WordError",
    "asymptotic_Im",
    "build_barbell",
    "canonical_tuple",
    "check_Q",
    "count_orbits",
    "count_readable",
    "cyclic_reduce",
    "decode_presentation",
    "dehn_normalize",
    "ell1",
    "encode_presentation",
    "enumerate_cyclic",
    "equivalent",
    "eta",
    "generic_iso",
    "greendlinger_equal",
    "invert",
    "normalize",
    "orbit",
    "pieces",
    "readable",
    "satisfies_cprime",
    "survey",
    "symmetrized_closure",
    "theta_readable",
]
