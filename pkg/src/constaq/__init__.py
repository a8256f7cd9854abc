"""constaq: constacyclic BCH codes, spectral decoding and quantum constacyclic codes."""

from .field import FieldElement, FieldSpec, build_field, discrete_log, elem_from_power, in_subfield, trace

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "build_field",
    "discrete_log",
    "elem_from_power",
    "in_subfield",
    "trace",
]
