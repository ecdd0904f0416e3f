"""abelrank: exact generating series, trace values and Schur-functor ranks
for convolution powers of perverse sheaves on abelian varieties."""

from .engine import (
    CheckResult,
    Numerators,
    TraceValues,
    f_polynomials,
    ftilde_polynomials,
    r_bullet_direct,
    r_star_direct,
    schur_rank,
    schur_table,
    sym_rank_series_adams,
    sym_rank_series_betti,
    trace_values,
    verify,
    z_series,
)
from .errors import (
    AbelrankError,
    ConsistencyError,
    DescriptorInvalidError,
    InputParseError,
    SchemaError,
)
from .exact import BivarTrunc, RationalSeries, SymLaurent, UniPoly
from .model import (
    DiagonalClass,
    SheafDescriptor,
    SpectrumEntry,
    parse_descriptor,
    preset_elliptic,
    preset_prym,
    preset_theta,
    random_descriptor,
    serialize_descriptor,
    validate,
)
from .symgroup import Partition, character, class_size, dimension, partitions_of

__version__ = "0.1.0"

__all__ = [
    "AbelrankError",
    "BivarTrunc",
    "CheckResult",
    "ConsistencyError",
    "DescriptorInvalidError",
    "DiagonalClass",
    "InputParseError",
    "Numerators",
    "Partition",
    "RationalSeries",
    "SchemaError",
    "SheafDescriptor",
    "SpectrumEntry",
    "SymLaurent",
    "TraceValues",
    "UniPoly",
    "character",
    "class_size",
    "dimension",
    "f_polynomials",
    "ftilde_polynomials",
    "parse_descriptor",
    "partitions_of",
    "preset_elliptic",
    "preset_prym",
    "preset_theta",
    "r_bullet_direct",
    "r_star_direct",
    "random_descriptor",
    "schur_rank",
    "schur_table",
    "serialize_descriptor",
    "sym_rank_series_adams",
    "sym_rank_series_betti",
    "trace_values",
    "validate",
    "verify",
    "z_series",
]
