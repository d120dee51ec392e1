"""Heilbronn triangle toolkit."""

from ._heilbronn import (
    DataError,
    DecodeError,
    __version__,
    baseline_length,
    decode_witness,
    encode_witness,
    erdos,
    estimate_mu,
    min_grid_triangle,
    min_triangle,
    optimize,
    rank,
    run_cli,
    sample_grid,
    sample_unit_square,
    unrank,
)

__all__ = [
    "DataError",
    "DecodeError",
    "__version__",
    "baseline_length",
    "decode_witness",
    "encode_witness",
    "erdos",
    "estimate_mu",
    "min_grid_triangle",
    "min_triangle",
    "optimize",
    "rank",
    "run_cli",
    "sample_grid",
    "sample_unit_square",
    "unrank",
]
