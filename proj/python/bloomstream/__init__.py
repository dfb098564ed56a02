"""Stream clustering on a decayed count-min sketch and bloom-filter cluster signatures."""

from ._core import (
    BloomStream,
    ConfigError,
    DomainError,
    Geometry,
    IoError,
    MonotonicityError,
    SketchParams,
    base_hash_count,
    derive_cm_guarantees,
    derive_geometry,
    evaluate_over_horizons,
    fragment_capacity,
    generate_stream,
    next_prime,
    predicted_fp,
    purity,
)

__all__ = [
    "BloomStream",
    "ConfigError",
    "DomainError",
    "Geometry",
    "IoError",
    "MonotonicityError",
    "SketchParams",
    "base_hash_count",
    "derive_cm_guarantees",
    "derive_geometry",
    "evaluate_over_horizons",
    "fragment_capacity",
    "generate_stream",
    "next_prime",
    "predicted_fp",
    "purity",
]
