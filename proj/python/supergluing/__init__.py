"""Exact Cech-level computations with supermanifold gluing data.

Rational numbers are passed as strings ("3", "-1/2"); cochains come back as
text with exact fractions.
"""

from ._supergluing import (
    Error,
    Gluing,
    LevelError,
    Model,
    ParseError,
    a1_check,
    attempt_split,
    characteristic_factorization,
    commands,
    compatibility,
    glue_over_p1,
    isotriviality,
    load_model,
    obstruction,
    parse_model,
    presentation_splitting_type,
    restrict_fiber,
    rothstein,
    run,
    scale,
    scale_factor,
    secondary_dimension,
    splitting_triple,
    splitting_type,
    verify_cocycle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
