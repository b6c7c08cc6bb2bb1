"""Python bindings for the ihlab core."""

from ._ihlab import (
    ArithmeticObstruction,
    ConstructionError,
    InputError,
    Model,
    PreconditionError,
    StructuralError,
    build_sh,
    hodge_numbers,
    llv_dimension,
    load_model,
    parse_model,
    perverse_table,
    run,
    sample_isotropic,
    validate,
)

__all__ = [
    "ArithmeticObstruction",
    "ConstructionError",
    "InputError",
    "Model",
    "PreconditionError",
    "StructuralError",
    "build_sh",
    "hodge_numbers",
    "llv_dimension",
    "load_model",
    "parse_model",
    "perverse_table",
    "run",
    "sample_isotropic",
    "validate",
]
