"""Permutation gates on basis indices: exact statistics, identity
templates, and a semantics-preserving peephole optimizer for reversible
circuits."""

from .circuit import (
    BUILTIN_GATES,
    Circuit,
    Gate,
    GateInstance,
    OptimizeReport,
    cancel_adjacent_inverses,
    circuit_permutation,
    embed,
    format_circuit,
    load_circuit,
    optimize,
    parse_circuit,
    save_circuit,
    template_rewrite,
)
from .classify import (
    Bipartition,
    CensusReport,
    bipartitions,
    classify_all,
    is_hermitian,
    is_separable,
    list_gates,
    separable_factors,
)
from .counting import (
    factorial,
    involution_count,
    non_hermitian_fraction,
    render_percent,
)
from .errors import (
    CapExceeded,
    ClosureError,
    DimensionError,
    FileFormatError,
    NotationError,
    PermGateError,
    WiringError,
)
from .perm import Permutation, enumerate_permutations
from .templates import (
    GateLibrary,
    Template,
    TemplateStore,
    expand_template,
    format_store,
    generate_templates,
    load_store,
    multiplication_table,
    parse_store,
    save_store,
    two_gate_templates,
    verify_template,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_GATES",
    "Bipartition",
    "CapExceeded",
    "CensusReport",
    "Circuit",
    "ClosureError",
    "DimensionError",
    "FileFormatError",
    "Gate",
    "GateInstance",
    "GateLibrary",
    "NotationError",
    "OptimizeReport",
    "PermGateError",
    "Permutation",
    "Template",
    "TemplateStore",
    "WiringError",
    "bipartitions",
    "cancel_adjacent_inverses",
    "circuit_permutation",
    "classify_all",
    "embed",
    "enumerate_permutations",
    "expand_template",
    "factorial",
    "format_circuit",
    "format_store",
    "generate_templates",
    "involution_count",
    "is_hermitian",
    "is_separable",
    "list_gates",
    "load_circuit",
    "load_store",
    "multiplication_table",
    "non_hermitian_fraction",
    "optimize",
    "parse_circuit",
    "parse_store",
    "render_percent",
    "save_circuit",
    "save_store",
    "separable_factors",
    "template_rewrite",
    "two_gate_templates",
    "verify_template",
]
