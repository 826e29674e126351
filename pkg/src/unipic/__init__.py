"""Invariants, completions and Picard data of forms of the affine line.

Exact computations over imperfect rational function fields F_p(t_1, ..., t_r):
p-power root towers, skew polynomial presentations of forms of the additive
group, weighted projective completions with genus oracles, and assembled
Picard-group reports.
"""

from .catalogue import CatalogueResult, run_catalogue
from .field import (
    BasisTooLarge,
    DivisionByZero,
    FieldDesc,
    FieldMismatch,
    LevelMismatch,
    MPoly,
    RatFunc,
    UnknownVariable,
    ZeroInput,
    basis_cap,
    compositum_degree,
    partial_derivative,
    pn_power_test,
    poly_gcd,
    power_level,
    pth_root,
    rf_arith,
    root_field_degree,
    subfield_membership,
    tower_field,
    tower_root,
)
from .forms import (
    FormPresentation,
    InvalidSubstitution,
    NValue,
    NotSeparable,
    PlaneModel,
    Torsor,
    VariableClash,
    equation_holds,
    find_rational_point,
    generic_fiber_torsor,
    make_form,
    make_torsor,
    plane_model_residual,
    rationality_level,
    rewrite_plane_model,
    splitting_field_degree,
    splitting_level,
)
from .linalg import RowSpace
from .picard import (
    ExactSeqData,
    InvariantReport,
    NotIrreducible,
    P1ComplementData,
    ReportOptions,
    exact_sequence_data,
    invariant_report,
    pic_p1_complement,
    torsion_bound,
    torsion_bound_unipotent,
    verify_paper_examples,
)
from .skew import (
    AdditivePoly,
    SkewDivisionError,
    SkewPoly,
    eval_additive,
    right_divmod,
    skew_arith,
    to_additive,
)
from .wproj import (
    BoundTooSmall,
    InfinityData,
    NotANaiveCompletion,
    TrivialTau,
    WeightedCurve,
    cech_h1_dim,
    genus_from_formula,
    hilbert_dim,
    is_regular_at_infinity,
    naive_completion,
    residue_from_plane_model,
)

__all__ = [
    "AdditivePoly",
    "BasisTooLarge",
    "BoundTooSmall",
    "CatalogueResult",
    "DivisionByZero",
    "ExactSeqData",
    "FieldDesc",
    "FieldMismatch",
    "FormPresentation",
    "InfinityData",
    "InvalidSubstitution",
    "InvariantReport",
    "LevelMismatch",
    "MPoly",
    "NValue",
    "NotANaiveCompletion",
    "NotIrreducible",
    "NotSeparable",
    "P1ComplementData",
    "PlaneModel",
    "RatFunc",
    "ReportOptions",
    "RowSpace",
    "SkewDivisionError",
    "SkewPoly",
    "Torsor",
    "TrivialTau",
    "UnknownVariable",
    "VariableClash",
    "WeightedCurve",
    "ZeroInput",
    "basis_cap",
    "cech_h1_dim",
    "compositum_degree",
    "equation_holds",
    "eval_additive",
    "exact_sequence_data",
    "find_rational_point",
    "generic_fiber_torsor",
    "genus_from_formula",
    "hilbert_dim",
    "invariant_report",
    "is_regular_at_infinity",
    "make_form",
    "make_torsor",
    "naive_completion",
    "partial_derivative",
    "pic_p1_complement",
    "plane_model_residual",
    "pn_power_test",
    "poly_gcd",
    "power_level",
    "pth_root",
    "rationality_level",
    "residue_from_plane_model",
    "rewrite_plane_model",
    "rf_arith",
    "right_divmod",
    "root_field_degree",
    "run_catalogue",
    "skew_arith",
    "splitting_field_degree",
    "splitting_level",
    "subfield_membership",
    "to_additive",
    "torsion_bound",
    "torsion_bound_unipotent",
    "tower_field",
    "tower_root",
    "verify_paper_examples",
]

__version__ = "0.1.0"
