"""Numerical laboratory for restriction-extension operators, Schatten norms,
and Strichartz-type inequalities.

Everything lives in the compiled core; this package re-exports it. Fields are
plain complex numpy arrays paired with the GridSpec they live on.
"""

from restlab._core import (
    ExperimentReport,
    FactoredOperator,
    GridSpec,
    LittlewoodPaleyBank,
    SurfaceQuadrature,
    TranslationExperiment,
    build_weighted_operator,
    circle_quadrature,
    classify_mixed,
    compact_alpha,
    decay_fit,
    decay_scan,
    decoupling_decay,
    dft,
    dual_exponent,
    extension_apply,
    flat_segment_quadrature,
    fourier_transform_of_measure,
    free_evolve,
    gamma_operator,
    idft,
    inner_product,
    littlewood_paley_bank,
    lq_norm,
    make_grid,
    make_translation_bump,
    node_point,
    noncompactness_probe,
    orthonormal_ratio,
    paraboloid_quadrature,
    refined_family_scan,
    refined_strichartz_check,
    region_boundary,
    restriction_apply,
    scaling_partner,
    schatten_norm,
    schatten_scan,
    semiclassical_scan,
    singular_values,
    sphere_quadrature,
    strichartz_lhs,
    trace_power,
    translation_scaling,
    ts_apply,
    weak_schatten_quasinorm,
)

__version__ = "0.1.0"

__all__ = [
    "ExperimentReport",
    "FactoredOperator",
    "GridSpec",
    "LittlewoodPaleyBank",
    "SurfaceQuadrature",
    "TranslationExperiment",
    "build_weighted_operator",
    "circle_quadrature",
    "classify_mixed",
    "compact_alpha",
    "decay_fit",
    "decay_scan",
    "decoupling_decay",
    "dft",
    "dual_exponent",
    "extension_apply",
    "flat_segment_quadrature",
    "fourier_transform_of_measure",
    "free_evolve",
    "gamma_operator",
    "idft",
    "inner_product",
    "littlewood_paley_bank",
    "lq_norm",
    "make_grid",
    "make_translation_bump",
    "node_point",
    "noncompactness_probe",
    "orthonormal_ratio",
    "paraboloid_quadrature",
    "refined_family_scan",
    "refined_strichartz_check",
    "region_boundary",
    "restriction_apply",
    "scaling_partner",
    "schatten_norm",
    "schatten_scan",
    "semiclassical_scan",
    "singular_values",
    "sphere_quadrature",
    "strichartz_lhs",
    "trace_power",
    "translation_scaling",
    "ts_apply",
    "weak_schatten_quasinorm",
]
