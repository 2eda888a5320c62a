"""Exact workbench for affine Hecke algebras, Steinberg cell counts and formality.

The package computes, over exact rationals only:

* the affine Hecke algebra of GL_n in the Bernstein presentation, with a
  verified normal-form rewriting engine, its center, central characters, and
  the |W|^2-dimensional truncation at a central character (`hecke`);
* cell inventories of Steinberg varieties attached to homogeneous bundle
  collapses, their Borel-Moore Poincare vectors, graded endomorphism
  dimensions, Frobenius weights, and the fixed-point data whose totals are
  cross-checked against the truncated Hecke algebra (`steinberg`);
* a purity-driven formality engine for finite-dimensional dg-algebras with
  automorphisms, emitting certified quasi-isomorphism zigzags (`dgformality`).

Substrate: Weyl group combinatorics and Laurent polynomial arithmetic in
`combinat`, exact row reduction in `linalg`. The command line front end
lives in `cli`.
"""

from .combinat import (
    LaurentPoly,
    SemisimplePoint,
    WeylElement,
    WeylGroup,
    act_on_weight,
    bruhat_leq,
    centralizer_data,
    staircase_reduce,
    symmetric_group,
)
from .hecke import (
    HeckeAlgebra,
    HeckeElement,
    TruncatedAlgebra,
    central_character,
    is_central,
    truncated_algebra,
    verify_defining_relations,
)
from .steinberg import (
    SpringerDatum,
    dlc_report,
    ext_graded_dims,
    fixed_point_datum,
    nilpotent_datum,
    validate_b_stable,
)
from .dgformality import (
    DgAlgebra,
    cohomology,
    formality_zigzag,
    purity_check_and_bigrade,
    validate_dg_algebra,
    verify_zigzag,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "SemisimplePoint",
    "WeylElement",
    "WeylGroup",
    "act_on_weight",
    "bruhat_leq",
    "centralizer_data",
    "staircase_reduce",
    "symmetric_group",
    "HeckeAlgebra",
    "HeckeElement",
    "TruncatedAlgebra",
    "central_character",
    "is_central",
    "truncated_algebra",
    "verify_defining_relations",
    "SpringerDatum",
    "dlc_report",
    "ext_graded_dims",
    "fixed_point_datum",
    "nilpotent_datum",
    "validate_b_stable",
    "DgAlgebra",
    "cohomology",
    "formality_zigzag",
    "purity_check_and_bigrade",
    "validate_dg_algebra",
    "verify_zigzag",
    "__version__",
]
