//! Symmetric polynomials: Schur functions, Littlewood-Richardson
//! coefficients and Young-derived sequences.

mod lr;
mod poly;
mod schur;
mod young;

pub use lr::{
    duplication_check, lr_coefficient, lr_coefficient_by_product, skew_schur, skew_schur_at_ones, skew_schur_poly,
    skew_ssyt_count,
};
pub use poly::{ExactPoly, Exponent, TruncatedSeries};
pub use schur::{complete_homogeneous, schur_expand, schur_poly, schur_poly_jt, SchurExpansion};
pub use young::{
    all_hooks_n1, all_rows, expand_closed_form, expansion_to_series, young_derived, young_derived_expansion,
    ClosedForm,
};
