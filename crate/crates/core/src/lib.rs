//! Computer algebra for skeletal braided fusion categories over a symmetric
//! base `E`.
//!
//! Categories enter as fusion rings with twists. On top of that the crate
//! computes Frobenius–Perron dimensions, monodromy and Müger centers,
//! internal homs valued in `E`, and the closed-form surface invariants
//! (ground-state degeneracies) of categories that are modular over `E`.

pub mod braiding;
pub mod catalog;
pub mod category_data;
pub mod enriched_hom;
pub mod error;
pub mod fact_homology;
pub mod format;
pub mod fp_dimension;

pub use braiding::{
    centralizer, classify, classify_with_tolerance, is_dual_closed, is_transparent_pair,
    monodromy, mueger_center, Classification, MonodromyMatrix,
};
pub use catalog::{builtin_catalog, lookup, CatalogEntry};
pub use category_data::{
    fuse, validate_all, validate_embedding, validate_fusion_ring, validate_ribbon, BaseEmbedding,
    FusionRing, ObjectClass, RibbonData, ValidationReport, Violation,
};
pub use enriched_hom::{internal_hom_dual_swap, internal_hom_over_base, EnrichedHomResult};
pub use error::{Error, Result};
pub use fact_homology::{
    fh_closed_surface, fh_cylinder_check, gsd, handle_object, merge_defects, morita_necessary,
    FhOptions, FhResult, SurfaceSpec,
};
pub use format::{
    parse_category_file, parse_class_expr, parse_surface_spec, serialize_category_file,
    CategoryFile,
};
pub use fp_dimension::{
    fpdim_class, fpdims, regular_algebra_dim, relative_center_dim, DimensionVector,
};

/// Numerical tolerances shared across modules.
pub mod tol {
    /// Deviation of a twist from the unit circle, and twist equality.
    pub const TWIST: f64 = 1e-6;
    /// Successive power-iteration iterates, max norm.
    pub const POWER_ITERATION: f64 = 1e-12;
    pub const POWER_ITERATION_CAP: usize = 100_000;
    /// Dimension-character residual `|d_i d_j - Σ_k N_ij^k d_k|`.
    pub const CHARACTER: f64 = 1e-9;
    /// Default relative gap for `S̃_ij = d_i d_j`.
    pub const TRANSPARENCY: f64 = 1e-6;
    /// Relative agreement of dimension identities.
    pub const DIMENSION_IDENTITY: f64 = 1e-6;

    pub fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }
}
