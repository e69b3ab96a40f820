//! Evaluation codes over projective tori and toric point sets: exact
//! generalized Hamming weight hierarchies, the closed-form weight formulas
//! for torus codes, and machine cross-checks between the two.

pub mod cli;
pub mod evalcode;
pub mod field;
pub mod formulas;
pub mod geometry;
pub mod ghw;
pub mod matrix;
pub mod poly;

pub use evalcode::{
    build_code, build_code_with_normalizers, dual_code, hilbert_profile, is_degenerate, CodeError,
    CodeProvenance, HilbertProfile, LinearCode,
};
pub use field::{Field, FieldElem, FieldError};
pub use formulas::{
    ci_a_level_hierarchy, ci_mds_range, ci_tail_weights, d1_torus, d2_bipartite, d2_torus,
    kl_decompose, max_common_zeros, z1, z2, FormulaError, KLDecomp, TorusParams,
};
pub use geometry::{
    bipartite_points, standardize, toric_points, torus_points, GeometryError, PointSet, ProjPoint,
    Provenance,
};
pub use ghw::{
    duality_complete, gaussian_binomial, ghw_by_subspaces, ghw_exact, hierarchy_exact, is_r_mds,
    min_distance, GhwError, Method, OracleCaps, WeightHierarchy,
};
pub use matrix::GfMatrix;
pub use poly::{construct_zero_maximizers, monomial_basis, HomogPoly, Monomial, PolyError};
