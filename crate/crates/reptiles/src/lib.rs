//! Exact integer-lattice polycubes, self-similar tiling certificates, and
//! integral cubical homology.
//!
//! Everything in this crate is exact: cells live on an integer lattice at a
//! rational working scale, isometries are signed permutations with integer
//! translations, tilings are verified by refining all geometry to a common
//! lattice and comparing cell sets, and topology is certified through
//! integral homology computed by Smith normal form. No floating point
//! appears anywhere.

pub mod cell;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod footprint;
pub mod homology;
pub mod io;
pub mod isometry;
pub mod polycube;
pub mod rotation;
pub mod verify;

pub use cell::{Cell, Facet, GridBox};
pub use constructions::{
    assemble_rstar, cube_swap, footprint_reptile, notch_non_tiler, sphere_certificate,
    sphere_footprint, sphere_pair_rotation, sphere_reptile, standard_pair_rotation, suspend,
    thicken, wedge_sum,
};
pub use error::{Error, Result};
pub use footprint::{footprint_of, stack_from_footprint, LabeledFootprint};
pub use homology::{build_complex, homology, smith_normal_form, HomologyProfile};
pub use isometry::{plane_rotation, LatticeIsometry};
pub use polycube::Polycube;
pub use rotation::{
    corner_to_y, rotation_word_to_isometry, tiling_rotation_family, tiling_rotation_words,
    RotationWord,
};
pub use verify::{
    expand_self_similar, rep_decompose, search_tiling, self_similar_decomposition,
    validate_boundary_pattern, verify_tiling, PatternReport, Placement, RepDecomposition,
    TilingCertificate, TilingFailure, TilingReport,
};
