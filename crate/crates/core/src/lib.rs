//! Classification of edge-to-edge tilings of the sphere by congruent
//! equilateral pentagons.
//!
//! The crate is organised bottom-up:
//!
//! * [`sphertrig`]: spherical trigonometry of the equilateral pentagon.
//! * [`avc3`]: angle combinations at degree 3 vertices.
//! * [`cases`]: the case list (vertex sets and angle arrangements).
//! * [`solver`]: the polynomial system of a case and its multi-start solver.
//! * [`classify`]: filters, candidate lists and vertex-combination derivation.
//! * [`certify`]: exact-value and inequality certification.
//! * [`tiling`]: combinatorial tilings, generators, validation and search.
//! * [`pipeline`]: the end-to-end report.

pub mod avc3;
pub mod cases;
pub mod certify;
pub mod classify;
pub mod combo;
pub mod linalg;
pub mod pipeline;
pub mod solver;
pub mod sphertrig;
pub mod tiling;
pub mod vec3;
