//! Exact-arithmetic toolkit for invertible weighted-homogeneous polynomial
//! singularities: classification into Fermat/chain/loop atomic types,
//! weights, central charge and Milnor number, the maximal group of diagonal
//! symmetries, the transpose mirror polynomial, standard good bases,
//! state-space sector dimensions, the Grothendieck residue pairing, and
//! mirror-consistency reports.
//!
//! Everything is computed over exact rationals and arbitrary-precision
//! integers; no floating point is used anywhere.
//!
//! ```
//! use lgkit::prelude::*;
//!
//! let f = Polynomial::parse("x1^3 + x2^3 + x3^3").unwrap();
//! let w = check_invertible(&f).unwrap();
//! let ws = weight_system(&w.matrix).unwrap();
//! assert_eq!(ws.central_charge.to_string(), "1");
//! assert_eq!(ws.milnor_number.to_string(), "8");
//!
//! let report = mirror_check(&w, 1_000_000).unwrap();
//! assert!(report.equal);
//! ```
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `lgkit` binary for the JSON command-line surface.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod mirror;
pub mod poly;
pub mod report;
pub mod symmetry;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::classify::{
        ade_label, atomic_decompose, central_charge, check_invertible, milnor_number,
        weight_system, weights, AtomicBlock, BlockKind, ChainOrientation, InvertibleStructure,
        WeightSystem,
    };
    pub use crate::error::{Error, Result};
    pub use crate::jacobian::{
        graded_monomials, hessian, isolatedness_check, jacobian_basis, reduce_top_degree,
        residue_pairing, GradedBasis, ResiduePairing, TopDegreeReducer,
    };
    pub use crate::linalg::{
        rank_and_kernel, smith_normal_form, solve_exact, IntMatrix, LinearSolution,
        RationalMatrix, SmithDecomposition,
    };
    pub use crate::mirror::{
        fjrw_state_space, mirror_check, standard_good_basis, transpose, MirrorReport, Sector,
        StateSpace,
    };
    pub use crate::poly::{rat_string, ExponentMatrix, Monomial, Polynomial, Rat};
    pub use crate::symmetry::{
        enumerate_elements, exponential_grading_element, is_member, max_symmetry_group,
        monomial_character, GroupElement, SymmetryGroup, DEFAULT_GROUP_BOUND,
    };
}
