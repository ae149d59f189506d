//! Exact computations for the HRS tilt of finitely generated abelian groups
//! at the torsion pair (finite groups, free groups).
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod b;
pub mod ctilt;
pub mod decorated;
pub mod dg;
pub mod error;
pub mod group;
pub mod hom;
mod kernel;
pub mod matrix;
pub mod tot;

pub use error::{Error, Result};
pub use group::{pullback, pushout, torsion_decompose, DirectSum, FgGroup, GroupMap, Subgroup, TorsionDecomposition};
pub use hom::{hom_group, solve_commuting, CommutingSolution, HomSpace, LinearSystem, SystemSolution, Term};
pub use matrix::{ColumnEchelon, IntMatrix, Snf};
pub use num_bigint::BigInt;
