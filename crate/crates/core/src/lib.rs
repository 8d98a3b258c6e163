//! Filling permutations for pairs of simple closed curves on closed orientable
//! surfaces.
//!
//! A filling pair `(α, β)` meeting `n` times cuts the surface into polygons. Each
//! polygon side gets a label in `1..=4n`, and the permutation `σ` lists the sides
//! of each polygon in order. This crate validates such permutations, computes
//! genus and vertex data, tests equivalence under relabeling, glues and cuts
//! connected sums, and enumerates small cases exhaustively.
//!
//! ```
//! use fillperm::{fixtures, surgery};
//!
//! let host = fixtures::sigma_f();
//! let piece = fixtures::sigma_z();
//! let site = surgery::attachment_site(&host, 3).unwrap();
//! let glued = surgery::assemble(&host, &piece, site).unwrap().result;
//! assert_eq!(glued.genus(), 6);
//! assert_eq!(glued, fixtures::sigma_f6());
//! ```

pub mod census;
pub mod cli;
pub mod filling;
pub mod fixtures;
pub mod io;
pub mod perm;
pub mod surgery;
pub mod twist;

pub use filling::{validate, FillingError, FillingPermutation, ZType};
pub use perm::{PermError, Permutation};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Filling(#[from] FillingError),
    #[error(transparent)]
    Twist(#[from] twist::TwistError),
    #[error(transparent)]
    Surgery(#[from] surgery::SurgeryError),
    #[error(transparent)]
    Census(#[from] census::CensusError),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{0}")]
    Io(String),
}
