//! # extreme-povm
//!
//! Construction, transformation and certification of extreme finite-outcome
//! POVMs on finite-dimensional Hilbert spaces.
//!
//! - [`operator`]: effects, POVM validation, spectral decomposition and
//!   conjugate renormalization.
//! - [`dilation`]: the minimal Naimark dilation built from the spectral vectors.
//! - [`extremality`]: extremality by linear independence of the outer products
//!   `|f_jk><f_jl|`, cross-checked by injectivity of `D -> J* D J` on
//!   block-diagonal operators. Non-extreme inputs come with an explicit
//!   mixing witness.
//! - [`constructions`]: rank-preserving transformations that map extreme POVMs
//!   to extreme POVMs (add a rank-1 outcome, delete, refine, multiply ranks,
//!   increase a rank, lift the dimension).
//! - [`catalog`]: rank vectors, the necessary rank conditions and the closure
//!   of PVM rank vectors under the constructions.
//! - [`packing`]: exact general and symmetric square-packing solvers with a
//!   brute-force oracle and text/SVG rendering.
//! - [`synthesis`]: extreme POVMs from symmetric packing formations.
//! - [`search`]: seeded random search for extreme POVMs with prescribed ranks.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs (and seed, where one is taken).

#![forbid(unsafe_code)]

pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod dilation;
mod error;
pub mod extremality;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod packing;
pub mod search;
pub mod synthesis;
mod tolerance;

pub use catalog::{canonicalize, RankVector};
pub use error::{Error, Result};
pub use extremality::{check_extreme_a, check_extreme_c, ExtremalityVerdict};
pub use linalg::{CMatrix, CVector, C64};
pub use operator::{validate_povm, Effect, Povm, SpectralDecomposition};
pub use tolerance::{ToleranceProfile, Tolerances};

/// A POVM bundled with the extremality verdict that certified it.
#[derive(Clone, Debug)]
pub struct CertifiedPovm {
    pub povm: Povm,
    pub verdict: ExtremalityVerdict,
}
