//! Exact computation with NEC signatures, finite signed groups and surface-kernel
//! epimorphisms for real cyclic p-gonal surfaces.

pub mod epi;
pub mod error;
pub mod expr;
pub mod group;
pub mod ledger;
pub mod signature;
pub mod species;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use error::{Error, Result};
pub use signature::{NecSignature, TargetFamily};

/// μ/2π in machine integers.
pub type ExactArea = Ratio<i64>;
/// μ/2π without overflow.
pub type BigArea = Ratio<BigInt>;
