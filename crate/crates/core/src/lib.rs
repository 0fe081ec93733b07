pub mod categorification;
pub mod category;
pub mod corpus;
mod csp;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod lifting;
pub mod localizer;
pub mod subdivision;
pub mod simplicial;
pub mod twocat;

pub use error::{Error, Result};

/// Arbitrary-precision integers used for all reported homology data.
pub type Int = num_bigint::BigInt;
pub type IntMatrix = homotopy::Matrix<Int>;
