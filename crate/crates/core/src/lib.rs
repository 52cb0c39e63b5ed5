//! Exact Grassmann and Clifford algebra with configurable star products.

pub mod dirac;
pub mod error;
pub mod fw;
pub mod grassmann;
pub mod phase;
pub mod scalar;
pub mod spin;
pub mod star;
pub mod susy;
pub mod verify;

pub use error::{Error, Result};
pub use grassmann::{BilinearForm, Multivector};
pub use scalar::{Bindings, Coeff, Exact};
