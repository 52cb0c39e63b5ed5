//! Grassmann algebra: multivectors, bilinear forms, contraction, and the
//! involution, Hodge dual, Berezin integral and trace.

mod bilinear;
mod contraction;
mod multivector;
pub mod random;

pub use bilinear::{pauli_form, pauli_form_exact, BilinearForm};
pub use contraction::{circle_product, contract_closed, contract_rules, gamma_generator};
pub use multivector::{default_trace_normalization, wedge_sign, Mask, Multivector, MAX_DIM};
