#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod basis;
pub mod cli;
pub mod cwf_ode;
pub mod discrete_well;
pub mod error;
pub mod quadrature;
pub mod surface_integrals;

pub use error::{CwfError, Result};
