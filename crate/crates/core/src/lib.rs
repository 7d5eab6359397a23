pub mod cli;
pub mod combinat;
pub mod error;
pub mod envelope;
pub mod exactalg;
pub mod fixedpoints;
pub mod rmatrix;
pub mod suite;
pub mod weightfn;

pub use error::{Error, Result};
