pub mod error;
pub mod gid_engine;
pub mod gpoly;
pub mod linalg;
pub mod partition;
pub mod sn_rep;
pub mod super_envelope;
pub mod symfunc;
pub mod verification;
pub mod walg_model;

pub use error::{GpiError, Result};

/// Exact rationals; every coefficient in the library is one of these.
pub type Q = num_rational::BigRational;
