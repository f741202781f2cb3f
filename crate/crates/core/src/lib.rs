//! Exact computation of SL₂ character varieties of two-generator groups,
//! their trace fields and invariant trace fields, and a prime-by-prime
//! comparison of the Hasse-Weil zeta function of the canonical component
//! with the Dedekind zeta function of the trace field.

pub mod arith;
pub mod error;
pub mod groebner;
pub mod holonomy;
pub mod number_field;
pub mod pipeline;
pub mod presentation;
pub mod presets;
pub mod snf;
pub mod trace;
pub mod zeta;

pub use error::{Error, Result};
