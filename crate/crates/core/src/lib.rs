//! Directed-rounding binary64 arithmetic, averaged pseudo-orbits of
//! recursive maps, and an exact rational oracle to measure them against.

pub mod decimal;
pub mod error;
pub mod experiments;
pub mod float_kernel;
pub mod maps;
pub mod oracle;
pub mod orbit;
pub mod rational;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
pub use float_kernel::{Binary64, RoundingMode};
pub use rational::ExactRational;
