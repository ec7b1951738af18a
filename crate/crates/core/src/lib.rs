//! Entropy and uncertainty statistics for collective spin measurements.
//!
//! The library models an ensemble of N spin-1/2 particles prepared in a pure
//! product state and asks how much measurement uncertainty survives when the
//! collective magnetization is read out at finite resolution.  Three readout
//! models are covered:
//!
//! * product-basis measurements on every spin (entropies grow linearly in N),
//! * degenerate collective magnetization (entropies grow logarithmically),
//! * binned magnetization at fixed bin count (entropies vanish as N grows).
//!
//! All probability mass functions are kept in log domain so that sweeps up to
//! millions of spins stay numerically stable.  A dense statevector oracle
//! provides an independent route for every analytic quantity at small N.

pub mod cli;
pub mod coarse;
pub mod collective;
mod error;
pub mod numerics;
pub mod oracle;
pub mod states;

pub use coarse::{BinningScheme, Method};
pub use error::Error;
pub use numerics::{EntropyValue, LogProb, Pmf};
pub use states::{Direction, SpinCoherentState};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
