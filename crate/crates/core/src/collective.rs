//! Exact and asymptotic statistics of the degenerate collective
//! magnetization readouts.
//!
//! Measuring the total magnetization along one axis on a spin-coherent
//! state yields a binomial distribution over the N+1 eigenspaces: outcome
//! k (spins counted along the axis) has probability C(N,k) w^k (1-w)^(N-k)
//! with w the single-spin weight for that axis.  Unlike the product-basis
//! entropies these grow only like (1/2) log2 N, the first step of the
//! classical limit.

use crate::numerics::{self, EntropyValue, Pmf};
use crate::states::{Direction, SpinCoherentState};
use crate::{Error, Result};
use std::f64::consts::{E, TAU};

/// Mean and variance of an intensive magnetization observable; both live
/// in magnetization units, so the mean is in [-1/2, 1/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
}

/// Outcome distribution of one collective magnetization readout.
///
/// Outcome labels are twice the magnetization quantum number (2k - N for k
/// spins counted along the axis), which keeps them integral for odd N; the
/// physical magnetization of a label is label / (2N), in [-1/2, 1/2].
#[derive(Debug, Clone)]
pub struct CollectivePmf {
    n_spins: u64,
    direction: Direction,
    basis_weight: f64,
    pmf: Pmf,
}

impl CollectivePmf {
    pub fn n_spins(&self) -> u64 {
        self.n_spins
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Bernoulli weight behind the binomial: p for z, q for x.
    pub fn basis_weight(&self) -> f64 {
        self.basis_weight
    }

    pub fn pmf(&self) -> &Pmf {
        &self.pmf
    }

    /// Magnetization of outcome `index`: (2k - N) / (2N).
    pub fn magnetization(&self, index: usize) -> f64 {
        self.pmf.labels()[index] as f64 / (2.0 * self.n_spins as f64)
    }
}

/// Builds the N+1-outcome binomial distribution for measuring the collective
/// magnetization along `direction`, entirely in log domain.  O(N).
pub fn collective_pmf(state: &SpinCoherentState, direction: Direction) -> Result<CollectivePmf> {
    let n = state.n_spins();
    let w = state.basis_weight(direction);
    let mut log_probs = Vec::with_capacity(n as usize + 1);
    let mut labels = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        log_probs.push(numerics::log_binomial_pmf(n, k, w)?);
        labels.push(2 * k as i64 - n as i64);
    }
    let pmf = Pmf::new(log_probs, labels)?;
    Ok(CollectivePmf {
        n_spins: n,
        direction,
        basis_weight: w,
        pmf,
    })
}

/// Closed-form moments of the collective readout: mean w - 1/2 and
/// variance w(1-w)/N.  The variance shrinking like 1/N is what
/// concentrates the distribution in the macroscopic limit.
pub fn collective_moments(state: &SpinCoherentState, direction: Direction) -> MomentSummary {
    let w = state.basis_weight(direction);
    MomentSummary {
        mean: w - 0.5,
        variance: w * (1.0 - w) / state.n_spins() as f64,
    }
}

/// Exact Shannon entropy of the N+1-outcome collective readout, in bits.
/// O(N).
pub fn collective_entropy(state: &SpinCoherentState, direction: Direction) -> Result<EntropyValue> {
    let dist = collective_pmf(state, direction)?;
    numerics::shannon_entropy(dist.pmf())
}

/// Gaussian-limit entropy of the collective readout:
/// (1/2) log2(2 pi e N w (1-w)) bits.
///
/// This is a differential-entropy surrogate: it can go negative when
/// N w(1-w) is tiny, and it refuses w in {0,1} (zero variance) outright;
/// the exact entropy of those point masses is 0.
pub fn collective_entropy_asymptotic(n_spins: u64, weight: f64) -> Result<EntropyValue> {
    if n_spins == 0 {
        return Err(Error::Domain {
            what: "spin count (requires n_spins >= 1)",
            value: 0.0,
        });
    }
    let w = numerics::clamp_probability(weight, "basis weight")?;
    if w == 0.0 || w == 1.0 {
        return Err(Error::DegenerateVariance { weight: w });
    }
    let variance_scale = n_spins as f64 * w * (1.0 - w);
    Ok(EntropyValue::from_bits(
        0.5 * (TAU * E * variance_scale).log2(),
    ))
}

/// Gaussian-limit entropy sum over both directions:
/// log2 N + (1/2) log2(4 pi^2 e^2 p q (1-p)(1-q)) bits.
///
/// Implemented as the sum of the two single-direction asymptotics, which
/// equals the closed form algebraically and makes the identity exact in
/// floating point too.
pub fn degenerate_sum_asymptotic(n_spins: u64, p: f64, q: f64) -> Result<EntropyValue> {
    let a = collective_entropy_asymptotic(n_spins, p)?;
    let b = collective_entropy_asymptotic(n_spins, q)?;
    Ok(EntropyValue::from_bits(a.bits() + b.bits()))
}
