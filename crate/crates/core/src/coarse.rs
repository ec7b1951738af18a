//! Finite-resolution readout: the magnetization range [-1/2, 1/2] is split
//! into equal half-open bins and a measurement reports only the bin index.
//!
//! Binning is the step that makes the entropy sum for two incompatible
//! directions vanish: once the binomial concentrates inside one bin per
//! direction, both distributions approach point masses.  Bin membership of
//! discrete outcomes is decided by exact integer cross-multiplication, so
//! an outcome sitting exactly on an edge lands deterministically in the
//! upper bin instead of wherever floating-point noise happens to push it.

use crate::numerics::{self, EntropyValue, LogProb, Pmf};
use crate::states::{Direction, SpinCoherentState};
use crate::{Error, Result};

/// Allocation guard for pmfs over bins; a pmf this long is ~0.8 GB.
const MAX_BINS: u64 = 100_000_000;

/// Equal-width partition of [-1/2, 1/2] into `n_bins` half-open intervals;
/// bin n (1-based) covers [-1/2 + (n-1)/N_b, -1/2 + n/N_b), with
/// magnetization +1/2 assigned to the last bin.  The same scheme is used
/// for both measurement directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinningScheme {
    n_bins: u64,
}

impl BinningScheme {
    pub fn new(n_bins: u64) -> Result<Self> {
        if n_bins == 0 {
            return Err(Error::Domain {
                what: "bin count (requires n_bins >= 1)",
                value: 0.0,
            });
        }
        if n_bins > MAX_BINS {
            return Err(Error::Domain {
                what: "bin count (exceeds the 1e8 allocation guard)",
                value: n_bins as f64,
            });
        }
        Ok(BinningScheme { n_bins })
    }

    pub fn n_bins(&self) -> u64 {
        self.n_bins
    }

    /// Lower magnetization edge of `bin` (1-based): -1/2 + (bin-1)/N_b.
    pub fn lower_edge(&self, bin: u64) -> f64 {
        (bin as f64 - 1.0) / self.n_bins as f64 - 0.5
    }

    /// Upper magnetization edge of `bin`: -1/2 + bin/N_b.
    pub fn upper_edge(&self, bin: u64) -> f64 {
        bin as f64 / self.n_bins as f64 - 0.5
    }
}

/// How a binned distribution was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact log-domain summation of the binomial over each bin.
    Exact,
    /// Normal approximation integrated bin-wise, renormalized over the
    /// physical range.
    Gaussian,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Gaussian => "gaussian",
        }
    }
}

/// Outcome distribution over bins 1..=N_b for one measurement direction.
#[derive(Debug, Clone)]
pub struct BinnedPmf {
    scheme: BinningScheme,
    direction: Direction,
    method: Method,
    pmf: Pmf,
}

impl BinnedPmf {
    pub fn scheme(&self) -> BinningScheme {
        self.scheme
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Underlying pmf; labels are the bin numbers 1..=N_b.
    pub fn pmf(&self) -> &Pmf {
        &self.pmf
    }

    /// Probability of landing in `bin` (1-based).
    pub fn bin_prob(&self, bin: u64) -> f64 {
        self.pmf.prob(bin as usize - 1)
    }
}

/// Bin number of a magnetization value: min(N_b, floor((m + 1/2) N_b) + 1).
/// Values outside [-1/2, 1/2] by more than 1e-12 are rejected; the slack
/// band clamps.
pub fn bin_index(magnetization: f64, scheme: BinningScheme) -> Result<u64> {
    if !(magnetization >= -0.5 - 1e-12 && magnetization <= 0.5 + 1e-12) {
        return Err(Error::Domain {
            what: "magnetization (requires [-1/2, 1/2])",
            value: magnetization,
        });
    }
    let m = magnetization.clamp(-0.5, 0.5);
    let raw = ((m + 0.5) * scheme.n_bins() as f64).floor() as u64 + 1;
    Ok(raw.min(scheme.n_bins()))
}

/// Bin that the mean of a weight-w binomial concentrates into:
/// floor(N_b w) + 1 for w < 1 and N_b for w = 1.  Agrees with
/// `bin_index(w - 1/2, scheme)`.
pub fn concentration_bin(weight: f64, scheme: BinningScheme) -> Result<u64> {
    let w = numerics::clamp_probability(weight, "concentration weight")?;
    let nb = scheme.n_bins();
    if w >= 1.0 {
        return Ok(nb);
    }
    Ok(((nb as f64 * w).floor() as u64 + 1).min(nb))
}

// Bin of the k-th binomial outcome, decided in exact integer arithmetic:
// the outcome magnetization (2k-N)/(2N) shifted by 1/2 is k/N, so bin n
// holds it iff (n-1)/N_b <= k/N < n/N_b, i.e. n = floor(k N_b / N) + 1,
// with k = N capped into the last bin.
fn outcome_bin(k: u64, n_spins: u64, n_bins: u64) -> u64 {
    let idx = (k as u128 * n_bins as u128) / n_spins as u128;
    (idx as u64 + 1).min(n_bins)
}

/// Exact binned distribution: every binomial outcome is routed to its bin
/// and the bin masses are log-sum-exp'd.  One O(N + N_b) pass.
pub fn binned_pmf_exact(
    state: &SpinCoherentState,
    scheme: BinningScheme,
    direction: Direction,
) -> Result<BinnedPmf> {
    let n = state.n_spins();
    let w = state.basis_weight(direction);
    let nb = scheme.n_bins();
    let mut per_bin: Vec<Vec<f64>> = vec![Vec::new(); nb as usize];
    for k in 0..=n {
        let lp = numerics::log_binomial_pmf(n, k, w)?;
        if !lp.is_zero_mass() {
            let bin = outcome_bin(k, n, nb);
            per_bin[bin as usize - 1].push(lp.value());
        }
    }
    // When one bin swallows the whole distribution its probability is 1 by
    // construction; summing the terms would only re-accumulate rounding
    // noise, so short-circuit to an exact point mass instead.
    let occupied = per_bin.iter().filter(|terms| !terms.is_empty()).count();
    let mut log_probs = Vec::with_capacity(nb as usize);
    let mut labels = Vec::with_capacity(nb as usize);
    for (i, terms) in per_bin.iter().enumerate() {
        let prob = if terms.is_empty() {
            LogProb::IMPOSSIBLE
        } else if occupied == 1 {
            LogProb::CERTAIN
        } else {
            let value = numerics::log_sum_exp_raw(terms).expect("bin has terms");
            LogProb::new(value)?
        };
        log_probs.push(prob);
        labels.push(i as i64 + 1);
    }
    let pmf = Pmf::new(log_probs, labels)?;
    Ok(BinnedPmf {
        scheme,
        direction,
        method: Method::Exact,
        pmf,
    })
}

/// Normal-approximation binned distribution: each bin takes the Gaussian
/// mass between its edges, then the whole vector is renormalized over
/// [-1/2, 1/2] because the Gaussian leaks mass outside the physical range.
/// Refuses zero-variance weights; use the exact method for point masses.
pub fn binned_pmf_gaussian(
    state: &SpinCoherentState,
    scheme: BinningScheme,
    direction: Direction,
) -> Result<BinnedPmf> {
    let w = state.basis_weight(direction);
    if w == 0.0 || w == 1.0 {
        return Err(Error::DegenerateVariance { weight: w });
    }
    let mean = w - 0.5;
    let variance = w * (1.0 - w) / state.n_spins() as f64;
    let total = numerics::gaussian_interval_mass(mean, variance, -0.5, 0.5)?;
    let nb = scheme.n_bins();
    let mut log_probs = Vec::with_capacity(nb as usize);
    let mut labels = Vec::with_capacity(nb as usize);
    for bin in 1..=nb {
        let mass = numerics::gaussian_interval_mass(
            mean,
            variance,
            scheme.lower_edge(bin),
            scheme.upper_edge(bin),
        )?;
        log_probs.push(LogProb::new((mass / total).ln())?);
        labels.push(bin as i64);
    }
    let pmf = Pmf::with_tolerance(log_probs, labels, 1e-6)?;
    Ok(BinnedPmf {
        scheme,
        direction,
        method: Method::Gaussian,
        pmf,
    })
}

/// Shannon entropy of the exact binned readout along `direction`, bits.
/// Bounded by log2(N_b).
pub fn binned_entropy(
    state: &SpinCoherentState,
    scheme: BinningScheme,
    direction: Direction,
) -> Result<EntropyValue> {
    let dist = binned_pmf_exact(state, scheme, direction)?;
    numerics::shannon_entropy(dist.pmf())
}

/// Binned x entropy plus binned z entropy (exact method).  The quantity
/// that vanishes in the macroscopic limit at fixed N_b.
pub fn binned_entropy_sum(state: &SpinCoherentState, scheme: BinningScheme) -> Result<EntropyValue> {
    let x = binned_entropy(state, scheme, Direction::X)?;
    let z = binned_entropy(state, scheme, Direction::Z)?;
    Ok(EntropyValue::from_bits(x.bits() + z.bits()))
}

/// One row of a bin-growth experiment.
#[derive(Debug, Clone, Copy)]
pub struct ScalingPoint {
    pub n_spins: u64,
    pub n_bins: u64,
    pub h_x: EntropyValue,
    pub h_z: EntropyValue,
}

impl ScalingPoint {
    pub fn entropy_sum(&self) -> EntropyValue {
        EntropyValue::from_bits(self.h_x.bits() + self.h_z.bits())
    }
}

/// Runs the bin-growth experiment: for each N in `n_grid` the bin count is
/// N_b = max(1, round(base_bins * N^alpha)) and the exact binned entropies
/// are evaluated for the template's (p, phi).  alpha = 0 reproduces a fixed
/// N_b = base_bins; alpha = 1/2 is the growth-rate watershed for whether
/// the entropy sum still vanishes.
pub fn scaling_sweep(
    template: &SpinCoherentState,
    alpha: f64,
    n_grid: &[u64],
    base_bins: u64,
) -> Result<Vec<ScalingPoint>> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain {
            what: "bin-growth exponent alpha (requires alpha >= 0)",
            value: alpha,
        });
    }
    if base_bins == 0 {
        return Err(Error::Domain {
            what: "base_bins (requires base_bins >= 1)",
            value: 0.0,
        });
    }
    if n_grid.is_empty() {
        return Err(Error::EmptyInput { what: "n_grid" });
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain {
            what: "n_grid (requires strictly ascending sizes)",
            value: f64::NAN,
        });
    }
    let mut points = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let state = template.with_n_spins(n)?;
        let bins = (base_bins as f64 * (n as f64).powf(alpha)).round();
        let n_bins = if bins >= MAX_BINS as f64 {
            MAX_BINS
        } else {
            (bins as u64).max(1)
        };
        let scheme = BinningScheme::new(n_bins)?;
        points.push(ScalingPoint {
            n_spins: n,
            n_bins,
            h_x: binned_entropy(&state, scheme, Direction::X)?,
            h_z: binned_entropy(&state, scheme, Direction::Z)?,
        });
    }
    Ok(points)
}
