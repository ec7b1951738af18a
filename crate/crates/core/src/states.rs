//! Spin-coherent product states and their product-basis measurement
//! statistics.
//!
//! A state is N identical spin-1/2 factors, each sqrt(p)|0> +
//! e^(i phi) sqrt(1-p)|1>.  Measuring every spin separately along z is a
//! Bernoulli(p) trial per spin; along x it is Bernoulli(q) with
//! q = 1/2 + sqrt(p(1-p)) cos(phi).  Entropies of those product
//! measurements grow linearly in N, which is what keeps the entropic
//! uncertainty bound saturable at any size.

use crate::numerics::{self, EntropyValue};
use crate::{Error, Result};
use std::f64::consts::TAU;

/// Which collective axis a measurement reads out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Z,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::X => "x",
            Direction::Z => "z",
        }
    }
}

/// Product state of `n_spins` identical spin-1/2 factors, parameterized by
/// the |0> weight `p` and the relative phase `phi`.
///
/// The derived x-basis weight q is recomputed on demand rather than stored,
/// so the two parameters can never drift out of sync with it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCoherentState {
    n_spins: u64,
    p: f64,
    phi: f64,
}

impl SpinCoherentState {
    /// Validates `n_spins >= 1` and `p` in [0,1] (1e-12 slack clamps);
    /// `phi` is wrapped into [0, 2 pi).
    pub fn new(n_spins: u64, p: f64, phi: f64) -> Result<Self> {
        if n_spins == 0 {
            return Err(Error::Domain {
                what: "spin count (requires n_spins >= 1)",
                value: 0.0,
            });
        }
        let p = numerics::clamp_probability(p, "single-spin weight p")?;
        if !phi.is_finite() {
            return Err(Error::Domain {
                what: "phase phi (requires finite radians)",
                value: phi,
            });
        }
        let phi = phi.rem_euclid(TAU);
        Ok(SpinCoherentState { n_spins, p, phi })
    }

    pub fn n_spins(&self) -> u64 {
        self.n_spins
    }

    /// Weight of |0> in each factor; the z-basis Bernoulli parameter.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Relative phase in [0, 2 pi).
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Same parameters on a different system size.
    pub fn with_n_spins(&self, n_spins: u64) -> Result<Self> {
        SpinCoherentState::new(n_spins, self.p, self.phi)
    }

    /// q = 1/2 + sqrt(p(1-p)) cos(phi): the chance of projecting one factor
    /// onto |+>; clamped to [0,1] against roundoff at the extremes.
    pub fn x_projection_prob(&self) -> f64 {
        let q = 0.5 + (self.p * (1.0 - self.p)).sqrt() * self.phi.cos();
        q.clamp(0.0, 1.0)
    }

    /// Bernoulli weight of the single-spin measurement along `direction`:
    /// p for z, q for x.
    pub fn basis_weight(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Z => self.p,
            Direction::X => self.x_projection_prob(),
        }
    }

    /// Entropy of measuring all N spins one by one along `direction`:
    /// N h(w) bits with w the basis weight.
    pub fn product_basis_entropy(&self, direction: Direction) -> EntropyValue {
        let w = self.basis_weight(direction);
        let h = numerics::binary_entropy(w).expect("basis weight is a clamped probability");
        EntropyValue::from_bits(self.n_spins as f64 * h.bits())
    }

    /// N (h(p) + h(q)): the product-basis x entropy plus z entropy.  Never
    /// drops below [`eur_product_bound`] minus 1e-9.
    pub fn eur_sum_product(&self) -> EntropyValue {
        EntropyValue::from_bits(
            self.product_basis_entropy(Direction::X).bits()
                + self.product_basis_entropy(Direction::Z).bits(),
        )
    }

    /// Per-spin magnetization means (x, y, z).  The collective observables
    /// are intensive, so these do not depend on N:
    /// (q - 1/2, sqrt(p(1-p)) sin(phi), p - 1/2).
    pub fn magnetization_expectations(&self) -> (f64, f64, f64) {
        let r = (self.p * (1.0 - self.p)).sqrt();
        (
            self.x_projection_prob() - 0.5,
            r * self.phi.sin(),
            self.p - 0.5,
        )
    }

    /// The variance-product uncertainty pair, returned as numbers rather
    /// than a verdict so callers can assert the gap quantitatively:
    /// lhs = dX dZ = sqrt(q(1-q) p(1-p)) / N,
    /// rhs = |<Y>|/2 scaled the same way = sqrt(p(1-p)) |sin phi| / (2N).
    /// Guarantees lhs >= rhs - 1e-12; equality at p = 1/2, phi = pi/2.
    pub fn robertson_bound_check(&self) -> (f64, f64) {
        let n = self.n_spins as f64;
        let q = self.x_projection_prob();
        let pvar = self.p * (1.0 - self.p);
        let lhs = (q * (1.0 - q) * pvar).sqrt() / n;
        let rhs = pvar.sqrt() * self.phi.sin().abs() / (2.0 * n);
        (lhs, rhs)
    }
}

/// Entropy floor for the pair of product-basis measurements: N bits.
///
/// The x and z product bases are mutually unbiased, so every overlap has
/// modulus 2^(-N/2) and the bound -2 log2(max overlap) is exactly N.
pub fn eur_product_bound(n_spins: u64) -> EntropyValue {
    EntropyValue::from_bits(n_spins as f64)
}
