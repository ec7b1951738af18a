//! Brute-force dense-statevector reference for small spin counts.
//!
//! Everything here is built the expensive way on purpose: full 2^N
//! amplitude vectors, explicit operator matrices, exhaustive overlap
//! scans.  The analytic formulas in the other modules are checked against
//! these constructions; nothing in this module may call the closed forms
//! it is meant to verify.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::numerics::{self, EntropyValue, LogProb, Pmf};
use crate::states::{Direction, SpinCoherentState};
use crate::{Error, Result};

/// Default spin cap for statevector construction; 2^14 amplitudes.
pub const DEFAULT_SPIN_CAP: u32 = 14;
/// Largest cap accepted by the `_with_cap` constructors; 2^20 amplitudes.
pub const MAX_SPIN_CAP: u32 = 20;
/// Spin cap for operations that materialize 2^N x 2^N matrices.  A dense
/// complex matrix at 14 spins is 4.3 GB, so matrix-backed checks stop
/// earlier than vector-backed ones.
pub const MATRIX_SPIN_CAP: u32 = 10;

/// Measurement axis for collective operators.  The y axis only appears
/// here: product and binned readouts use [`Direction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Full statevector of an N-spin system.  Index bit i holds the basis
/// state of spin i; bit value 0 is the +z single-spin state.
#[derive(Debug, Clone)]
pub struct DenseState {
    n_spins: u32,
    amplitudes: Vec<Complex64>,
}

impl DenseState {
    /// Wraps raw amplitudes, enforcing the default spin cap, the 2^N
    /// length, and unit norm within 1e-12.
    pub fn new(n_spins: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_cap(n_spins, amplitudes, DEFAULT_SPIN_CAP)
    }

    /// As [`DenseState::new`] with an explicit cap up to [`MAX_SPIN_CAP`].
    pub fn with_cap(n_spins: u32, amplitudes: Vec<Complex64>, cap: u32) -> Result<Self> {
        let cap = validate_cap(cap)?;
        if n_spins == 0 {
            return Err(Error::Domain {
                what: "spin count (requires n_spins >= 1)",
                value: 0.0,
            });
        }
        if n_spins > cap {
            return Err(Error::SizeCap {
                n_spins: n_spins as u64,
                cap,
            });
        }
        let dim = 1usize << n_spins;
        if amplitudes.len() != dim {
            return Err(Error::Domain {
                what: "amplitude count (requires 2^n_spins entries)",
                value: amplitudes.len() as f64,
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let defect = (norm_sq - 1.0).abs();
        if !(defect <= 1e-12) {
            return Err(Error::Normalization {
                defect,
                tolerance: 1e-12,
            });
        }
        Ok(DenseState { n_spins, amplitudes })
    }

    pub fn n_spins(&self) -> u32 {
        self.n_spins
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// <self|other>.
    pub fn inner_product(&self, other: &DenseState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

fn validate_cap(cap: u32) -> Result<u32> {
    if cap == 0 || cap > MAX_SPIN_CAP {
        return Err(Error::Domain {
            what: "spin cap (requires 1 <= cap <= 20)",
            value: cap as f64,
        });
    }
    Ok(cap)
}

/// Tensor power of the single-spin state: amplitude of bitstring s is
/// (sqrt(p))^(#zero bits) (e^{i phi} sqrt(1-p))^(#one bits).
pub fn build_product_state(state: &SpinCoherentState) -> Result<DenseState> {
    build_product_state_with_cap(state, DEFAULT_SPIN_CAP)
}

/// As [`build_product_state`] with an explicit cap up to [`MAX_SPIN_CAP`].
pub fn build_product_state_with_cap(state: &SpinCoherentState, cap: u32) -> Result<DenseState> {
    let cap = validate_cap(cap)?;
    if state.n_spins() > cap as u64 {
        return Err(Error::SizeCap {
            n_spins: state.n_spins(),
            cap,
        });
    }
    let n = state.n_spins() as u32;
    let dim = 1usize << n;
    let sqrt_zero = state.p().sqrt();
    let sqrt_one = (1.0 - state.p()).sqrt();
    // radius and phase depend only on the bit weight
    let mut radius = vec![0.0f64; n as usize + 1];
    for (w, r) in radius.iter_mut().enumerate() {
        *r = sqrt_zero.powi(n as i32 - w as i32) * sqrt_one.powi(w as i32);
    }
    let mut amplitudes = Vec::with_capacity(dim);
    for s in 0..dim {
        let w = s.count_ones() as usize;
        amplitudes.push(Complex64::from_polar(radius[w], state.phi() * w as f64));
    }
    DenseState::with_cap(n, amplitudes, cap)
}

// In-place factor-wise Hadamard: afterwards index bit i = 0 means the +x
// outcome of spin i, which carries single-spin probability q.
fn rotate_to_x_basis(amplitudes: &mut [Complex64], n_spins: u32) {
    let dim = amplitudes.len();
    for i in 0..n_spins {
        let step = 1usize << i;
        let mut block = 0;
        while block < dim {
            for off in block..block + step {
                let a = amplitudes[off];
                let b = amplitudes[off + step];
                amplitudes[off] = (a + b) * std::f64::consts::FRAC_1_SQRT_2;
                amplitudes[off + step] = (a - b) * std::f64::consts::FRAC_1_SQRT_2;
            }
            block += 2 * step;
        }
    }
}

fn direction_probabilities(psi: &DenseState, direction: Direction) -> Vec<f64> {
    match direction {
        Direction::Z => psi.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
        Direction::X => {
            let mut rotated = psi.amplitudes.clone();
            rotate_to_x_basis(&mut rotated, psi.n_spins);
            rotated.iter().map(|a| a.norm_sqr()).collect()
        }
    }
}

/// Distribution of the collective magnetization of `psi` along `direction`,
/// computed by summing string probabilities over each eigenspace.  N+1
/// outcomes labeled 2k - N, where k counts the spins found in the
/// high-magnetization single-spin outcome.
pub fn weight_distribution(psi: &DenseState, direction: Direction) -> Pmf {
    let n = psi.n_spins as usize;
    let probs = direction_probabilities(psi, direction);
    let mut per_k = vec![numerics::CompensatedSum::new(); n + 1];
    for (s, pr) in probs.iter().enumerate() {
        let k = n - s.count_ones() as usize;
        per_k[k].add(*pr);
    }
    let mut log_probs = Vec::with_capacity(n + 1);
    let mut labels = Vec::with_capacity(n + 1);
    for (k, acc) in per_k.iter().enumerate() {
        let p = acc.value().max(0.0);
        log_probs.push(LogProb::new(p.ln()).expect("probability logs are valid"));
        labels.push(2 * k as i64 - n as i64);
    }
    Pmf::new(log_probs, labels).expect("unit-norm state yields a normalized pmf")
}

/// Distribution over all 2^N outcome strings of a product measurement of
/// every spin along `direction`; labels are the outcome bitstrings.
pub fn product_measurement_distribution(psi: &DenseState, direction: Direction) -> Pmf {
    let probs = direction_probabilities(psi, direction);
    let log_probs: Vec<LogProb> = probs
        .iter()
        .map(|p| LogProb::new(p.ln()).expect("probability logs are valid"))
        .collect();
    let labels: Vec<i64> = (0..probs.len() as i64).collect();
    Pmf::new(log_probs, labels).expect("unit-norm state yields a normalized pmf")
}

/// Hermitian matrix acting on an N-spin space.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    matrix: DMatrix<Complex64>,
}

impl OperatorMatrix {
    /// Validates squareness, power-of-two dimension, and Hermiticity
    /// within 1e-12.
    pub fn from_dense(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || !matrix.nrows().is_power_of_two() {
            return Err(Error::Domain {
                what: "operator dimension (requires square 2^N x 2^N)",
                value: matrix.nrows() as f64,
            });
        }
        let mut defect = 0.0f64;
        for i in 0..matrix.nrows() {
            for j in 0..=i {
                defect = defect.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
            }
        }
        if !(defect <= 1e-12) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(OperatorMatrix { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

/// Intensive collective magnetization operator along `axis`: the mean of
/// the N single-spin half-unit spin operators.  Eigenvalues lie in
/// [-1/2, 1/2].  Materializes a dense matrix, so the cap is
/// [`MATRIX_SPIN_CAP`].
pub fn magnetization_operator(n_spins: u32, axis: Axis) -> Result<OperatorMatrix> {
    if n_spins == 0 {
        return Err(Error::Domain {
            what: "spin count (requires n_spins >= 1)",
            value: 0.0,
        });
    }
    if n_spins > MATRIX_SPIN_CAP {
        return Err(Error::SizeCap {
            n_spins: n_spins as u64,
            cap: MATRIX_SPIN_CAP,
        });
    }
    let dim = 1usize << n_spins;
    let scale = 1.0 / (2.0 * n_spins as f64);
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    match axis {
        Axis::Z => {
            // bit value 0 contributes +1/2, bit value 1 contributes -1/2
            for s in 0..dim {
                let up = n_spins - s.count_ones();
                let value = (up as f64 - s.count_ones() as f64) * scale;
                m[(s, s)] = Complex64::new(value, 0.0);
            }
        }
        Axis::X => {
            // couples strings differing in exactly one bit
            for s in 0..dim {
                for i in 0..n_spins {
                    m[(s ^ (1 << i), s)] += Complex64::new(scale, 0.0);
                }
            }
        }
        Axis::Y => {
            // the flip picks up +i when raising out of bit value 0
            for s in 0..dim {
                for i in 0..n_spins {
                    let sign = if s & (1 << i) == 0 { 1.0 } else { -1.0 };
                    m[(s ^ (1 << i), s)] += Complex64::new(0.0, sign * scale);
                }
            }
        }
    }
    OperatorMatrix::from_dense(m)
}

// Hermitian eigendecomposition with eigenvalues sorted ascending and the
// eigenvector columns permuted to match.
fn sorted_eigen(op: &OperatorMatrix) -> (Vec<f64>, DMatrix<Complex64>) {
    let eigen = op.matrix.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eigen.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let dim = eigen.eigenvectors.nrows();
    let mut vectors = DMatrix::<Complex64>::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eigen.eigenvectors.column(src));
    }
    (values, vectors)
}

// Ranges of equal eigenvalues in an ascending list, grouped by gap.
fn degenerate_groups(values: &[f64], tolerance: f64) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tolerance {
            groups.push(start..i);
            start = i;
        }
    }
    groups
}

/// Spectral norm of the commutator of the x and z collective operators,
/// computed by explicit matrix products and exact diagonalization.  Decays
/// as 1/N, which is the mechanism behind the vanishing variance bound.
pub fn commutator_norm(n_spins: u32) -> Result<f64> {
    let mx = magnetization_operator(n_spins, Axis::X)?;
    let mz = magnetization_operator(n_spins, Axis::Z)?;
    let commutator = &mx.matrix * &mz.matrix - &mz.matrix * &mx.matrix;
    // i[Mx, Mz] is Hermitian, so its extreme eigenvalues give the norm
    let hermitian = commutator.map(|e| e * Complex64::i());
    let eigen = hermitian.symmetric_eigen();
    Ok(eigen
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs())))
}

/// Decides whether two Hermitian operators share at least one common
/// eigenvector.  Degenerate eigenspaces of `a` are resolved by
/// diagonalizing `b` inside each block; a candidate counts when its full
/// residual against `b` is below 1e-9.
pub fn common_eigenvector_check(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Domain {
            what: "operator dimensions (require equal size)",
            value: b.dim() as f64,
        });
    }
    let (values, vectors) = sorted_eigen(a);
    for group in degenerate_groups(&values, 1e-10) {
        let block_vectors = vectors.columns(group.start, group.len());
        let block = block_vectors.adjoint() * &b.matrix * block_vectors;
        // hermitize to strip accumulation noise before diagonalizing
        let block = (&block + block.adjoint()) * Complex64::new(0.5, 0.0);
        let eigen = block.symmetric_eigen();
        for col in 0..eigen.eigenvalues.len() {
            let candidate = block_vectors * eigen.eigenvectors.column(col);
            let mu = Complex64::new(eigen.eigenvalues[col], 0.0);
            let residual = (&b.matrix * &candidate - &candidate * mu).norm();
            if residual <= 1e-9 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Entropy floor for a pair of measurements given as explicit orthonormal
/// bases: -2 log2 of the largest absolute overlap between a vector of one
/// basis and a vector of the other.  Exhaustive scan, no structure
/// assumed.
pub fn eur_bound_general(basis_a: &[DenseState], basis_b: &[DenseState]) -> Result<EntropyValue> {
    validate_basis(basis_a)?;
    validate_basis(basis_b)?;
    if basis_a[0].n_spins != basis_b[0].n_spins {
        return Err(Error::Domain {
            what: "basis spin counts (require equal)",
            value: basis_b[0].n_spins as f64,
        });
    }
    let mut max_overlap = 0.0f64;
    for a in basis_a {
        for b in basis_b {
            max_overlap = max_overlap.max(a.inner_product(b).norm());
        }
    }
    Ok(EntropyValue::from_bits(-2.0 * max_overlap.log2()))
}

// A basis must span its space: 2^N vectors with Gram matrix within 1e-10
// of the identity.
fn validate_basis(basis: &[DenseState]) -> Result<()> {
    if basis.is_empty() {
        return Err(Error::EmptyInput { what: "basis" });
    }
    let n = basis[0].n_spins;
    let dim = 1usize << n;
    if basis.len() != dim || basis.iter().any(|v| v.n_spins != n) {
        return Err(Error::Domain {
            what: "basis size (requires 2^n_spins states of equal size)",
            value: basis.len() as f64,
        });
    }
    let mut defect = 0.0f64;
    for (j, a) in basis.iter().enumerate() {
        for (k, b) in basis.iter().enumerate().skip(j) {
            let want = if j == k { 1.0 } else { 0.0 };
            defect = defect.max((a.inner_product(b).norm() - want).abs());
        }
    }
    if !(defect <= 1e-10) {
        return Err(Error::NotOrthonormal { defect });
    }
    Ok(())
}

/// The computational product basis: basis vector k is the bitstring k.
pub fn z_product_basis(n_spins: u32) -> Result<Vec<DenseState>> {
    if n_spins == 0 || n_spins > MATRIX_SPIN_CAP {
        return Err(Error::SizeCap {
            n_spins: n_spins as u64,
            cap: MATRIX_SPIN_CAP,
        });
    }
    let dim = 1usize << n_spins;
    let mut basis = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        basis.push(DenseState::with_cap(n_spins, amplitudes, MAX_SPIN_CAP)?);
    }
    Ok(basis)
}

/// The x product basis: vector k assigns spin i the +x state when bit i of
/// k is 0 and the -x state when it is 1, so every amplitude has modulus
/// 2^{-N/2} with a parity sign.
pub fn x_product_basis(n_spins: u32) -> Result<Vec<DenseState>> {
    if n_spins == 0 || n_spins > MATRIX_SPIN_CAP {
        return Err(Error::SizeCap {
            n_spins: n_spins as u64,
            cap: MATRIX_SPIN_CAP,
        });
    }
    let dim = 1usize << n_spins;
    let scale = (dim as f64).sqrt().recip();
    let mut basis = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut amplitudes = Vec::with_capacity(dim);
        for s in 0..dim {
            let sign = if (s & k).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            amplitudes.push(Complex64::new(sign * scale, 0.0));
        }
        basis.push(DenseState::with_cap(n_spins, amplitudes, MAX_SPIN_CAP)?);
    }
    Ok(basis)
}
