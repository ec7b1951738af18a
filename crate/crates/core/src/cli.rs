//! Command-line front end: parameter sweeps, single-point reports, and the
//! oracle self-check, with deterministic CSV/JSON emission.
//!
//! Output determinism is a contract: identical configurations produce
//! bit-identical bytes.  Floats are printed with 17 significant digits, rows
//! are sorted by (n_spins, n_bins), lines end with LF, and nothing in the
//! computation path draws randomness.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coarse::{self, BinningScheme, Method};
use crate::collective;
use crate::numerics;
use crate::oracle;
use crate::states::{Direction, SpinCoherentState};
use crate::{Error, Result};

/// Pinned CSV schema for sweep records.  Consumers diff against this
/// header; it never changes, even when `--units nats` rescales the values.
pub const CSV_HEADER: &str = "n_spins,n_bins,method,h_x_bits,h_z_bits,sum_bits,conc_bin_x,conc_bin_z";

/// Process exit codes: scriptable CI gates.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_ORACLE_MISMATCH: i32 = 3;

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

/// Unit for emitted entropy values.  Column and field names stay fixed
/// either way; `nats` rescales the numbers by ln 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Bits,
    Nats,
}

impl Units {
    fn scale(self) -> f64 {
        match self {
            Units::Bits => 1.0,
            Units::Nats => std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// How each run chooses its bin counts; exactly one variant is set per run.
#[derive(Debug, Clone)]
pub enum BinSpec {
    /// One bin count shared by every system size.
    Fixed(u64),
    /// Explicit ascending list of bin counts at one system size.
    List(Vec<u64>),
    /// Power-law growth N_b = max(1, round(base_bins * N^alpha)).
    Scaling { alpha: f64, base_bins: u64 },
}

/// Validated parameters for one sweep run.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub p: f64,
    pub phi: f64,
    pub n_values: Vec<u64>,
    pub bins: BinSpec,
    pub method: Method,
    pub format: OutputFormat,
    pub units: Units,
}

impl SweepConfig {
    fn template(&self) -> Result<SpinCoherentState> {
        build_state(1, self.p, self.phi)
    }

    fn validate_n_values(&self) -> Result<()> {
        validate_ascending(&self.n_values, "--n")
    }
}

fn build_state(n_spins: u64, p: f64, phi: f64) -> Result<SpinCoherentState> {
    SpinCoherentState::new(n_spins, p, phi).map_err(|e| Error::Config {
        field: "--p/--phi/--n",
        message: e.to_string(),
    })
}

fn validate_ascending(values: &[u64], field: &'static str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Config {
            field,
            message: "at least one value is required".to_string(),
        });
    }
    if values.contains(&0) {
        return Err(Error::Config {
            field,
            message: "values must be positive".to_string(),
        });
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config {
            field,
            message: "values must be strictly ascending".to_string(),
        });
    }
    Ok(())
}

/// Expands `--n` occurrences: each item is either an integer or a
/// geometric range `lo:hi:points-log` (endpoints included, rounded to
/// integers, consecutive duplicates dropped).
pub fn expand_n_values(items: &[String]) -> Result<Vec<u64>> {
    let bad = |message: String| Error::Config {
        field: "--n",
        message,
    };
    let mut values = Vec::new();
    for item in items {
        if let Ok(v) = item.parse::<u64>() {
            values.push(v);
            continue;
        }
        let parts: Vec<&str> = item.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(bad(format!(
                "'{item}' is neither an integer nor lo:hi:points-log"
            )));
        };
        let count = count
            .strip_suffix("-log")
            .ok_or_else(|| bad(format!("range '{item}' must end with -log")))?;
        let lo: u64 = lo
            .parse()
            .map_err(|_| bad(format!("bad range start '{lo}'")))?;
        let hi: u64 = hi
            .parse()
            .map_err(|_| bad(format!("bad range end '{hi}'")))?;
        let points: u32 = count
            .parse()
            .map_err(|_| bad(format!("bad point count '{count}'")))?;
        if lo == 0 || hi <= lo || points < 2 {
            return Err(bad(format!(
                "range '{item}' needs 1 <= lo < hi and at least 2 points"
            )));
        }
        let (l0, l1) = ((lo as f64).ln(), (hi as f64).ln());
        for i in 0..points {
            let v = if i == 0 {
                lo
            } else if i == points - 1 {
                hi
            } else {
                (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp().round() as u64
            };
            if values.last() != Some(&v) {
                values.push(v);
            }
        }
    }
    Ok(values)
}

// ---------------------------------------------------------------------------
// sweep records
// ---------------------------------------------------------------------------

/// One output row.  Field order matches [`CSV_HEADER`]; the JSON emitter
/// uses the same names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n_spins: u64,
    pub n_bins: u64,
    pub method: String,
    pub h_x_bits: f64,
    pub h_z_bits: f64,
    pub sum_bits: f64,
    pub conc_bin_x: u64,
    pub conc_bin_z: u64,
}

fn binned_entropies(
    state: &SpinCoherentState,
    scheme: BinningScheme,
    method: Method,
) -> Result<(f64, f64)> {
    match method {
        Method::Exact => Ok((
            coarse::binned_entropy(state, scheme, Direction::X)?.bits(),
            coarse::binned_entropy(state, scheme, Direction::Z)?.bits(),
        )),
        Method::Gaussian => {
            let entropy = |direction| -> Result<f64> {
                let pmf = coarse::binned_pmf_gaussian(state, scheme, direction)?;
                Ok(numerics::shannon_entropy(pmf.pmf())?.bits())
            };
            let map_degenerate = |e: Error| match e {
                Error::DegenerateVariance { weight } => Error::Config {
                    field: "--method",
                    message: format!(
                        "gaussian surrogate undefined at basis weight {weight}; use --method exact"
                    ),
                },
                other => other,
            };
            Ok((
                entropy(Direction::X).map_err(map_degenerate)?,
                entropy(Direction::Z).map_err(map_degenerate)?,
            ))
        }
    }
}

fn record_for(
    state: &SpinCoherentState,
    scheme: BinningScheme,
    method: Method,
    units: Units,
) -> Result<SweepRecord> {
    let (h_x, h_z) = binned_entropies(state, scheme, method)?;
    let scale = units.scale();
    Ok(SweepRecord {
        n_spins: state.n_spins(),
        n_bins: scheme.n_bins(),
        method: method.name().to_string(),
        h_x_bits: h_x * scale,
        h_z_bits: h_z * scale,
        sum_bits: (h_x + h_z) * scale,
        conc_bin_x: coarse::concentration_bin(state.basis_weight(Direction::X), scheme)?,
        conc_bin_z: coarse::concentration_bin(state.basis_weight(Direction::Z), scheme)?,
    })
}

/// Entropy sum across system sizes at one fixed bin count.
pub fn run_sweep_n(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let BinSpec::Fixed(n_bins) = config.bins else {
        return Err(Error::Config {
            field: "--bins",
            message: "sweep-n needs a single fixed bin count".to_string(),
        });
    };
    config.validate_n_values()?;
    let scheme = new_scheme(n_bins)?;
    let template = config.template()?;
    let mut records = Vec::with_capacity(config.n_values.len());
    for &n in &config.n_values {
        let state = template.with_n_spins(n)?;
        records.push(record_for(&state, scheme, config.method, config.units)?);
    }
    records.sort_by_key(|r| (r.n_spins, r.n_bins));
    Ok(records)
}

/// Entropy sum across bin counts at one fixed system size.
pub fn run_sweep_bins(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let BinSpec::List(ref bins) = config.bins else {
        return Err(Error::Config {
            field: "--bins",
            message: "sweep-bins needs a list of bin counts".to_string(),
        });
    };
    config.validate_n_values()?;
    let [n_spins] = config.n_values[..] else {
        return Err(Error::Config {
            field: "--n",
            message: "sweep-bins runs at a single system size".to_string(),
        });
    };
    validate_ascending(bins, "--bins")?;
    let state = config.template()?.with_n_spins(n_spins)?;
    let mut records = Vec::with_capacity(bins.len());
    for &n_bins in bins {
        let scheme = new_scheme(n_bins)?;
        records.push(record_for(&state, scheme, config.method, config.units)?);
    }
    records.sort_by_key(|r| (r.n_spins, r.n_bins));
    Ok(records)
}

/// Bin-growth experiment N_b = max(1, round(base_bins * N^alpha)).
pub fn run_scaling(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let BinSpec::Scaling { alpha, base_bins } = config.bins else {
        return Err(Error::Config {
            field: "--alpha",
            message: "scaling needs --alpha and --base-bins".to_string(),
        });
    };
    config.validate_n_values()?;
    let template = config.template()?;
    let points = coarse::scaling_sweep(&template, alpha, &config.n_values, base_bins)
        .map_err(into_config_when_domain)?;
    let scale = config.units.scale();
    let mut records = Vec::with_capacity(points.len());
    for point in points {
        let scheme = new_scheme(point.n_bins)?;
        records.push(SweepRecord {
            n_spins: point.n_spins,
            n_bins: point.n_bins,
            method: Method::Exact.name().to_string(),
            h_x_bits: point.h_x.bits() * scale,
            h_z_bits: point.h_z.bits() * scale,
            sum_bits: point.entropy_sum().bits() * scale,
            conc_bin_x: coarse::concentration_bin(
                template.basis_weight(Direction::X),
                scheme,
            )?,
            conc_bin_z: coarse::concentration_bin(
                template.basis_weight(Direction::Z),
                scheme,
            )?,
        });
    }
    records.sort_by_key(|r| (r.n_spins, r.n_bins));
    Ok(records)
}

fn new_scheme(n_bins: u64) -> Result<BinningScheme> {
    BinningScheme::new(n_bins).map_err(|e| Error::Config {
        field: "--bins",
        message: e.to_string(),
    })
}

// Domain errors raised while expanding user-provided grids are
// configuration problems, not numerical failures.
fn into_config_when_domain(e: Error) -> Error {
    match e {
        Error::Domain { what, value } => Error::Config {
            field: "--alpha/--n/--base-bins",
            message: format!("{what} = {value} rejected"),
        },
        Error::EmptyInput { what } => Error::Config {
            field: "--n",
            message: format!("{what} must not be empty"),
        },
        other => other,
    }
}

// ---------------------------------------------------------------------------
// single-point report
// ---------------------------------------------------------------------------

/// Parameters for one full-report evaluation.
#[derive(Debug, Clone)]
pub struct PointConfig {
    pub p: f64,
    pub phi: f64,
    pub n_spins: u64,
    pub n_bins: u64,
    pub units: Units,
}

/// Every quantity the library computes for one configuration.  Asymptotic
/// fields are absent when the direction has zero variance.  Entropy-valued
/// fields honor the configured units; Robertson values are variances and
/// are never rescaled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointReport {
    pub n_spins: u64,
    pub n_bins: u64,
    pub p: f64,
    pub phi: f64,
    pub q: f64,
    pub h_x_product_bits: f64,
    pub h_z_product_bits: f64,
    pub product_sum_bits: f64,
    pub product_bound_bits: f64,
    pub h_x_collective_bits: f64,
    pub h_z_collective_bits: f64,
    pub collective_sum_bits: f64,
    pub h_x_collective_asymptotic_bits: Option<f64>,
    pub h_z_collective_asymptotic_bits: Option<f64>,
    pub degenerate_sum_asymptotic_bits: Option<f64>,
    pub robertson_lhs: f64,
    pub robertson_rhs: f64,
    pub h_x_binned_bits: f64,
    pub h_z_binned_bits: f64,
    pub binned_sum_bits: f64,
    pub conc_bin_x: u64,
    pub conc_bin_z: u64,
    pub binned_pmf_x: Vec<f64>,
    pub binned_pmf_z: Vec<f64>,
}

fn asymptotic_or_none(state: &SpinCoherentState, direction: Direction) -> Result<Option<f64>> {
    match collective::collective_entropy_asymptotic(state.n_spins(), state.basis_weight(direction))
    {
        Ok(v) => Ok(Some(v.bits())),
        Err(Error::DegenerateVariance { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Full single-configuration report.
pub fn run_point(config: &PointConfig) -> Result<PointReport> {
    let state = build_state(config.n_spins, config.p, config.phi)?;
    let scheme = new_scheme(config.n_bins)?;
    let scale = config.units.scale();

    let h_x_product = state.product_basis_entropy(Direction::X).bits();
    let h_z_product = state.product_basis_entropy(Direction::Z).bits();
    let bound = crate::states::eur_product_bound(state.n_spins()).bits();

    let h_x_collective = collective::collective_entropy(&state, Direction::X)?.bits();
    let h_z_collective = collective::collective_entropy(&state, Direction::Z)?.bits();
    let asym_x = asymptotic_or_none(&state, Direction::X)?;
    let asym_z = asymptotic_or_none(&state, Direction::Z)?;
    let degenerate_sum = match collective::degenerate_sum_asymptotic(
        state.n_spins(),
        state.p(),
        state.x_projection_prob(),
    ) {
        Ok(v) => Some(v.bits()),
        Err(Error::DegenerateVariance { .. }) | Err(Error::Domain { .. }) => None,
        Err(e) => return Err(e),
    };

    let (robertson_lhs, robertson_rhs) = state.robertson_bound_check();

    let pmf_x = coarse::binned_pmf_exact(&state, scheme, Direction::X)?;
    let pmf_z = coarse::binned_pmf_exact(&state, scheme, Direction::Z)?;
    let h_x_binned = numerics::shannon_entropy(pmf_x.pmf())?.bits();
    let h_z_binned = numerics::shannon_entropy(pmf_z.pmf())?.bits();
    let probs = |pmf: &coarse::BinnedPmf| -> Vec<f64> {
        (0..pmf.pmf().len()).map(|i| pmf.pmf().prob(i)).collect()
    };

    Ok(PointReport {
        n_spins: state.n_spins(),
        n_bins: scheme.n_bins(),
        p: state.p(),
        phi: state.phi(),
        q: state.x_projection_prob(),
        h_x_product_bits: h_x_product * scale,
        h_z_product_bits: h_z_product * scale,
        product_sum_bits: (h_x_product + h_z_product) * scale,
        product_bound_bits: bound * scale,
        h_x_collective_bits: h_x_collective * scale,
        h_z_collective_bits: h_z_collective * scale,
        collective_sum_bits: (h_x_collective + h_z_collective) * scale,
        h_x_collective_asymptotic_bits: asym_x.map(|v| v * scale),
        h_z_collective_asymptotic_bits: asym_z.map(|v| v * scale),
        degenerate_sum_asymptotic_bits: degenerate_sum.map(|v| v * scale),
        robertson_lhs,
        robertson_rhs,
        h_x_binned_bits: h_x_binned * scale,
        h_z_binned_bits: h_z_binned * scale,
        binned_sum_bits: (h_x_binned + h_z_binned) * scale,
        conc_bin_x: coarse::concentration_bin(state.basis_weight(Direction::X), scheme)?,
        conc_bin_z: coarse::concentration_bin(state.basis_weight(Direction::Z), scheme)?,
        binned_pmf_x: probs(&pmf_x),
        binned_pmf_z: probs(&pmf_z),
    })
}

// ---------------------------------------------------------------------------
// oracle self-check
// ---------------------------------------------------------------------------

/// Result of one oracle-vs-analytic equivalence check.
#[derive(Debug, Clone, Serialize)]
pub struct OracleCheckLine {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Outcome of the full self-check suite.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub max_n: u32,
    pub checks: Vec<OracleCheckLine>,
    pub passed: bool,
}

// 25-point parameter grid including the p in {0, 1} edge states.
fn check_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(25);
    for i in 0..5 {
        for j in 0..5 {
            grid.push((
                0.25 * i as f64,
                std::f64::consts::TAU * j as f64 / 5.0,
            ));
        }
    }
    grid
}

fn check_line(name: &'static str, worst: f64, tolerance: f64) -> OracleCheckLine {
    OracleCheckLine {
        name,
        worst,
        tolerance,
        pass: worst <= tolerance,
    }
}

/// Exhaustive analytic-vs-dense-statevector equivalence suite over a fixed
/// 25-point parameter grid.  Returns worst absolute deviation per check;
/// any failing line makes the whole report fail.
pub fn oracle_check(max_n: u32) -> Result<OracleReport> {
    if max_n == 0 {
        return Err(Error::Config {
            field: "--max-n",
            message: "must be at least 1".to_string(),
        });
    }
    if max_n > oracle::DEFAULT_SPIN_CAP {
        return Err(Error::Config {
            field: "--max-n",
            message: format!(
                "{max_n} exceeds the dense-statevector cap of {}",
                oracle::DEFAULT_SPIN_CAP
            ),
        });
    }
    let grid = check_grid();
    let mut pmf_dev = 0.0f64;
    let mut moment_dev = 0.0f64;
    let mut entropy_dev = 0.0f64;
    let mut product_dev = 0.0f64;

    for n in 1..=max_n {
        for &(p, phi) in &grid {
            let state = SpinCoherentState::new(n as u64, p, phi)?;
            let psi = oracle::build_product_state(&state)?;
            for direction in [Direction::X, Direction::Z] {
                let dense = oracle::weight_distribution(&psi, direction);
                let analytic = collective::collective_pmf(&state, direction)?;

                let nf = n as f64;
                let (mut mean, mut second) = (0.0, 0.0);
                for k in 0..dense.len() {
                    let gap = (dense.prob(k) - analytic.pmf().prob(k)).abs();
                    pmf_dev = pmf_dev.max(gap);
                    let m = dense.labels()[k] as f64 / (2.0 * nf);
                    mean += dense.prob(k) * m;
                    second += dense.prob(k) * m * m;
                }
                let moments = collective::collective_moments(&state, direction);
                moment_dev = moment_dev.max((mean - moments.mean).abs());
                moment_dev =
                    moment_dev.max(((second - mean * mean) - moments.variance).abs());

                let h_dense = numerics::shannon_entropy(&dense)?.bits();
                let h_analytic = collective::collective_entropy(&state, direction)?.bits();
                entropy_dev = entropy_dev.max((h_dense - h_analytic).abs());

                let strings = oracle::product_measurement_distribution(&psi, direction);
                let h_strings = numerics::shannon_entropy(&strings)?.bits();
                let h_product = state.product_basis_entropy(direction).bits();
                product_dev = product_dev.max((h_strings - h_product).abs());
            }
        }
    }

    // Variance pair needs dense operators, so it stops at the matrix cap.
    // Compare the variances and the commutator expectation rather than the
    // square-rooted product: at zero-variance grid edges the sqrt turns
    // ~1e-16 of cancellation residue into ~1e-8 and would mask real bugs
    // behind a loose tolerance.  lhs is a pure function of the variances.
    let mut robertson_dev = 0.0f64;
    for n in 1..=max_n.min(oracle::MATRIX_SPIN_CAP) {
        let mx = oracle::magnetization_operator(n, oracle::Axis::X)?;
        let mz = oracle::magnetization_operator(n, oracle::Axis::Z)?;
        for &(p, phi) in &grid {
            let state = SpinCoherentState::new(n as u64, p, phi)?;
            let psi = oracle::build_product_state(&state)?;
            let nf = n as f64;
            let var = |op: &oracle::OperatorMatrix| -> f64 {
                let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
                let w = op.matrix() * &v;
                let mean = v.dotc(&w).re;
                (w.dotc(&w).re - mean * mean).max(0.0)
            };
            let q = state.x_projection_prob();
            robertson_dev = robertson_dev.max((var(&mx) - q * (1.0 - q) / nf).abs());
            robertson_dev = robertson_dev.max((var(&mz) - p * (1.0 - p) / nf).abs());
            // <[Mx, Mz]> from four matrix-vector products
            let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
            let zx = mx.matrix() * (mz.matrix() * &v);
            let xz = mz.matrix() * (mx.matrix() * &v);
            let rhs_oracle = 0.5 * (v.dotc(&zx) - v.dotc(&xz)).norm();
            let (lhs, rhs) = state.robertson_bound_check();
            robertson_dev = robertson_dev.max((rhs_oracle - rhs).abs());
            debug_assert!(lhs + 1e-12 >= rhs);
        }
    }

    let mut commutator_dev = 0.0f64;
    for n in 1..=max_n.min(oracle::MATRIX_SPIN_CAP) {
        let scaled = n as f64 * oracle::commutator_norm(n)?;
        commutator_dev = commutator_dev.max((scaled - 0.5).abs());
    }

    let mut shared_eigenvector_violations = 0.0f64;
    for n in 1..=max_n.min(8) {
        let mx = oracle::magnetization_operator(n, oracle::Axis::X)?;
        let mz = oracle::magnetization_operator(n, oracle::Axis::Z)?;
        if oracle::common_eigenvector_check(&mx, &mz)? {
            shared_eigenvector_violations += 1.0;
        }
    }

    let mut eur_dev = 0.0f64;
    for n in 1..=max_n.min(oracle::MATRIX_SPIN_CAP) {
        let bound = oracle::eur_bound_general(
            &oracle::z_product_basis(n)?,
            &oracle::x_product_basis(n)?,
        )?;
        eur_dev = eur_dev.max((bound.bits() - n as f64).abs());
    }

    let checks = vec![
        check_line("collective-pmf", pmf_dev, 1e-10),
        check_line("collective-moments", moment_dev, 1e-10),
        check_line("collective-entropy", entropy_dev, 1e-10),
        check_line("product-entropy", product_dev, 1e-10),
        check_line("robertson-pair", robertson_dev, 1e-10),
        check_line("commutator-scaling", commutator_dev, 1e-12),
        check_line("shared-eigenvector", shared_eigenvector_violations, 0.5),
        check_line("eur-product-bound", eur_dev, 1e-10),
    ];
    let passed = checks.iter().all(|c| c.pass);
    Ok(OracleReport {
        max_n,
        checks,
        passed,
    })
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

/// Writes sweep records as CSV under the pinned header.
pub fn emit_records_csv(records: &[SweepRecord], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{:.16e},{:.16e},{:.16e},{},{}",
            r.n_spins, r.n_bins, r.method, r.h_x_bits, r.h_z_bits, r.sum_bits, r.conc_bin_x,
            r.conc_bin_z
        )?;
    }
    Ok(())
}

/// Writes sweep records as a JSON array with the CSV field names.
pub fn emit_records_json(records: &[SweepRecord], w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, records).map_err(io::Error::other)?;
    writeln!(w)
}

/// Writes a point report as quantity,value CSV rows; absent asymptotics are
/// omitted and pmf entries appear one row per bin.
pub fn emit_point_csv(report: &PointReport, w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "quantity,value")?;
    writeln!(w, "n_spins,{}", report.n_spins)?;
    writeln!(w, "n_bins,{}", report.n_bins)?;
    let mut float = |name: &str, v: f64| writeln!(w, "{name},{v:.16e}");
    float("p", report.p)?;
    float("phi", report.phi)?;
    float("q", report.q)?;
    float("h_x_product_bits", report.h_x_product_bits)?;
    float("h_z_product_bits", report.h_z_product_bits)?;
    float("product_sum_bits", report.product_sum_bits)?;
    float("product_bound_bits", report.product_bound_bits)?;
    float("h_x_collective_bits", report.h_x_collective_bits)?;
    float("h_z_collective_bits", report.h_z_collective_bits)?;
    float("collective_sum_bits", report.collective_sum_bits)?;
    if let Some(v) = report.h_x_collective_asymptotic_bits {
        float("h_x_collective_asymptotic_bits", v)?;
    }
    if let Some(v) = report.h_z_collective_asymptotic_bits {
        float("h_z_collective_asymptotic_bits", v)?;
    }
    if let Some(v) = report.degenerate_sum_asymptotic_bits {
        float("degenerate_sum_asymptotic_bits", v)?;
    }
    float("robertson_lhs", report.robertson_lhs)?;
    float("robertson_rhs", report.robertson_rhs)?;
    float("h_x_binned_bits", report.h_x_binned_bits)?;
    float("h_z_binned_bits", report.h_z_binned_bits)?;
    float("binned_sum_bits", report.binned_sum_bits)?;
    writeln!(w, "conc_bin_x,{}", report.conc_bin_x)?;
    writeln!(w, "conc_bin_z,{}", report.conc_bin_z)?;
    for (i, v) in report.binned_pmf_x.iter().enumerate() {
        writeln!(w, "binned_pmf_x_bin_{},{v:.16e}", i + 1)?;
    }
    for (i, v) in report.binned_pmf_z.iter().enumerate() {
        writeln!(w, "binned_pmf_z_bin_{},{v:.16e}", i + 1)?;
    }
    Ok(())
}

/// Writes a point report as one JSON object.
pub fn emit_point_json(report: &PointReport, w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, report).map_err(io::Error::other)?;
    writeln!(w)
}

/// Writes the oracle report; CSV rows or one JSON object.
pub fn emit_oracle_report(
    report: &OracleReport,
    format: OutputFormat,
    w: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(w, "check,worst_abs_deviation,tolerance,pass")?;
            for c in &report.checks {
                writeln!(w, "{},{:.16e},{:.1e},{}", c.name, c.worst, c.tolerance, c.pass)?;
            }
            writeln!(
                w,
                "overall,,,{}",
                if report.passed { "true" } else { "false" }
            )
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, report).map_err(io::Error::other)?;
            writeln!(w)
        }
    }
}

// ---------------------------------------------------------------------------
// argument parsing and dispatch
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "spinentropy",
    version,
    about = "Entropy and variance uncertainty for N-spin coherent states under product, \
             collective, and fixed-precision binned readouts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy sum across system sizes at a fixed bin count
    SweepN(SweepNArgs),
    /// Entropy sum across bin counts at a fixed system size
    SweepBins(SweepBinsArgs),
    /// Every computed quantity for one configuration
    Point(PointArgs),
    /// Entropy sum with bin count growing as base-bins * N^alpha
    Scaling(ScalingArgs),
    /// Analytic-vs-dense-statevector equivalence suite
    OracleCheck(OracleCheckArgs),
}

#[derive(Args, Debug, Clone)]
struct StateArgs {
    /// Single-spin probability of the high-magnetization z outcome
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Relative phase of the single-spin state, radians
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Unit for entropy values (field names stay fixed)
    #[arg(long, value_enum, default_value_t = Units::Bits)]
    units: Units,
}

#[derive(Args, Debug)]
struct SweepNArgs {
    #[command(flatten)]
    state: StateArgs,
    /// System sizes: integers and/or lo:hi:points-log ranges, ascending
    #[arg(long = "n", default_value = "10:1000000:25-log")]
    n_values: Vec<String>,
    /// Fixed bin count
    #[arg(long, default_value_t = 51)]
    bins: u64,
    /// Binned pmf construction
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepBinsArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Fixed system size
    #[arg(long = "n", default_value_t = 100)]
    n_spins: u64,
    /// Bin counts, ascending (repeat the flag)
    #[arg(long = "bins", required = true)]
    bins: Vec<u64>,
    /// Binned pmf construction
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    state: StateArgs,
    /// System size
    #[arg(long = "n")]
    n_spins: u64,
    /// Bin count
    #[arg(long, default_value_t = 51)]
    bins: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ScalingArgs {
    #[command(flatten)]
    state: StateArgs,
    /// System sizes: integers and/or lo:hi:points-log ranges, ascending
    #[arg(long = "n", default_value = "10:1000000:13-log")]
    n_values: Vec<String>,
    /// Bin-growth exponent (0.5 is the vanishing-sum watershed)
    #[arg(long)]
    alpha: f64,
    /// Bin count prefactor
    #[arg(long = "base-bins", default_value_t = 1)]
    base_bins: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OracleCheckArgs {
    /// Largest system size to verify (dense statevector cap: 14)
    #[arg(long = "max-n", default_value_t = 10)]
    max_n: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Gaussian,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Gaussian => Method::Gaussian,
        }
    }
}

fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::Config {
                field: "--out",
                message: format!("cannot create {}: {e}", path.display()),
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn emit_failed(e: io::Error) -> Error {
    Error::Config {
        field: "--out",
        message: format!("write failed: {e}"),
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::SweepN(args) => {
            let config = SweepConfig {
                p: args.state.p,
                phi: args.state.phi,
                n_values: expand_n_values(&args.n_values)?,
                bins: BinSpec::Fixed(args.bins),
                method: args.method.into(),
                format: args.output.format,
                units: args.output.units,
            };
            let records = run_sweep_n(&config)?;
            let mut sink = open_sink(&args.output.out)?;
            emit_records(&records, config.format, sink.as_mut()).map_err(emit_failed)?;
            sink.flush().map_err(emit_failed)?;
            Ok(EXIT_OK)
        }
        Command::SweepBins(args) => {
            let config = SweepConfig {
                p: args.state.p,
                phi: args.state.phi,
                n_values: vec![args.n_spins],
                bins: BinSpec::List(args.bins),
                method: args.method.into(),
                format: args.output.format,
                units: args.output.units,
            };
            let records = run_sweep_bins(&config)?;
            let mut sink = open_sink(&args.output.out)?;
            emit_records(&records, config.format, sink.as_mut()).map_err(emit_failed)?;
            sink.flush().map_err(emit_failed)?;
            Ok(EXIT_OK)
        }
        Command::Scaling(args) => {
            let config = SweepConfig {
                p: args.state.p,
                phi: args.state.phi,
                n_values: expand_n_values(&args.n_values)?,
                bins: BinSpec::Scaling {
                    alpha: args.alpha,
                    base_bins: args.base_bins,
                },
                method: Method::Exact,
                format: args.output.format,
                units: args.output.units,
            };
            let records = run_scaling(&config)?;
            let mut sink = open_sink(&args.output.out)?;
            emit_records(&records, config.format, sink.as_mut()).map_err(emit_failed)?;
            sink.flush().map_err(emit_failed)?;
            Ok(EXIT_OK)
        }
        Command::Point(args) => {
            let config = PointConfig {
                p: args.state.p,
                phi: args.state.phi,
                n_spins: args.n_spins,
                n_bins: args.bins,
                units: args.output.units,
            };
            let report = run_point(&config)?;
            let mut sink = open_sink(&args.output.out)?;
            match args.output.format {
                OutputFormat::Csv => emit_point_csv(&report, sink.as_mut()),
                OutputFormat::Json => emit_point_json(&report, sink.as_mut()),
            }
            .map_err(emit_failed)?;
            sink.flush().map_err(emit_failed)?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck(args) => {
            let report = oracle_check(args.max_n)?;
            let mut sink = open_sink(&args.output.out)?;
            emit_oracle_report(&report, args.output.format, sink.as_mut())
                .map_err(emit_failed)?;
            sink.flush().map_err(emit_failed)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_ORACLE_MISMATCH
            })
        }
    }
}

fn emit_records(
    records: &[SweepRecord],
    format: OutputFormat,
    w: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => emit_records_csv(records, w),
        OutputFormat::Json => emit_records_json(records, w),
    }
}

fn classify(e: &Error) -> i32 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

/// Parses process arguments, runs the requested command, and returns the
/// process exit code.
pub fn run() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => match dispatch(cli) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                classify(&e)
            }
        },
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
            let _ = e.print();
            code
        }
    }
}
