//! Property tests for the analytic layer: normalization, symmetry,
//! monotonicity, and cross-function consistency over randomized inputs
//! rather than hand-picked points.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinentropy::{coarse, collective, numerics, states};
use spinentropy::{BinningScheme, Direction, LogProb, Pmf, SpinCoherentState};
use std::f64::consts::TAU;

fn state(n: u64, p: f64, phi: f64) -> SpinCoherentState {
    SpinCoherentState::new(n, p, phi).unwrap()
}

/// Pmf over `weights.len()` outcomes with mass proportional to the weights.
/// The caller fixes `total` so reordered weight lists produce the exact
/// same multiset of log-probabilities.
fn pmf_from_weights(weights: &[f64], total: f64) -> Pmf {
    let log_probs: Vec<LogProb> = weights
        .iter()
        .map(|w| LogProb::new((w / total).ln()).unwrap())
        .collect();
    let labels: Vec<i64> = (0..weights.len() as i64).collect();
    Pmf::new(log_probs, labels).unwrap()
}

proptest! {
    #[test]
    fn binomial_mass_is_normalized(n in 1u64..=20, w in 0.0f64..=1.0) {
        let mut total = 0.0;
        for k in 0..=n {
            total += numerics::log_binomial_pmf(n, k, w).unwrap().prob();
        }
        prop_assert!((total - 1.0).abs() <= 1e-12, "mass {total} at n={n} w={w}");
    }

    #[test]
    fn entropy_is_permutation_invariant(
        weights in prop::collection::vec(1e-6f64..1.0, 2..48),
        seed in any::<u64>(),
    ) {
        let total: f64 = weights.iter().sum();
        let baseline = numerics::shannon_entropy(&pmf_from_weights(&weights, total)).unwrap();
        let mut shuffled = weights.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let permuted = numerics::shannon_entropy(&pmf_from_weights(&shuffled, total)).unwrap();
        // ascending-magnitude summation makes equal multisets sum identically
        prop_assert_eq!(baseline.bits(), permuted.bits());
    }

    #[test]
    fn binary_entropy_matches_two_outcome_pmf(p in 0.0f64..=1.0) {
        let direct = numerics::binary_entropy(p).unwrap().bits();
        let log_probs = vec![
            LogProb::new(p.ln()).unwrap(),
            LogProb::new((1.0 - p).ln()).unwrap(),
        ];
        let dist = Pmf::new(log_probs, vec![0, 1]).unwrap();
        let via_pmf = numerics::shannon_entropy(&dist).unwrap().bits();
        prop_assert!((direct - via_pmf).abs() <= 1e-15);
    }

    #[test]
    fn gaussian_mass_is_additive_over_adjacent_intervals(
        mean in -0.5f64..=0.5,
        variance in 1e-8f64..=0.25,
        mut cuts in prop::collection::vec(-0.6f64..=0.6, 3),
    ) {
        cuts.sort_by(f64::total_cmp);
        let (lo, mid, hi) = (cuts[0], cuts[1], cuts[2]);
        let whole = numerics::gaussian_interval_mass(mean, variance, lo, hi).unwrap();
        let left = numerics::gaussian_interval_mass(mean, variance, lo, mid).unwrap();
        let right = numerics::gaussian_interval_mass(mean, variance, mid, hi).unwrap();
        prop_assert!((whole - (left + right)).abs() <= 1e-14);
    }

    #[test]
    fn product_sum_never_drops_below_floor(
        n in 1u64..=5000,
        p in 0.0f64..=1.0,
        phi in 0.0f64..TAU,
    ) {
        let s = state(n, p, phi);
        let sum = s.eur_sum_product().bits();
        let floor = states::eur_product_bound(n).bits();
        prop_assert!(sum >= floor - 1e-9, "sum {sum} under floor {floor}");
    }

    #[test]
    fn z_entropy_ignores_phase(n in 1u64..=10_000, p in 0.0f64..=1.0, phi in 0.0f64..TAU) {
        let with_phase = state(n, p, phi).product_basis_entropy(Direction::Z);
        let phase_free = state(n, p, 0.0).product_basis_entropy(Direction::Z);
        prop_assert_eq!(with_phase.bits(), phase_free.bits());
    }

    #[test]
    fn x_entropy_is_even_in_phase(n in 1u64..=10_000, p in 0.0f64..=1.0, phi in 0.0f64..TAU) {
        // -phi wraps to 2 pi - phi, perturbing the angle by under an ulp,
        // so compare per-spin entropies instead of demanding bit equality
        let forward = state(n, p, phi).product_basis_entropy(Direction::X);
        let mirrored = state(n, p, -phi).product_basis_entropy(Direction::X);
        let gap = (forward.bits() - mirrored.bits()).abs() / n as f64;
        prop_assert!(gap <= 1e-12, "per-spin asymmetry {gap}");
    }

    #[test]
    fn collective_mass_is_normalized(
        n in 1u64..=10_000,
        p in 0.0f64..=1.0,
        phi in 0.0f64..TAU,
    ) {
        let s = state(n, p, phi);
        for direction in [Direction::X, Direction::Z] {
            let dist = collective::collective_pmf(&s, direction).unwrap();
            prop_assert!(dist.pmf().normalization_defect() <= 1e-9);
        }
    }

    #[test]
    fn collective_pmf_mirrors_under_weight_flip(n in 1u64..=2000, w in 0.0f64..=1.0) {
        let forward = collective::collective_pmf(&state(n, w, 0.0), Direction::Z).unwrap();
        let flipped = collective::collective_pmf(&state(n, 1.0 - w, 0.0), Direction::Z).unwrap();
        for k in 0..forward.pmf().len() {
            let a = forward.pmf().prob(k);
            let b = flipped.pmf().prob(forward.pmf().len() - 1 - k);
            prop_assert!((a - b).abs() <= 1e-12, "k={k} a={a} b={b}");
        }
    }

    #[test]
    fn collective_moments_match_closed_forms(
        n in 1u64..=10_000,
        p in 0.0f64..=1.0,
        phi in 0.0f64..TAU,
    ) {
        let s = state(n, p, phi);
        for direction in [Direction::X, Direction::Z] {
            let w = s.basis_weight(direction);
            let moments = collective::collective_moments(&s, direction);
            prop_assert!((moments.mean - (w - 0.5)).abs() <= 1e-10);
            prop_assert!((moments.variance - w * (1.0 - w) / n as f64).abs() <= 1e-10);
        }
    }

    #[test]
    fn binning_never_raises_entropy(
        n in 1u64..=3000,
        p in 0.0f64..=1.0,
        phi in 0.0f64..TAU,
        n_bins in 1u64..=500,
    ) {
        let s = state(n, p, phi);
        let scheme = BinningScheme::new(n_bins).unwrap();
        for direction in [Direction::X, Direction::Z] {
            let binned = coarse::binned_entropy(&s, scheme, direction).unwrap().bits();
            let full = collective::collective_entropy(&s, direction).unwrap().bits();
            prop_assert!(binned <= full + 1e-12, "binned {binned} > collective {full}");
        }
    }

    #[test]
    fn aligned_refinement_merges_exactly(
        n in 1u64..=2000,
        p in 0.0f64..=1.0,
        phi in 0.0f64..TAU,
        coarse_bins in 1u64..=40,
        factor in 1u64..=8,
    ) {
        let s = state(n, p, phi);
        let coarse_scheme = BinningScheme::new(coarse_bins).unwrap();
        let fine_scheme = BinningScheme::new(coarse_bins * factor).unwrap();
        for direction in [Direction::X, Direction::Z] {
            let fine = coarse::binned_pmf_exact(&s, fine_scheme, direction).unwrap();
            let merged = coarse::binned_pmf_exact(&s, coarse_scheme, direction).unwrap();
            for bin in 1..=coarse_bins {
                let from_fine: f64 = ((bin - 1) * factor + 1..=bin * factor)
                    .map(|b| fine.bin_prob(b))
                    .sum();
                let direct = merged.bin_prob(bin);
                prop_assert!((from_fine - direct).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn private_bins_reproduce_collective_entropy(
        n in 1u64..=300,
        extra in 1u64..=1800,
        p in 0.0f64..=1.0,
        phi in 0.0f64..TAU,
    ) {
        // with more bins than outcomes every outcome gets its own bin, so
        // binning relabels the distribution without merging anything
        let s = state(n, p, phi);
        let scheme = BinningScheme::new(n + extra).unwrap();
        for direction in [Direction::X, Direction::Z] {
            let binned = coarse::binned_entropy(&s, scheme, direction).unwrap();
            let full = collective::collective_entropy(&s, direction).unwrap();
            prop_assert_eq!(binned.bits(), full.bits());
        }
    }
}

#[test]
fn saturation_needs_half_or_deterministic_preparation() {
    for n in [1u64, 7, 1000] {
        for p in [0.0, 0.5, 1.0] {
            let gap = state(n, p, 0.0).eur_sum_product().bits() - n as f64;
            assert!(gap.abs() <= 1e-9, "n={n} p={p} gap={gap}");
        }
        let slack = state(n, 0.3, 0.0).eur_sum_product().bits() - n as f64;
        assert!(slack > 0.1 * n as f64, "interior p must sit above the floor");
    }
}

#[test]
fn variance_product_dominates_on_random_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e_7ed5);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=1_000_000u64);
        let p: f64 = rng.gen();
        let phi: f64 = rng.gen_range(0.0..TAU);
        let (lhs, rhs) = state(n, p, phi).robertson_bound_check();
        assert!(lhs >= rhs - 1e-12, "n={n} p={p} phi={phi}: {lhs} < {rhs}");
    }
}

#[test]
fn collective_mass_stays_normalized_through_decades() {
    for exponent in 1..=6u32 {
        let n = 10u64.pow(exponent);
        for w in [0.001, 0.3, 0.5, 0.9583] {
            let dist = collective::collective_pmf(&state(n, w, 0.0), Direction::Z).unwrap();
            assert!(dist.pmf().normalization_defect() <= 1e-9, "n={n} w={w}");
        }
    }
}

#[test]
fn collective_entropy_grows_with_system_size() {
    let mut previous = f64::NEG_INFINITY;
    for exponent in 2..=6u32 {
        let n = 10u64.pow(exponent);
        let h = collective::collective_entropy(&state(n, 0.3, 0.0), Direction::Z)
            .unwrap()
            .bits();
        assert!(h > previous, "entropy must keep growing: n={n}");
        previous = h;
    }
}

#[test]
fn concentration_bin_agrees_with_bin_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb1b5);
    for _ in 0..10_000 {
        let w: f64 = rng.gen();
        let n_bins = rng.gen_range(1..=10_000u64);
        let scheme = BinningScheme::new(n_bins).unwrap();
        let direct = coarse::concentration_bin(w, scheme).unwrap();
        let via_index = coarse::bin_index(w - 0.5, scheme).unwrap();
        assert_eq!(direct, via_index, "w={w} n_bins={n_bins}");
    }
}
