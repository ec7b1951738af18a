//! Drives the C entry points the way a foreign caller would: raw handles,
//! status codes, and caller-owned buffers.

use spinentropy_ffi::*;
use std::ptr;

fn new_state(n: u64, p: f64, phi: f64) -> *mut SpinState {
    let mut handle: *mut SpinState = ptr::null_mut();
    let status = unsafe { spinentropy_state_new(n, p, phi, &mut handle) };
    assert_eq!(status, SpinStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn entropies_round_trip_through_the_abi() {
    let state = new_state(100, 0.3, 0.0);
    unsafe {
        let mut q = 0.0;
        assert_eq!(spinentropy_x_projection_prob(state, &mut q), SpinStatus::Ok);
        assert!((q - (0.5 + 0.21f64.sqrt())).abs() < 1e-15);

        let mut h_x = 0.0;
        let mut h_z = 0.0;
        let mut sum = 0.0;
        assert_eq!(
            spinentropy_product_entropy(state, SpinDirection::X, &mut h_x),
            SpinStatus::Ok
        );
        assert_eq!(
            spinentropy_product_entropy(state, SpinDirection::Z, &mut h_z),
            SpinStatus::Ok
        );
        assert_eq!(spinentropy_eur_sum_product(state, &mut sum), SpinStatus::Ok);
        assert!((h_x + h_z - sum).abs() < 1e-12);

        let mut floor = 0.0;
        assert_eq!(spinentropy_eur_product_bound(100, &mut floor), SpinStatus::Ok);
        assert_eq!(floor, 100.0);
        assert!(sum >= floor - 1e-9);

        let mut collective = 0.0;
        assert_eq!(
            spinentropy_collective_entropy(state, SpinDirection::Z, &mut collective),
            SpinStatus::Ok
        );
        let mut limit = 0.0;
        assert_eq!(
            spinentropy_collective_entropy_asymptotic(100, 0.3, &mut limit),
            SpinStatus::Ok
        );
        assert!((collective - limit).abs() < 0.01);

        spinentropy_state_free(state);
    }
}

#[test]
fn binned_quantities_and_buffers() {
    let state = new_state(100, 0.3, 0.0);
    unsafe {
        let mut h = -1.0;
        assert_eq!(
            spinentropy_binned_entropy(state, 1, SpinDirection::Z, SpinBinMethod::Exact, &mut h),
            SpinStatus::Ok
        );
        assert_eq!(h, 0.0, "a single bin is certain");

        let mut sum = 0.0;
        assert_eq!(spinentropy_binned_entropy_sum(state, 51, &mut sum), SpinStatus::Ok);
        assert!(sum > 0.0);

        let mut pmf = vec![0.0f64; 51];
        assert_eq!(
            spinentropy_binned_pmf(state, 51, SpinDirection::Z, SpinBinMethod::Exact, pmf.as_mut_ptr()),
            SpinStatus::Ok
        );
        let total: f64 = pmf.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);

        let mut bin = 0u64;
        assert_eq!(spinentropy_concentration_bin(0.3, 51, &mut bin), SpinStatus::Ok);
        assert_eq!(bin, 16);
        let heaviest = pmf
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i as u64 + 1)
            .unwrap();
        assert_eq!(heaviest, bin);

        let mut lhs = 0.0;
        let mut rhs = 0.0;
        assert_eq!(spinentropy_robertson_pair(state, &mut lhs, &mut rhs), SpinStatus::Ok);
        assert!(lhs >= rhs);

        spinentropy_state_free(state);
    }
}

#[test]
fn errors_come_back_as_status_codes() {
    unsafe {
        let mut handle: *mut SpinState = ptr::null_mut();
        assert_eq!(
            spinentropy_state_new(0, 0.5, 0.0, &mut handle),
            SpinStatus::InvalidArgument
        );
        assert_eq!(
            spinentropy_state_new(10, 1.5, 0.0, &mut handle),
            SpinStatus::InvalidArgument
        );
        assert_eq!(
            spinentropy_state_new(10, 0.5, f64::NAN, &mut handle),
            SpinStatus::InvalidArgument
        );
        assert!(handle.is_null(), "failed construction must not leak a handle");

        let mut value = 123.0;
        assert_eq!(
            spinentropy_x_projection_prob(ptr::null(), &mut value),
            SpinStatus::NullPointer
        );
        assert_eq!(value, 123.0, "outputs stay untouched on failure");

        let state = new_state(10, 0.0, 0.0);
        // gaussian statistics are undefined for a deterministic preparation
        assert_eq!(
            spinentropy_binned_entropy(state, 5, SpinDirection::Z, SpinBinMethod::Gaussian, &mut value),
            SpinStatus::InvalidArgument
        );
        // zero-variance weight has no gaussian limit either
        assert_eq!(
            spinentropy_collective_entropy_asymptotic(10, 0.0, &mut value),
            SpinStatus::InvalidArgument
        );
        assert_eq!(
            spinentropy_binned_entropy_sum(state, 0, &mut value),
            SpinStatus::InvalidArgument
        );
        assert_eq!(
            spinentropy_binned_pmf(state, 5, SpinDirection::Z, SpinBinMethod::Exact, ptr::null_mut()),
            SpinStatus::NullPointer
        );
        spinentropy_state_free(state);
        spinentropy_state_free(ptr::null_mut());
    }
}
