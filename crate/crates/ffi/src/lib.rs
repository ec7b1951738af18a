//! C ABI over the spinentropy core: opaque state handles, integer status
//! codes, and caller-allocated output buffers.  Every function is safe to
//! call from any thread; handles are immutable after construction.
//!
//! Conventions: functions return [`SpinStatus`]; results land in `out`
//! pointers that are written only on `Ok`.  Passing a null pointer is
//! reported, never dereferenced.  Handles must be released exactly once
//! with [`spinentropy_state_free`].

use spinentropy::{coarse, collective, states};
use spinentropy::{BinningScheme, Direction, Error, Method, SpinCoherentState};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Call outcome; zero is success, everything else leaves outputs untouched.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NumericalError = 3,
    SizeCapExceeded = 4,
}

/// Measurement direction selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinDirection {
    X = 0,
    Z = 1,
}

/// Binned-distribution construction method.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinBinMethod {
    Exact = 0,
    Gaussian = 1,
}

/// Opaque handle to a prepared N-spin product state.
pub struct SpinState {
    inner: SpinCoherentState,
}

impl From<SpinDirection> for Direction {
    fn from(d: SpinDirection) -> Self {
        match d {
            SpinDirection::X => Direction::X,
            SpinDirection::Z => Direction::Z,
        }
    }
}

impl From<SpinBinMethod> for Method {
    fn from(m: SpinBinMethod) -> Self {
        match m {
            SpinBinMethod::Exact => Method::Exact,
            SpinBinMethod::Gaussian => Method::Gaussian,
        }
    }
}

fn status_of(err: &Error) -> SpinStatus {
    match err {
        Error::SizeCap { .. } => SpinStatus::SizeCapExceeded,
        Error::Domain { .. }
        | Error::EmptyInput { .. }
        | Error::DegenerateVariance { .. }
        | Error::Config { .. } => SpinStatus::InvalidArgument,
        Error::Normalization { .. } | Error::NotHermitian { .. } | Error::NotOrthonormal { .. } => {
            SpinStatus::NumericalError
        }
    }
}

// Runs `f` with panics converted to a status so no unwind crosses the ABI.
fn guarded(f: impl FnOnce() -> SpinStatus) -> SpinStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SpinStatus::NumericalError)
}

// Writes a fallible scalar through `out`; shared shape of most entry points.
fn write_result(out: *mut f64, value: Result<f64, Error>) -> SpinStatus {
    if out.is_null() {
        return SpinStatus::NullPointer;
    }
    match value {
        Ok(v) => {
            unsafe { *out = v };
            SpinStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

unsafe fn state_ref<'a>(state: *const SpinState) -> Option<&'a SpinCoherentState> {
    state.as_ref().map(|s| &s.inner)
}

/// Allocates a state handle for `n_spins` spins with z-weight `p` and
/// relative phase `phi` (radians).  On success writes the handle to `out`.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut SpinState` slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_state_new(
    n_spins: u64,
    p: f64,
    phi: f64,
    out: *mut *mut SpinState,
) -> SpinStatus {
    if out.is_null() {
        return SpinStatus::NullPointer;
    }
    guarded(|| match SpinCoherentState::new(n_spins, p, phi) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(SpinState { inner }));
            SpinStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a handle created by [`spinentropy_state_new`].  Null is a no-op.
///
/// # Safety
/// `state` must be a live handle from this library, passed at most once.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_state_free(state: *mut SpinState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Probability of projecting one factor onto the +x outcome.
///
/// # Safety
/// `state` must be a live handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_x_projection_prob(
    state: *const SpinState,
    out: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    guarded(|| write_result(out, Ok(s.x_projection_prob())))
}

/// Entropy in bits of measuring every spin along `direction`.
///
/// # Safety
/// `state` must be a live handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_product_entropy(
    state: *const SpinState,
    direction: SpinDirection,
    out: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    guarded(|| write_result(out, Ok(s.product_basis_entropy(direction.into()).bits())))
}

/// Sum of the x and z product-measurement entropies in bits.
///
/// # Safety
/// `state` must be a live handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_eur_sum_product(
    state: *const SpinState,
    out: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    guarded(|| write_result(out, Ok(s.eur_sum_product().bits())))
}

/// Entropy floor in bits for the product-measurement pair: N.
///
/// # Safety
/// `out` must be a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_eur_product_bound(n_spins: u64, out: *mut f64) -> SpinStatus {
    guarded(|| write_result(out, Ok(states::eur_product_bound(n_spins).bits())))
}

/// Entropy in bits of the collective magnetization readout.
///
/// # Safety
/// `state` must be a live handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_collective_entropy(
    state: *const SpinState,
    direction: SpinDirection,
    out: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    guarded(|| {
        write_result(
            out,
            collective::collective_entropy(s, direction.into()).map(|h| h.bits()),
        )
    })
}

/// Gaussian-limit collective entropy in bits for a weight-`weight` readout
/// on `n_spins` spins.  Rejects weight 0 and 1.
///
/// # Safety
/// `out` must be a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_collective_entropy_asymptotic(
    n_spins: u64,
    weight: f64,
    out: *mut f64,
) -> SpinStatus {
    guarded(|| {
        write_result(
            out,
            collective::collective_entropy_asymptotic(n_spins, weight).map(|h| h.bits()),
        )
    })
}

/// Entropy in bits of the binned magnetization readout.
///
/// # Safety
/// `state` must be a live handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_binned_entropy(
    state: *const SpinState,
    n_bins: u64,
    direction: SpinDirection,
    method: SpinBinMethod,
    out: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    guarded(|| {
        write_result(
            out,
            BinningScheme::new(n_bins).and_then(|scheme| match method.into() {
                Method::Exact => coarse::binned_entropy(s, scheme, direction.into()),
                Method::Gaussian => coarse::binned_pmf_gaussian(s, scheme, direction.into())
                    .and_then(|d| spinentropy::numerics::shannon_entropy(d.pmf())),
            })
            .map(|h| h.bits()),
        )
    })
}

/// Binned x entropy plus binned z entropy in bits (exact method).
///
/// # Safety
/// `state` must be a live handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_binned_entropy_sum(
    state: *const SpinState,
    n_bins: u64,
    out: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    guarded(|| {
        write_result(
            out,
            BinningScheme::new(n_bins)
                .and_then(|scheme| coarse::binned_entropy_sum(s, scheme))
                .map(|h| h.bits()),
        )
    })
}

/// 1-based bin that a weight-`weight` binomial mean concentrates into.
///
/// # Safety
/// `out` must be a valid u64 slot.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_concentration_bin(
    weight: f64,
    n_bins: u64,
    out: *mut u64,
) -> SpinStatus {
    if out.is_null() {
        return SpinStatus::NullPointer;
    }
    guarded(|| {
        match BinningScheme::new(n_bins).and_then(|scheme| coarse::concentration_bin(weight, scheme))
        {
            Ok(bin) => {
                *out = bin;
                SpinStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Variance-product uncertainty pair: `out_lhs` receives dX dZ and
/// `out_rhs` the commutator bound; lhs >= rhs always holds.
///
/// # Safety
/// `state` must be a live handle; both outputs valid f64 slots.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_robertson_pair(
    state: *const SpinState,
    out_lhs: *mut f64,
    out_rhs: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    if out_lhs.is_null() || out_rhs.is_null() {
        return SpinStatus::NullPointer;
    }
    guarded(|| {
        let (lhs, rhs) = s.robertson_bound_check();
        *out_lhs = lhs;
        *out_rhs = rhs;
        SpinStatus::Ok
    })
}

/// Fills `buffer` (length `n_bins`) with the binned magnetization pmf,
/// ordered by 1-based bin number.
///
/// # Safety
/// `state` must be a live handle; `buffer` must point to at least `n_bins`
/// writable f64 slots.
#[no_mangle]
pub unsafe extern "C" fn spinentropy_binned_pmf(
    state: *const SpinState,
    n_bins: u64,
    direction: SpinDirection,
    method: SpinBinMethod,
    buffer: *mut f64,
) -> SpinStatus {
    let Some(s) = state_ref(state) else {
        return SpinStatus::NullPointer;
    };
    if buffer.is_null() {
        return SpinStatus::NullPointer;
    }
    guarded(|| {
        let built = BinningScheme::new(n_bins).and_then(|scheme| match method.into() {
            Method::Exact => coarse::binned_pmf_exact(s, scheme, direction.into()),
            Method::Gaussian => coarse::binned_pmf_gaussian(s, scheme, direction.into()),
        });
        match built {
            Ok(dist) => {
                let slots = std::slice::from_raw_parts_mut(buffer, n_bins as usize);
                for (bin, slot) in slots.iter_mut().enumerate() {
                    *slot = dist.bin_prob(bin as u64 + 1);
                }
                SpinStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
