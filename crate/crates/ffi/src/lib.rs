//! C ABI for the ribbon graph complex workbench.
//!
//! All functions return an [`RgcxStatus`] code; results travel through
//! out-parameters. Handles are opaque and must be released with the
//! matching `rgcx_*_free` function. Strings returned by the library are
//! NUL-terminated UTF-8 owned by the library; free them with
//! [`rgcx_string_free`]. No function panics across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rgcx::diff::{assemble, cohomology};
use rgcx::enumerate::{basis, Basis};
use rgcx::family::{Family, FamilySpec, Sector};

/// Status codes returned by every API entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RgcxStatus {
    /// success
    Ok = 0,
    /// a pointer argument was null
    NullArgument = 1,
    /// family / degree-shift / sector combination is invalid
    InvalidConfig = 2,
    /// an index was out of range for the handle it addresses
    OutOfRange = 3,
    /// the exact rank and the modular cross-check disagreed
    RankCheckFailed = 4,
    /// an internal invariant failed
    Internal = 5,
}

/// Families exposed over the C ABI; values mirror the CLI names.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RgcxFamily {
    /// undirected surface complex
    Rgc = 0,
    /// directed (quiver) surface complex
    Orgc = 1,
    /// undirected one-boundary complex
    Rgc1 = 2,
    /// directed one-boundary complex
    Orgc1 = 3,
    /// two-colored recoloring complex
    Mixed = 4,
    /// haired properad generators
    Pcy = 5,
}

/// Opaque: a validated (family, degree shift, sector) triple.
pub struct RgcxSpec(FamilySpec);

/// Opaque: the canonical basis of one cohomological degree.
pub struct RgcxBasis(Basis);

/// Per-degree exact rank data.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RgcxDegreeRank {
    pub degree: i64,
    pub dim: usize,
    /// rank of the differential arriving from degree - 1
    pub rank_in: usize,
    /// rank of the differential leaving towards degree + 1
    pub rank_out: usize,
    pub betti: usize,
}

fn guard<F: FnOnce() -> RgcxStatus>(f: F) -> RgcxStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(RgcxStatus::Internal)
}

/// Builds a spec handle. `a`/`b` are (g, m) for the surface families,
/// (g, ignored) for the one-boundary families, and (p, q) for the
/// haired family. On success `*out` owns the handle.
#[no_mangle]
pub extern "C" fn rgcx_spec_new(
    family: RgcxFamily,
    d: i64,
    a: u32,
    b: u32,
    out: *mut *mut RgcxSpec,
) -> RgcxStatus {
    if out.is_null() {
        return RgcxStatus::NullArgument;
    }
    guard(|| {
        let (fam, sector) = match family {
            RgcxFamily::Rgc => (Family::Rgc, Sector::Surface { g: a, m: b }),
            RgcxFamily::Orgc => (Family::Orgc, Sector::Surface { g: a, m: b }),
            RgcxFamily::Rgc1 => (Family::Rgc1, Sector::OneBoundary { g: a }),
            RgcxFamily::Orgc1 => (Family::Orgc1, Sector::OneBoundary { g: a }),
            RgcxFamily::Mixed => (Family::Mixed, Sector::OneBoundary { g: a }),
            RgcxFamily::Pcy => (Family::Pcy, Sector::Hairs { p: a, q: b }),
        };
        match FamilySpec::new(fam, d, sector) {
            Ok(spec) => {
                unsafe { *out = Box::into_raw(Box::new(RgcxSpec(spec))) };
                RgcxStatus::Ok
            }
            Err(_) => RgcxStatus::InvalidConfig,
        }
    })
}

/// Releases a spec handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn rgcx_spec_free(spec: *mut RgcxSpec) {
    if !spec.is_null() {
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Enumerates the canonical basis of one degree, scanning size classes
/// with at most `max_edges` edges. On success `*out` owns the handle.
#[no_mangle]
pub extern "C" fn rgcx_basis_new(
    spec: *const RgcxSpec,
    degree: i64,
    max_edges: usize,
    out: *mut *mut RgcxBasis,
) -> RgcxStatus {
    if spec.is_null() || out.is_null() {
        return RgcxStatus::NullArgument;
    }
    guard(|| {
        let spec = unsafe { &(*spec).0 };
        let b = basis(spec, degree, max_edges);
        unsafe { *out = Box::into_raw(Box::new(RgcxBasis(b))) };
        RgcxStatus::Ok
    })
}

/// Releases a basis handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn rgcx_basis_free(b: *mut RgcxBasis) {
    if !b.is_null() {
        drop(unsafe { Box::from_raw(b) });
    }
}

/// Number of basis classes.
#[no_mangle]
pub extern "C" fn rgcx_basis_dim(b: *const RgcxBasis, out: *mut usize) -> RgcxStatus {
    if b.is_null() || out.is_null() {
        return RgcxStatus::NullArgument;
    }
    unsafe { *out = (*b).0.dim() };
    RgcxStatus::Ok
}

/// Canonical key of the `i`-th basis class as an owned C string.
#[no_mangle]
pub extern "C" fn rgcx_basis_key(
    b: *const RgcxBasis,
    i: usize,
    out: *mut *mut c_char,
) -> RgcxStatus {
    if b.is_null() || out.is_null() {
        return RgcxStatus::NullArgument;
    }
    guard(|| {
        let basis = unsafe { &(*b).0 };
        let Some(key) = basis.keys.get(i) else {
            return RgcxStatus::OutOfRange;
        };
        match CString::new(key.clone()) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                RgcxStatus::Ok
            }
            Err(_) => RgcxStatus::Internal,
        }
    })
}

/// Exact rank of the differential from `from` to `to`, cross-checked
/// against an independent modular elimination.
#[no_mangle]
pub extern "C" fn rgcx_differential_rank(
    spec: *const RgcxSpec,
    from: *const RgcxBasis,
    to: *const RgcxBasis,
    prime: u64,
    out: *mut usize,
) -> RgcxStatus {
    if spec.is_null() || from.is_null() || to.is_null() || out.is_null() {
        return RgcxStatus::NullArgument;
    }
    guard(|| {
        let spec = unsafe { &(*spec).0 };
        let m = assemble(spec, unsafe { &(*from).0 }, unsafe { &(*to).0 });
        match m.rank_checked(prime) {
            Ok(r) => {
                unsafe { *out = r };
                RgcxStatus::Ok
            }
            Err(_) => RgcxStatus::RankCheckFailed,
        }
    })
}

/// The differential from `from` to `to` in Matrix Market coordinate
/// format (rational extension) as an owned C string.
#[no_mangle]
pub extern "C" fn rgcx_differential_matrix_market(
    spec: *const RgcxSpec,
    from: *const RgcxBasis,
    to: *const RgcxBasis,
    out: *mut *mut c_char,
) -> RgcxStatus {
    if spec.is_null() || from.is_null() || to.is_null() || out.is_null() {
        return RgcxStatus::NullArgument;
    }
    guard(|| {
        let spec = unsafe { &(*spec).0 };
        let m = assemble(spec, unsafe { &(*from).0 }, unsafe { &(*to).0 });
        match CString::new(m.to_matrix_market()) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                RgcxStatus::Ok
            }
            Err(_) => RgcxStatus::Internal,
        }
    })
}

/// Exact Betti numbers for degrees `lo ..= hi`. `ranks` must point to
/// at least `hi - lo + 1` entries; `max_edges` must be large enough
/// that every basis between `lo - 1` and `hi + 1` is complete.
#[no_mangle]
pub extern "C" fn rgcx_cohomology(
    spec: *const RgcxSpec,
    lo: i64,
    hi: i64,
    max_edges: usize,
    prime: u64,
    ranks: *mut RgcxDegreeRank,
) -> RgcxStatus {
    if spec.is_null() || ranks.is_null() {
        return RgcxStatus::NullArgument;
    }
    if lo > hi {
        return RgcxStatus::InvalidConfig;
    }
    guard(|| {
        let spec = unsafe { &(*spec).0 };
        match cohomology(spec, lo, hi, max_edges, prime) {
            Ok(reports) => {
                for (i, r) in reports.iter().enumerate() {
                    unsafe {
                        *ranks.add(i) = RgcxDegreeRank {
                            degree: r.degree,
                            dim: r.dim,
                            rank_in: r.rank_in,
                            rank_out: r.rank_out,
                            betti: r.betti,
                        };
                    }
                }
                RgcxStatus::Ok
            }
            Err(_) => RgcxStatus::RankCheckFailed,
        }
    })
}

/// Canonicalizes a key produced by this library (or an equivalent
/// serialization) and returns the canonical key of the same class.
/// Useful for deduplicating externally produced graphs.
#[no_mangle]
pub extern "C" fn rgcx_canonical_key(
    key: *const c_char,
    out: *mut *mut c_char,
) -> RgcxStatus {
    if key.is_null() || out.is_null() {
        return RgcxStatus::NullArgument;
    }
    guard(|| {
        let raw = unsafe { CStr::from_ptr(key) };
        let Ok(text) = raw.to_str() else {
            return RgcxStatus::InvalidConfig;
        };
        let result = catch_unwind(|| {
            let dec = rgcx::canon::decode_key(text.as_bytes());
            rgcx::canon::key_of(&dec)
        });
        match result {
            Ok(k) => match CString::new(k) {
                Ok(s) => {
                    unsafe { *out = s.into_raw() };
                    RgcxStatus::Ok
                }
                Err(_) => RgcxStatus::Internal,
            },
            Err(_) => RgcxStatus::InvalidConfig,
        }
    })
}

/// Frees a string returned by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn rgcx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn rgcx_version() -> *const c_char {
    static VERSION: &str = concat!("rgcx ", env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

#[allow(unused)]
fn assert_ptr_traits() {
    let _ = ptr::null::<RgcxSpec>();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn make_spec(family: RgcxFamily, d: i64, a: u32, b: u32) -> *mut RgcxSpec {
        let mut ptr: *mut RgcxSpec = std::ptr::null_mut();
        assert_eq!(rgcx_spec_new(family, d, a, b, &mut ptr), RgcxStatus::Ok);
        assert!(!ptr.is_null());
        ptr
    }

    #[test]
    fn spec_lifecycle_and_validation() {
        let s = make_spec(RgcxFamily::Rgc, 2, 0, 3);
        rgcx_spec_free(s);
        let mut ptr: *mut RgcxSpec = std::ptr::null_mut();
        // the d = 1 surface piece has unbounded degree support
        assert_eq!(
            rgcx_spec_new(RgcxFamily::Rgc, 1, 0, 3, &mut ptr),
            RgcxStatus::InvalidConfig
        );
        assert_eq!(
            rgcx_spec_new(RgcxFamily::Rgc, 2, 0, 3, std::ptr::null_mut()),
            RgcxStatus::NullArgument
        );
        rgcx_spec_free(std::ptr::null_mut());
    }

    #[test]
    fn basis_and_rank_roundtrip() {
        let s = make_spec(RgcxFamily::Rgc, 2, 0, 3);
        let mut b0: *mut RgcxBasis = std::ptr::null_mut();
        let mut b1: *mut RgcxBasis = std::ptr::null_mut();
        assert_eq!(rgcx_basis_new(s, -1, 6, &mut b0), RgcxStatus::Ok);
        assert_eq!(rgcx_basis_new(s, 0, 6, &mut b1), RgcxStatus::Ok);
        let mut dim = 0usize;
        assert_eq!(rgcx_basis_dim(b0, &mut dim), RgcxStatus::Ok);
        assert!(dim > 0);
        let mut key: *mut c_char = std::ptr::null_mut();
        assert_eq!(rgcx_basis_key(b0, 0, &mut key), RgcxStatus::Ok);
        let text = unsafe { CStr::from_ptr(key) }.to_str().unwrap().to_owned();
        assert!(!text.is_empty());
        // round-trip through the canonicalizer is the identity on keys
        let mut again: *mut c_char = std::ptr::null_mut();
        assert_eq!(rgcx_canonical_key(key, &mut again), RgcxStatus::Ok);
        assert_eq!(unsafe { CStr::from_ptr(again) }.to_str().unwrap(), text);
        rgcx_string_free(key);
        rgcx_string_free(again);
        assert_eq!(
            rgcx_basis_key(b0, usize::MAX, &mut key),
            RgcxStatus::OutOfRange
        );
        let mut rank = 0usize;
        assert_eq!(
            rgcx_differential_rank(s, b0, b1, 32003, &mut rank),
            RgcxStatus::Ok
        );
        let mut mm: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            rgcx_differential_matrix_market(s, b0, b1, &mut mm),
            RgcxStatus::Ok
        );
        let text = unsafe { CStr::from_ptr(mm) }.to_str().unwrap();
        assert!(text.starts_with("%%MatrixMarket"));
        rgcx_string_free(mm);
        rgcx_basis_free(b0);
        rgcx_basis_free(b1);
        rgcx_spec_free(s);
    }

    #[test]
    fn cohomology_matches_known_point() {
        // genus 0 with three boundaries: a single class in degree -1
        let s = make_spec(RgcxFamily::Rgc, 2, 0, 3);
        let mut ranks = [RgcxDegreeRank {
            degree: 0,
            dim: 0,
            rank_in: 0,
            rank_out: 0,
            betti: 0,
        }; 3];
        assert_eq!(
            rgcx_cohomology(s, -2, 0, 8, 32003, ranks.as_mut_ptr()),
            RgcxStatus::Ok
        );
        assert_eq!(ranks[0].betti, 0);
        assert_eq!(ranks[1].betti, 1);
        assert_eq!(ranks[2].betti, 0);
        rgcx_spec_free(s);
    }

    #[test]
    fn version_is_static() {
        let v = unsafe { CStr::from_ptr(rgcx_version()) };
        assert!(v.to_str().unwrap().starts_with("rgcx "));
    }
}
