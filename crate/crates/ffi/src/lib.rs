//! C interface to spectrakit.
//!
//! Objects are opaque handles created by `sk_*_new`/`sk_*_compute`-style
//! functions and released with the matching `sk_*_free`. Every fallible
//! function returns an [`SkStatus`]; on failure, [`sk_last_error`] gives a
//! message for the calling thread. Strings returned through `char **`
//! belong to the caller and are released with [`sk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spectrakit::bounds;
use spectrakit::interrogate::{AdmissibleQuestion, SpectrumOracle};
use spectrakit::mcshane::{eta, mu, verify_identity, GapInputs};
use spectrakit::spectrum::{enumerate_spectrum, isospectral_compare, with_workers, EnumerationBudget};
use spectrakit::surface::{build_surface, curve_length};
use spectrakit::{Error, FenchelNielsenSurface, FuchsianGroup, LengthSpectrum, Word};

/// Result codes. `SK_STATUS_OK` is zero; every other value is a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    NotHyperbolic = 3,
    Domain = 4,
    DegenerateSurface = 5,
    InconsistentData = 6,
    NoSolution = 7,
    BudgetExhausted = 8,
    IncomparableCutoffs = 9,
    Uncertified = 10,
    CutoffExceeded = 11,
    Indistinguishable = 12,
    NoCandidateMatches = 13,
    InvalidContext = 14,
    Word = 15,
    Io = 16,
    Format = 17,
    OutOfRange = 18,
    Panic = 19,
}

impl From<&Error> for SkStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotHyperbolic { .. } => SkStatus::NotHyperbolic,
            Error::Domain(_) => SkStatus::Domain,
            Error::DegenerateSurface(_) => SkStatus::DegenerateSurface,
            Error::InconsistentData(_) => SkStatus::InconsistentData,
            Error::NoSolution { .. } => SkStatus::NoSolution,
            Error::BudgetExhausted { .. } => SkStatus::BudgetExhausted,
            Error::IncomparableCutoffs { .. } => SkStatus::IncomparableCutoffs,
            Error::Uncertified => SkStatus::Uncertified,
            Error::CutoffExceeded { .. } => SkStatus::CutoffExceeded,
            Error::Indistinguishable { .. } => SkStatus::Indistinguishable,
            Error::NoCandidateMatches => SkStatus::NoCandidateMatches,
            Error::InvalidContext(_) => SkStatus::InvalidContext,
            Error::Word(_) => SkStatus::Word,
            Error::Io(_) => SkStatus::Io,
            Error::Format(_) => SkStatus::Format,
        }
    }
}

/// A surface together with its Fuchsian group.
pub struct SkSurface {
    surface: FenchelNielsenSurface,
    group: FuchsianGroup,
}

pub struct SkSpectrum(LengthSpectrum);

pub struct SkOracle(SpectrumOracle);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(SkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SkStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SkStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SkStatus::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            SkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn string_out(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(SkStatus::Format, "output contains NUL".into()))
}

fn new_surface(surface: FenchelNielsenSurface) -> Result<*mut SkSurface, Failure> {
    let group = build_surface(&surface)?;
    Ok(Box::into_raw(Box::new(SkSurface { surface, group })))
}

/// Message for the last failure on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// One-holed torus with interior curve length, twist and boundary length.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_surface_torus(
    interior_length: f64,
    twist: f64,
    boundary_length: f64,
    out: *mut *mut SkSurface,
) -> SkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = new_surface(FenchelNielsenSurface::one_holed_torus(interior_length, twist, boundary_length)?)?;
        Ok(())
    })
}

/// Closed genus-2 surface from three cuff lengths and three twists.
///
/// # Safety
/// `cuffs` and `twists` must point to three doubles each; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_surface_genus2(
    cuffs: *const f64,
    twists: *const f64,
    out: *mut *mut SkSurface,
) -> SkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if cuffs.is_null() || twists.is_null() {
            return Err(null("cuffs or twists"));
        }
        let c = std::slice::from_raw_parts(cuffs, 3);
        let t = std::slice::from_raw_parts(twists, 3);
        *out = new_surface(FenchelNielsenSurface::genus2([c[0], c[1], c[2]], [t[0], t[1], t[2]])?)?;
        Ok(())
    })
}

/// Surface from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_surface_from_json(json: *const c_char, out: *mut *mut SkSurface) -> SkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let text = str_arg(json, "json")?;
        let s: FenchelNielsenSurface = serde_json::from_str(text).map_err(Error::from)?;
        s.validate()?;
        *out = new_surface(s)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sk_surface_free(s: *mut SkSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Genus of the surface (1 for a one-holed torus), or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_surface_genus(s: *const SkSurface) -> u64 {
    s.as_ref().map_or(0, |s| s.surface.genus())
}

/// Length of the closed geodesic of a word such as `"ABab"`.
///
/// # Safety
/// `s` must be a live handle, `word` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sk_surface_curve_length(
    s: *const SkSurface,
    word: *const c_char,
    out: *mut f64,
) -> SkStatus {
    guard(|| {
        let s = ref_arg(s, "surface")?;
        let w: Word = str_arg(word, "word")?.parse()?;
        *out_arg(out, "out")? = curve_length(&s.group, &w)?;
        Ok(())
    })
}

/// Certified length spectrum up to `cutoff`. `workers == 0` uses all cores.
///
/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_compute(
    s: *const SkSurface,
    cutoff: f64,
    max_word_length: usize,
    workers: usize,
    out: *mut *mut SkSpectrum,
) -> SkStatus {
    guard(|| {
        let s = ref_arg(s, "surface")?;
        let out = out_arg(out, "out")?;
        let budget = EnumerationBudget::new(cutoff).with_max_word_length(max_word_length);
        let spectrum = if workers == 0 {
            enumerate_spectrum(&s.group, &budget)?
        } else {
            with_workers(workers, || enumerate_spectrum(&s.group, &budget))??
        };
        *out = Box::into_raw(Box::new(SkSpectrum(spectrum)));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_from_json(json: *const c_char, out: *mut *mut SkSpectrum) -> SkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let s: LengthSpectrum = serde_json::from_str(str_arg(json, "json")?).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(SkSpectrum(s)));
        Ok(())
    })
}

/// # Safety
/// `sp` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_to_json(sp: *const SkSpectrum, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let sp = ref_arg(sp, "spectrum")?;
        let out = out_arg(out, "out")?;
        *out = string_out(serde_json::to_string(&sp.0).map_err(Error::from)?)?;
        Ok(())
    })
}

/// # Safety
/// `sp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_free(sp: *mut SkSpectrum) {
    if !sp.is_null() {
        drop(Box::from_raw(sp));
    }
}

/// Number of distinct lengths, or 0 for a null handle.
///
/// # Safety
/// `sp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_len(sp: *const SkSpectrum) -> usize {
    sp.as_ref().map_or(0, |s| s.0.entries.len())
}

/// # Safety
/// `sp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_cutoff(sp: *const SkSpectrum) -> f64 {
    sp.as_ref().map_or(f64::NAN, |s| s.0.cutoff)
}

/// # Safety
/// `sp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_certified(sp: *const SkSpectrum) -> bool {
    sp.as_ref().is_some_and(|s| s.0.certified)
}

/// Entry `i` in increasing length order.
///
/// # Safety
/// `sp` must be a live handle; `length` and `multiplicity` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_entry(
    sp: *const SkSpectrum,
    i: usize,
    length: *mut f64,
    multiplicity: *mut u64,
) -> SkStatus {
    guard(|| {
        let sp = ref_arg(sp, "spectrum")?;
        let e = sp.0.entries.get(i).ok_or_else(|| {
            Failure(SkStatus::OutOfRange, format!("entry {i} of {}", sp.0.entries.len()))
        })?;
        *out_arg(length, "length")? = e.length;
        *out_arg(multiplicity, "multiplicity")? = e.multiplicity;
        Ok(())
    })
}

/// Compares two spectra up to `cutoff`. `first_discrepancy` receives the
/// 1-based index of the first differing expanded entry, or 0.
///
/// # Safety
/// Handles must be live and output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn sk_spectrum_compare(
    a: *const SkSpectrum,
    b: *const SkSpectrum,
    cutoff: f64,
    tolerance: f64,
    isospectral: *mut bool,
    first_discrepancy: *mut usize,
) -> SkStatus {
    guard(|| {
        let (a, b) = (ref_arg(a, "first")?, ref_arg(b, "second")?);
        let c = isospectral_compare(&a.0, &b.0, cutoff, tolerance)?;
        *out_arg(isospectral, "isospectral")? = c.isospectral;
        *out_arg(first_discrepancy, "first_discrepancy")? = c.first_discrepancy.unwrap_or(0);
        Ok(())
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_mu(x: f64, y: f64, z: f64, out: *mut f64) -> SkStatus {
    guard(|| {
        *out_arg(out, "out")? = mu(&GapInputs::new(x, y, z)?)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_eta(x: f64, y: f64, z: f64, out: *mut f64) -> SkStatus {
    guard(|| {
        *out_arg(out, "out")? = eta(&GapInputs::new(x, y, z)?)?;
        Ok(())
    })
}

/// `1 − Σ μ(x, ℓ, ℓ)` over simple geodesics up to `cutoff` on a one-holed torus.
///
/// # Safety
/// `s` must be a live handle; `deficit` must be valid; `terms` may be null.
#[no_mangle]
pub unsafe extern "C" fn sk_mcshane_deficit(
    s: *const SkSurface,
    cutoff: f64,
    deficit: *mut f64,
    terms: *mut usize,
) -> SkStatus {
    guard(|| {
        let s = ref_arg(s, "surface")?;
        let boundary = s
            .surface
            .boundary_length
            .ok_or_else(|| Error::Domain("the surface has no boundary".into()))?;
        let r = verify_identity(&s.group, boundary, cutoff)?;
        *out_arg(deficit, "deficit")? = r.deficit;
        if let Some(t) = terms.as_mut() {
            *t = r.terms;
        }
        Ok(())
    })
}

/// Every named bound at genus `g`, as a JSON object.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_bounds_json(g: u32, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = string_out(serde_json::to_string(&bounds::table(g)?).map_err(Error::from)?)?;
        Ok(())
    })
}

/// `ln g^{154 g}`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_bounds_maincount(g: u32, out: *mut f64) -> SkStatus {
    guard(|| {
        *out_arg(out, "out")? = bounds::maincount_bound(g)?;
        Ok(())
    })
}

/// Oracle over a copy of a certified spectrum.
///
/// # Safety
/// `sp` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sk_oracle_new(sp: *const SkSpectrum, out: *mut *mut SkOracle) -> SkStatus {
    guard(|| {
        let sp = ref_arg(sp, "spectrum")?;
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(SkOracle(SpectrumOracle::new(sp.0.clone())?)));
        Ok(())
    })
}

/// Smallest value of the spectrum after removing `n` excluded values.
///
/// # Safety
/// `o` must be a live handle; `exclusions` must point to `n` doubles (or be
/// null when `n` is 0); `answer` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sk_oracle_ask(
    o: *mut SkOracle,
    exclusions: *const f64,
    n: usize,
    answer: *mut f64,
) -> SkStatus {
    guard(|| {
        let o = out_arg(o, "oracle")?;
        let values = if n == 0 {
            Vec::new()
        } else if exclusions.is_null() {
            return Err(null("exclusions"));
        } else {
            std::slice::from_raw_parts(exclusions, n).to_vec()
        };
        *out_arg(answer, "answer")? = o.0.ask(&AdmissibleQuestion::new(values)?)?;
        Ok(())
    })
}

/// Questions answered so far, or 0 for a null handle.
///
/// # Safety
/// `o` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_oracle_questions(o: *const SkOracle) -> u64 {
    o.as_ref().map_or(0, |o| o.0.questions_asked())
}

/// # Safety
/// `o` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_oracle_free(o: *mut SkOracle) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}
