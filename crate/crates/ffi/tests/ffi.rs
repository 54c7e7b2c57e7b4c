use std::ffi::{CStr, CString};
use std::ptr;

use spectrakit::surface::{build_surface, curve_length};
use spectrakit::{FenchelNielsenSurface, Word};
use spectrakit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(sk_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    sk_string_free(p);
    s
}

unsafe fn genus2(cuffs: [f64; 3], twists: [f64; 3]) -> *mut SkSurface {
    let mut s = ptr::null_mut();
    assert_eq!(sk_surface_genus2(cuffs.as_ptr(), twists.as_ptr(), &mut s), SkStatus::Ok);
    s
}

unsafe fn spectrum(s: *const SkSurface, cutoff: f64, workers: usize) -> *mut SkSpectrum {
    let mut sp = ptr::null_mut();
    assert_eq!(sk_spectrum_compute(s, cutoff, 64, workers, &mut sp), SkStatus::Ok, "{}", last_error());
    sp
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(sk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn curve_length_matches_core() {
    unsafe {
        let s = genus2([2.2, 2.6, 2.0], [0.3, -0.4, 0.2]);
        assert_eq!(sk_surface_genus(s), 2);
        let word = CString::new("ab").unwrap();
        let mut len = 0.0;
        assert_eq!(sk_surface_curve_length(s, word.as_ptr(), &mut len), SkStatus::Ok);
        let surface = FenchelNielsenSurface::genus2([2.2, 2.6, 2.0], [0.3, -0.4, 0.2]).unwrap();
        let group = build_surface(&surface).unwrap();
        let expected = curve_length(&group, &"ab".parse::<Word>().unwrap()).unwrap();
        assert_eq!(len, expected);
        assert_eq!(last_error(), "");

        let bad = CString::new("a?").unwrap();
        assert_eq!(sk_surface_curve_length(s, bad.as_ptr(), &mut len), SkStatus::Word);
        assert!(!last_error().is_empty());
        sk_surface_free(s);
    }
}

#[test]
fn invalid_surfaces_are_rejected() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sk_surface_torus(-1.0, 0.0, 2.0, &mut s), SkStatus::Domain);
        assert!(s.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(sk_surface_genus2(ptr::null(), ptr::null(), &mut s), SkStatus::NullPointer);
        let junk = CString::new("{").unwrap();
        assert_eq!(sk_surface_from_json(junk.as_ptr(), &mut s), SkStatus::Format);
        assert_eq!(sk_surface_torus(1.0, 0.0, 2.0, ptr::null_mut()), SkStatus::NullPointer);
        assert_eq!(sk_surface_genus(ptr::null()), 0);
        sk_surface_free(ptr::null_mut());
    }
}

#[test]
fn surface_json_round_trip() {
    unsafe {
        let surface = FenchelNielsenSurface::one_holed_torus(1.0, 0.2, 2.0).unwrap();
        let json = CString::new(serde_json::to_string(&surface).unwrap()).unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(sk_surface_from_json(json.as_ptr(), &mut s), SkStatus::Ok);
        assert_eq!(sk_surface_genus(s), 1);
        sk_surface_free(s);
    }
}

#[test]
fn spectrum_entries_and_json() {
    unsafe {
        let s = genus2([2.2, 2.6, 2.0], [0.3, -0.4, 0.2]);
        let sp = spectrum(s, 5.0, 2);
        assert!(sk_spectrum_certified(sp));
        assert_eq!(sk_spectrum_cutoff(sp), 5.0);
        let n = sk_spectrum_len(sp);
        assert!(n > 0);
        let mut prev = 0.0;
        for i in 0..n {
            let (mut l, mut m) = (0.0, 0u64);
            assert_eq!(sk_spectrum_entry(sp, i, &mut l, &mut m), SkStatus::Ok);
            assert!(l > prev && l <= 5.0 && m >= 1);
            prev = l;
        }
        let (mut l, mut m) = (0.0, 0u64);
        assert_eq!(sk_spectrum_entry(sp, n, &mut l, &mut m), SkStatus::OutOfRange);

        let mut text = ptr::null_mut();
        assert_eq!(sk_spectrum_to_json(sp, &mut text), SkStatus::Ok);
        let json = CString::new(take_string(text)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(sk_spectrum_from_json(json.as_ptr(), &mut back), SkStatus::Ok);
        assert_eq!(sk_spectrum_len(back), n);

        let (mut iso, mut first) = (false, 99usize);
        assert_eq!(sk_spectrum_compare(sp, back, 5.0, 1e-8, &mut iso, &mut first), SkStatus::Ok);
        assert!(iso);
        assert_eq!(first, 0);

        sk_spectrum_free(back);
        sk_spectrum_free(sp);
        sk_surface_free(s);
    }
}

#[test]
fn worker_count_does_not_change_the_spectrum() {
    unsafe {
        let s = genus2([1.9, 2.4, 2.1], [0.1, 0.5, -0.3]);
        let a = spectrum(s, 5.0, 1);
        let b = spectrum(s, 5.0, 4);
        let (mut ja, mut jb) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sk_spectrum_to_json(a, &mut ja), SkStatus::Ok);
        assert_eq!(sk_spectrum_to_json(b, &mut jb), SkStatus::Ok);
        assert_eq!(take_string(ja), take_string(jb));
        sk_spectrum_free(a);
        sk_spectrum_free(b);
        sk_surface_free(s);
    }
}

#[test]
fn different_surfaces_compare_unequal() {
    unsafe {
        let s1 = genus2([2.2, 2.6, 2.0], [0.3, -0.4, 0.2]);
        let s2 = genus2([2.2, 2.6, 2.1], [0.3, -0.4, 0.2]);
        let (a, b) = (spectrum(s1, 5.0, 0), spectrum(s2, 5.0, 0));
        let (mut iso, mut first) = (true, 0usize);
        assert_eq!(sk_spectrum_compare(a, b, 5.0, 1e-8, &mut iso, &mut first), SkStatus::Ok);
        assert!(!iso);
        assert!(first >= 1);
        assert_eq!(sk_spectrum_compare(a, b, 6.0, 1e-8, &mut iso, &mut first), SkStatus::IncomparableCutoffs);
        for p in [a, b] {
            sk_spectrum_free(p);
        }
        sk_surface_free(s1);
        sk_surface_free(s2);
    }
}

#[test]
fn oracle_answers_and_counts() {
    unsafe {
        let s = genus2([2.2, 2.6, 2.0], [0.3, -0.4, 0.2]);
        let sp = spectrum(s, 5.0, 0);
        let (mut l0, mut m0) = (0.0, 0u64);
        assert_eq!(sk_spectrum_entry(sp, 0, &mut l0, &mut m0), SkStatus::Ok);

        let mut o = ptr::null_mut();
        assert_eq!(sk_oracle_new(sp, &mut o), SkStatus::Ok);
        let mut answer = 0.0;
        assert_eq!(sk_oracle_ask(o, ptr::null(), 0, &mut answer), SkStatus::Ok);
        assert_eq!(answer, l0);
        assert_eq!(sk_oracle_questions(o), 1);

        let excl = vec![l0; m0 as usize];
        assert_eq!(sk_oracle_ask(o, excl.as_ptr(), excl.len(), &mut answer), SkStatus::Ok);
        assert!(answer > l0);
        assert_eq!(sk_oracle_questions(o), 2);

        let bad = [-1.0];
        assert_eq!(sk_oracle_ask(o, bad.as_ptr(), 1, &mut answer), SkStatus::Domain);
        assert_eq!(sk_oracle_ask(o, ptr::null(), 3, &mut answer), SkStatus::NullPointer);
        assert_eq!(sk_oracle_questions(o), 2);

        sk_oracle_free(o);
        sk_spectrum_free(sp);
        sk_surface_free(s);
    }
}

#[test]
fn gap_functions_and_mcshane() {
    unsafe {
        let (mut m, mut e) = (0.0, 0.0);
        assert_eq!(sk_mu(1.0, 2.0, 2.0, &mut m), SkStatus::Ok);
        assert_eq!(sk_eta(1.0, 2.0, 2.0, &mut e), SkStatus::Ok);
        assert!(0.0 < m && m < e);
        assert_eq!(sk_mu(0.0, 2.0, 2.0, &mut m), SkStatus::Domain);

        let mut t = ptr::null_mut();
        assert_eq!(sk_surface_torus(1.0, 0.2, 2.0, &mut t), SkStatus::Ok);
        let (mut deficit, mut terms) = (1.0, 0usize);
        assert_eq!(sk_mcshane_deficit(t, 25.0, &mut deficit, &mut terms), SkStatus::Ok);
        assert!(deficit.abs() < 1e-2 && terms > 0);
        assert_eq!(sk_mcshane_deficit(t, 25.0, &mut deficit, ptr::null_mut()), SkStatus::Ok);
        sk_surface_free(t);

        let g = genus2([2.2, 2.6, 2.0], [0.3, -0.4, 0.2]);
        assert_ne!(sk_mcshane_deficit(g, 25.0, &mut deficit, ptr::null_mut()), SkStatus::Ok);
        sk_surface_free(g);
    }
}

#[test]
fn bounds_over_the_boundary() {
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(sk_bounds_json(3, &mut text), SkStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(text)).unwrap();
        assert_eq!(v["genus"], 3);
        let mut main = 0.0;
        assert_eq!(sk_bounds_maincount(3, &mut main), SkStatus::Ok);
        assert!((main - 154.0 * 3.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(sk_bounds_maincount(1, &mut main), SkStatus::InvalidContext);
        assert_eq!(sk_bounds_json(1, &mut text), SkStatus::InvalidContext);
    }
}
