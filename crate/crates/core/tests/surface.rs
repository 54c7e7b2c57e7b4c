mod common;

use approx::assert_abs_diff_eq;
use common::word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectrakit::surface::*;
use spectrakit::{Error, FenchelNielsenSurface, Topology};

#[test]
fn torus_curve_lengths() {
    for t in [-0.8, 0.0, 0.45] {
        let g = build_one_holed_torus(1.7, t, 2.3).unwrap();
        assert_abs_diff_eq!(curve_length(&g, &word("A")).unwrap(), 1.7, epsilon = 1e-12);
        assert_abs_diff_eq!(curve_length(&g, &word("ABab")).unwrap(), 2.3, epsilon = 1e-8);
        for w in ["AB", "AAbAB", "ABBAb"] {
            let w = word(w);
            let l = curve_length(&g, &w).unwrap();
            let rev = spectrakit::Word::from_letters(w.letters().iter().rev().copied());
            assert_abs_diff_eq!(curve_length(&g, &w.inverse()).unwrap(), l, epsilon = 1e-10);
            let rot = spectrakit::Word::from_letters(w.letters()[1..].iter().chain(&w.letters()[..1]).copied());
            assert_abs_diff_eq!(curve_length(&g, &rot).unwrap(), l, epsilon = 1e-10);
            assert!(curve_length(&g, &rev).unwrap() > 0.0);
        }
    }
}

#[test]
fn boundary_length_is_minimal_at_zero_twist_for_fixed_transversal() {
    // B's length along the twist is convex and symmetric about zero.
    let len = |t: f64| curve_length(&build_one_holed_torus(1.1, t, 2.0).unwrap(), &word("B")).unwrap();
    for k in 1..50 {
        let t = f64::from(k) * 0.02;
        assert_abs_diff_eq!(len(t), len(-t), epsilon = 1e-9);
        assert!(len(t) > len(0.0));
    }
}

#[test]
fn genus2_cuffs_and_relator() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let cuffs: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.5..4.0));
        let twists: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let g = build_genus2(&FenchelNielsenSurface::genus2(cuffs, twists).unwrap()).unwrap();
        assert!(g.relator_error() < RELATOR_TOLERANCE);
        assert!(g.generators.iter().all(|m| m.is_hyperbolic()));
        for (w, c) in g.cuff_words().iter().zip(cuffs) {
            assert_abs_diff_eq!(curve_length(&g, w).unwrap(), c, epsilon = 1e-8 * c.max(1.0));
        }
    }
}

#[test]
fn curve_chain_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let cuffs: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.5..4.0));
        let twists: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let fns = FenchelNielsenSurface::genus2(cuffs, twists).unwrap();
        let cc = measure_curve_chains(&build_genus2(&fns).unwrap()).unwrap();
        assert_eq!((cc.curves.len(), cc.arcs.len()), (3, 6));
        let back = cc_reconstruct(&cc).unwrap();
        assert_eq!(back.topology, Topology::ClosedGenus2);
        for i in 0..3 {
            assert_abs_diff_eq!(back.cuff_lengths[i], cuffs[i], epsilon = 1e-6);
            assert_abs_diff_eq!(back.twists[i], twists[i], epsilon = 1e-6);
        }
    }
}

#[test]
fn changing_one_twist_changes_only_that_parameter() {
    let a = FenchelNielsenSurface::genus2([1.4, 2.2, 1.9], [0.3, -0.6, 0.1]).unwrap();
    let mut b = a.clone();
    b.twists[1] = 0.9;
    let ca = measure_curve_chains(&build_genus2(&a).unwrap()).unwrap();
    let cb = measure_curve_chains(&build_genus2(&b).unwrap()).unwrap();
    for i in 0..3 {
        assert_abs_diff_eq!(ca.curve_lengths[i], cb.curve_lengths[i], epsilon = 1e-9);
    }
    assert_abs_diff_eq!(ca.twist_params[0], cb.twist_params[0], epsilon = 1e-8);
    assert_abs_diff_eq!(ca.twist_params[2], cb.twist_params[2], epsilon = 1e-8);
    assert!((ca.twist_params[1] - cb.twist_params[1]).abs() > 1.0);
}

#[test]
fn invalid_coordinates_are_rejected() {
    assert!(matches!(FenchelNielsenSurface::one_holed_torus(0.0, 0.0, 1.0), Err(Error::Domain(_))));
    assert!(FenchelNielsenSurface::one_holed_torus(1.0, f64::NAN, 1.0).is_err());
    assert!(FenchelNielsenSurface::genus2([1.0, -1.0, 1.0], [0.0; 3]).is_err());
    let torus = FenchelNielsenSurface::one_holed_torus(1.0, 0.0, 1.0).unwrap();
    assert!(build_genus2(&torus).is_err());
    let g = build_surface(&torus).unwrap();
    assert!(matches!(curve_length(&g, &spectrakit::Word::empty()), Err(Error::Word(_))));
    assert!(curve_length(&g, &word("ABab").concat(&word("BAba"))).is_err());
}

#[test]
fn genus2_twist_solutions() {
    let base = FenchelNielsenSurface::genus2([1.8, 2.1, 2.4], [0.0; 3]).unwrap();
    for (i, w) in [(0, "B"), (2, "D")] {
        let fam = TwistFamily::new(base.clone(), i).unwrap().with_window_start(-base.cuff_lengths[i] / 2.0);
        let w = word(w);
        let (lo, hi) = fam.window();
        let min = fam.length(&w, 0.0).unwrap();
        let edge = fam.length(&w, lo).unwrap().min(fam.length(&w, hi).unwrap());
        let target = min + 0.5 * (edge - min);
        let sols = twist_solutions(&fam, &w, target).unwrap();
        assert_eq!(sols.len(), 2);
        assert_abs_diff_eq!(sols[0], -sols[1], epsilon = 1e-6);
        for t in &sols {
            assert_abs_diff_eq!(fam.length(&w, *t).unwrap(), target, epsilon = 1e-8);
        }
        assert_eq!(twist_solutions(&fam, &w, min).unwrap().len(), 1);
        assert!(matches!(twist_solutions(&fam, &w, 0.1), Err(Error::NoSolution { .. })));
    }
}

#[test]
fn surface_file_format() {
    let s: FenchelNielsenSurface = serde_json::from_str(
        r#"{"topology": "closed_genus2", "cuff_lengths": [2.0, 2.5, 3.0], "twists": [0.1, 0.0, -0.2]}"#,
    )
    .unwrap();
    assert_eq!(s, FenchelNielsenSurface::genus2([2.0, 2.5, 3.0], [0.1, 0.0, -0.2]).unwrap());
    let t: FenchelNielsenSurface = serde_json::from_str(
        r#"{"topology": "one_holed_torus", "cuff_lengths": [1.0], "twists": [0.2], "boundary_length": 2.0}"#,
    )
    .unwrap();
    assert_eq!(t.genus(), 1);
    assert!(serde_json::from_str::<FenchelNielsenSurface>(r#"{"topology": "sphere", "cuff_lengths": [], "twists": []}"#).is_err());
}
