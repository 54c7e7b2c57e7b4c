use spectrakit::interrogate::*;
use spectrakit::spectrum::enumerate_spectrum;
use spectrakit::surface::build_surface;
use spectrakit::{EnumerationBudget, Error, FenchelNielsenSurface, LengthSpectrum, SpectrumEntry};

fn spectrum(s: &FenchelNielsenSurface, cutoff: f64) -> LengthSpectrum {
    enumerate_spectrum(&build_surface(s).unwrap(), &EnumerationBudget::new(cutoff)).unwrap()
}

fn handmade(entries: &[(f64, u64)], cutoff: f64) -> LengthSpectrum {
    LengthSpectrum {
        cutoff,
        merge_tolerance: 1e-8,
        certified: true,
        entries: entries
            .iter()
            .map(|&(length, multiplicity)| SpectrumEntry { length, multiplicity })
            .collect(),
    }
}

/// Four twists of one cuff set plus the mirror image of the first.
fn family() -> CandidateFamily {
    let cuffs = [1.3, 1.45, 1.2];
    let twists = [[0.2, -0.3, 0.1], [0.4, 0.1, -0.2], [-0.1, 0.25, 0.3], [0.0, 0.0, 0.45]];
    let mut surfaces: Vec<FenchelNielsenSurface> =
        twists.iter().map(|&t| FenchelNielsenSurface::genus2(cuffs, t).unwrap()).collect();
    surfaces.push(surfaces[0].mirrored());
    CandidateFamily::new(
        surfaces
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("c{i}"), spectrum(s, 4.5)))
            .collect(),
    )
    .unwrap()
}

#[test]
fn exclusions_form_a_multiset() {
    let s = handmade(&[(1.0, 2), (1.5, 1), (2.0, 3)], 3.0);
    let mut o = SpectrumOracle::new(s).unwrap();
    let ask = |o: &mut SpectrumOracle, ex: &[f64]| o.ask(&AdmissibleQuestion::new(ex.to_vec()).unwrap());
    assert_eq!(ask(&mut o, &[]).unwrap(), 1.0);
    assert_eq!(ask(&mut o, &[1.0]).unwrap(), 1.0);
    assert_eq!(ask(&mut o, &[1.0, 1.0]).unwrap(), 1.5);
    assert_eq!(ask(&mut o, &[1.0, 1.0, 1.0]).unwrap(), 1.5);
    assert_eq!(ask(&mut o, &[1.5]).unwrap(), 1.0);
    assert_eq!(ask(&mut o, &[1.0, 1.0, 1.5, 2.0, 2.0]).unwrap(), 2.0);
    // Values matching nothing exclude nothing.
    assert_eq!(ask(&mut o, &[1.2, 0.7]).unwrap(), 1.0);
    assert_eq!(o.questions_asked(), 7);
    assert!(matches!(
        ask(&mut o, &[1.0, 1.0, 1.5, 2.0, 2.0, 2.0]),
        Err(Error::CutoffExceeded { .. })
    ));
    assert_eq!(o.questions_asked(), 7);
}

#[test]
fn sweep_reveals_the_spectrum_in_order() {
    let s = handmade(&[(1.0, 2), (1.5, 1), (2.0, 3)], 3.0);
    let mut o = SpectrumOracle::new(s).unwrap();
    assert_eq!(initial_sweep(&mut o, 5).unwrap(), vec![1.0, 1.0, 1.5, 2.0, 2.0]);
    assert_eq!(o.questions_asked(), 5);
}

#[test]
fn questions_reject_bad_values() {
    assert!(matches!(AdmissibleQuestion::new(vec![1.0, -2.0]), Err(Error::Domain(_))));
    assert!(AdmissibleQuestion::new(vec![f64::INFINITY]).is_err());
    assert!(AdmissibleQuestion::new(vec![0.0]).is_err());
    assert!(AdmissibleQuestion::new(Vec::new()).is_ok());
}

#[test]
fn oracle_needs_a_certified_spectrum() {
    let mut s = handmade(&[(1.0, 1)], 2.0);
    s.certified = false;
    assert!(matches!(SpectrumOracle::new(s), Err(Error::Uncertified)));
    let s = handmade(&[(1.0, 1)], 2.0);
    assert!(SpectrumOracle::with_tolerance(s, 0.0).is_err());
}

#[test]
fn family_validation() {
    assert!(matches!(CandidateFamily::new(Vec::new()), Err(Error::Domain(_))));
    let a = handmade(&[(1.0, 1)], 2.0);
    let dup = vec![("x".to_string(), a.clone()), ("x".to_string(), a.clone())];
    assert!(matches!(CandidateFamily::new(dup), Err(Error::Domain(_))));
    let mixed = vec![("x".to_string(), a.clone()), ("y".to_string(), handmade(&[(1.0, 1)], 3.0))];
    assert!(matches!(CandidateFamily::new(mixed), Err(Error::IncomparableCutoffs { .. })));
    let mut u = a.clone();
    u.certified = false;
    assert!(matches!(
        CandidateFamily::new(vec![("x".to_string(), a), ("y".to_string(), u)]),
        Err(Error::Uncertified)
    ));
}

#[test]
fn pair_elimination_on_handmade_spectra() {
    let x = handmade(&[(1.0, 2), (1.5, 1)], 3.0);
    let y = handmade(&[(1.0, 1), (1.2, 1), (1.5, 1)], 3.0);
    let mut o = SpectrumOracle::new(y.clone()).unwrap();
    let out = eliminate_pair(&mut o, &x, &y).unwrap();
    assert_eq!(out.discrepancy, 2);
    assert_eq!(out.exclusions_count, 1);
    assert_eq!(out.answer, 1.2);
    assert!(out.first_ruled_out && !out.second_ruled_out);
    assert_eq!(o.questions_asked(), 1);
}

#[test]
fn every_member_is_identified() {
    let fam = family();
    let groups = fam.groups(1e-8).unwrap();
    assert_eq!(groups.len(), 4, "{groups:?}");
    assert!(groups.contains(&vec![0, 4]));
    for truth in 0..fam.members.len() {
        for seed in 0..3 {
            let mut o = SpectrumOracle::new(fam.members[truth].1.clone()).unwrap();
            let t = identify(&mut o, &fam, 2, seed).unwrap();
            let label = &fam.members[truth].0;
            assert!(t.winners.contains(label), "{label}: {:?}", t.winners);
            if truth == 0 || truth == 4 {
                assert_eq!(t.winners, vec!["c0".to_string(), "c4".to_string()]);
            }
            assert_eq!(t.distinct_spectra, 4);
            assert!(t.total_questions <= 2 + 3);
            assert_eq!(t.total_questions as usize, t.questions.len());
            assert_eq!(t.total_questions, o.questions_asked());
            assert!(!t.sweep_ruled_out.contains(label));
            assert!(t.eliminations.iter().all(|e| !e.ruled_out.contains(label)));
        }
    }
}

#[test]
fn identification_is_reproducible() {
    let fam = family();
    let run = || {
        let mut o = SpectrumOracle::new(fam.members[2].1.clone()).unwrap();
        identify(&mut o, &fam, 2, 11).unwrap()
    };
    assert_eq!(run(), run());
}
