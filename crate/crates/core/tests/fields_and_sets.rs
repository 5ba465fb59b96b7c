mod support;

use proptest::prelude::*;
use pseudolab::experiments::{convergence_study, mask_distance, StudyReport};
use pseudolab::operators::{named_example, OperatorModel};
use pseudolab::pseudospectra::{
    closure_of_open, compute_norm_field, level_set, read_mask_csv, write_mask_csv, GridRegion, Strictness,
};
use pseudolab::setgeom::{delta_neighborhood, directed_hausdorff, hausdorff_distance, MaskSet, BRUTE_FORCE_LIMIT};
use pseudolab::Complex64;
use rand::Rng;
use support::{oracle_directed, oracle_hausdorff, rng};

fn points(max: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b)| Complex64::new(a, b)), 1..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_matches_oracle(a in points(80), b in points(80)) {
        let (sa, sb) = (MaskSet::from_points(a.clone()), MaskSet::from_points(b.clone()));
        prop_assert_eq!(directed_hausdorff(&sa, &sb).unwrap(), oracle_directed(&a, &b));
        prop_assert_eq!(hausdorff_distance(&sa, &sb).unwrap(), oracle_hausdorff(&a, &b));
    }

    #[test]
    fn level_sets_nest(eps in 0.1f64..2.0, extra in 0.01f64..1.0) {
        let region = GridRegion::new(-1.0, 1.0, -1.0, 1.0, 15, 15).unwrap();
        let field = compute_norm_field(&named_example("nonconstant").unwrap().model, &region, 0);
        let small_open = level_set(&field, eps, Strictness::OpenSigma).unwrap();
        let small_closed = level_set(&field, eps, Strictness::ClosedSigma).unwrap();
        let big = level_set(&field, eps + extra, Strictness::OpenSigma).unwrap();
        prop_assert!(small_open.is_subset_of(&small_closed));
        prop_assert!(small_closed.is_subset_of(&big));
        prop_assert!(closure_of_open(&field, eps).unwrap().is_subset_of(&small_closed));
    }
}

#[test]
fn bucketed_path_matches_oracle_above_limit() {
    let mut g = rng(3);
    let n = BRUTE_FORCE_LIMIT + 1500;
    let a: Vec<Complex64> = (0..n).map(|_| Complex64::new(g.gen_range(-5.0..5.0), g.gen_range(-3.0..3.0))).collect();
    let b: Vec<Complex64> = (0..400).map(|_| Complex64::new(g.gen_range(-4.0..6.0), g.gen_range(-3.0..4.0))).collect();
    let d = hausdorff_distance(&MaskSet::from_points(a.clone()), &MaskSet::from_points(b.clone())).unwrap();
    assert_eq!(d, oracle_hausdorff(&a, &b));
}

#[test]
fn neighbourhood_matches_brute_force() {
    let region = GridRegion::new(-2.0, 2.0, -1.0, 1.0, 41, 21).unwrap();
    let mut g = rng(4);
    let flags: Vec<bool> = (0..region.len()).map(|_| g.gen_bool(0.02)).collect();
    let a = MaskSet::from_flags(&region, &flags);
    let nb = delta_neighborhood(&a, 0.27).unwrap();
    let want: Vec<Complex64> = region
        .points()
        .filter(|z| a.points.iter().any(|p| (p - z).norm_sqr() <= 0.27 * 0.27))
        .collect();
    assert_eq!(nb.points, want);
}

#[test]
fn mask_csv_round_trip_keeps_distance() {
    let region = GridRegion::new(0.0, 8.0, -2.0, 2.0, 41, 21).unwrap();
    let model = named_example("diag_pair").unwrap().model;
    let mask = level_set(&compute_norm_field(&model, &region, 0), 1.0, Strictness::ClosedSigma).unwrap();
    let mut buf = Vec::new();
    write_mask_csv(&mask, &mut buf).unwrap();
    let back = MaskSet::from_points(read_mask_csv(buf.as_slice()).unwrap());
    let other = MaskSet::from_points(vec![Complex64::new(4.0, 0.0)]);
    let orig = MaskSet::from_mask(&mask);
    assert_eq!(hausdorff_distance(&back, &other).unwrap(), hausdorff_distance(&orig, &other).unwrap());
}

#[test]
fn empty_masks_have_conventional_distances() {
    let e = MaskSet::from_points(vec![]);
    let one = MaskSet::from_points(vec![Complex64::new(0.0, 0.0)]);
    assert_eq!(mask_distance(&e, &e).unwrap(), 0.0);
    assert_eq!(mask_distance(&e, &one).unwrap(), f64::INFINITY);
}

#[test]
fn tangent_window_fails_its_precondition() {
    let ex = named_example("diag_pair").unwrap();
    let k = GridRegion::with_spacing(3.0, 8.0, -2.0, 2.0, 0.05).unwrap();
    let rep = convergence_study(&ex.sequence, 1.0, &k, &[2, 4, 8], 0).unwrap();
    assert!(!rep.verdict.is_pass());
    assert!(rep.series.is_empty());
    assert!(rep.notes.iter().any(|n| n.contains("assumption i")), "{:?}", rep.notes);
}

#[test]
fn reports_are_reproducible() {
    let ex = named_example("diag_pair").unwrap();
    let k = GridRegion::with_spacing(0.5, 8.0, -2.0, 2.0, 0.1).unwrap();
    let run = || convergence_study(&ex.sequence, 1.0, &k, &[2, 4, 8, 16], 0).unwrap().to_json();
    let first = run();
    assert_eq!(first, run());
    let parsed: StudyReport = serde_json::from_str(&first).unwrap();
    assert_eq!(parsed.study, "convergence");
    assert!(matches!(ex.model, OperatorModel::Dense { .. }));
}
