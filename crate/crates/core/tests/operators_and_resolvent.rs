mod support;

use proptest::prelude::*;
use pseudolab::numkernel::ComplexMatrix;
use pseudolab::operators::{
    block_eigenvalues, build_named_example, named_example, scale_operator, ExampleParams, OperatorModel, EXAMPLE_NAMES,
};
use pseudolab::resolvent::{
    block2_value, dense_power_norm, dense_resolvent_norm, resolvent_norm, resolvent_power_norm, TailMethod,
};
use pseudolab::Complex64;
use support::oracle_singular_values;

fn z() -> impl Strategy<Value = Complex64> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn inverse_norm_oracle(m: &ComplexMatrix, z: Complex64) -> f64 {
    1.0 / oracle_singular_values(&m.shifted(z))[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn block_value_matches_oracle(a in 0.1f64..20.0, f in 0.05f64..5.0, z in z()) {
        let b = ComplexMatrix::from_real_rows(&[&[0.0, f], &[a, 0.0]]);
        let want = inverse_norm_oracle(&b, z);
        prop_assume!(want < 1e8);
        prop_assert!((block2_value(a, f, z, 0) - want).abs() <= 1e-9 * want);
    }

    #[test]
    fn block_family_dominates_truncations(z in z(), n in 1usize..40) {
        // sup over all blocks >= sup over the first n
        for name in ["shargorodsky", "nonconstant", "decay"] {
            let ex = named_example(name).unwrap();
            let full = resolvent_norm(&ex.model, z).value;
            let t = dense_resolvent_norm(&ex.family().unwrap().truncation(n).unwrap(), z);
            prop_assert!(full >= t * (1.0 - 1e-9), "{name}: {full} < {t}");
        }
    }

    #[test]
    fn scaling_identity(z in z(), s in 0.2f64..3.0) {
        let base = named_example("shargorodsky").unwrap().model;
        let scaled = scale_operator(base.clone(), Complex64::new(s, 0.0)).unwrap();
        let lhs = resolvent_norm(&scaled, z).value;
        let rhs = resolvent_norm(&base, z / s).value / s;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn normal_matrices_collapse_powers(d in prop::collection::vec(z(), 1..6), w in z(), n in 1u32..4) {
        let m = ComplexMatrix::from_diag(&d);
        let plain = dense_resolvent_norm(&m, w);
        prop_assume!(plain < 1e6);
        prop_assert!((dense_power_norm(&m, w, n) - plain).abs() <= 1e-10 * plain);
    }
}

#[test]
fn every_example_round_trips_through_json() {
    for name in EXAMPLE_NAMES {
        let ex = named_example(name).unwrap();
        let text = serde_json::to_string(&ex.model).unwrap();
        let back: OperatorModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ex.model, "{name}");
        assert!(back.validate().is_ok());
    }
    assert!(ExampleParams::from_json(r#"{"name":"decay","beta":0.5,"gamma":1}"#).is_err());
    let p = ExampleParams::from_json(r#"{"name":"decay","beta":1.5}"#).unwrap();
    assert!(build_named_example(&p).is_err());
}

#[test]
fn block_eigenvalues_are_roots_of_the_block() {
    for name in ["shargorodsky", "remark_n1"] {
        let fam = named_example(name).unwrap().family().unwrap().clone();
        for k in [1, 2, 7, 50] {
            for mu in block_eigenvalues(&fam, k) {
                let s = oracle_singular_values(&fam.block(k).shifted(mu))[0];
                assert!(s < 1e-8 * (1.0 + mu.norm()), "{name} k={k} mu={mu} sigma_min={s}");
            }
        }
    }
}

#[test]
fn spectrum_points_are_infinite() {
    let fam = named_example("shargorodsky").unwrap().family().unwrap().clone();
    // sqrt(a f) is irrational here, so the rounded eigenvalue gives a huge finite value
    let mu = block_eigenvalues(&fam, 3)[1];
    assert!(resolvent_norm(&named_example("shargorodsky").unwrap().model, mu).value > 1e12);
    let exact = block_eigenvalues(&fam, 2)[1];
    assert_eq!(exact, Complex64::new(2.0, 0.0));
    assert_eq!(resolvent_norm(&named_example("shargorodsky").unwrap().model, exact).value, f64::INFINITY);
    let pair = named_example("diag_pair").unwrap().model;
    assert_eq!(resolvent_norm(&pair, Complex64::new(6.0, 0.0)).value, f64::INFINITY);
}

#[test]
fn empty_resolvent_family_is_infinite_everywhere() {
    let t = named_example("empty_resolvent").unwrap().model;
    let v = resolvent_norm(&t, Complex64::new(0.3, 2.0));
    assert_eq!(v.value, f64::INFINITY);
    assert_eq!(v.tail.unwrap().method, TailMethod::WeylDivergence);
}

#[test]
fn quadratic_family_squared_resolvent_lower_bound() {
    let t = named_example("remark_n1").unwrap().model;
    for z in [Complex64::new(0.0, 0.0), Complex64::new(0.3, -0.2), Complex64::new(-0.9, 0.9)] {
        let v = resolvent_power_norm(&t, z, 1);
        assert!(v.value >= 1.0 - 1e-9, "{z}: {}", v.value);
    }
}
