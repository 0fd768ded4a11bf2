use proptest::prelude::*;
use theta_zeros::analysis::{equidistribution, height_law, valence_check, HeightLawReport};
use theta_zeros::numeric::{theta_gamma_eval, ComplexPoint, GammaMethod};
use theta_zeros::series::{theta_gamma_series, ExactSeries};
use theta_zeros::verify::{run_verify, Fault, VerifyConfig, VerifySummary, CHECKS};
use theta_zeros::zeros::{classify_roots, theta_zeros, RootInventory, ZeroRecord};
use theta_zeros::ell;

#[test]
fn zeros_vanish_under_every_evaluation_route() {
    for k in [3u32, 7, 20] {
        for z in theta_zeros(k, 1e-13).unwrap() {
            let tau = ComplexPoint { re: 0.5, im: z.y };
            let scale = theta_gamma_eval(k, ComplexPoint { re: 0.0, im: z.y }, 1e-14, GammaMethod::ThetaPow)
                .unwrap()
                .value
                .norm();
            for m in GammaMethod::ALL {
                let v = theta_gamma_eval(k, tau, 1e-14, m).unwrap();
                assert!(v.value.norm() <= 1e-8 * scale, "k={k} m={} {m:?}: {}", z.m, v.value.norm());
            }
        }
    }
}

#[test]
fn zero_lambda_values_are_shifted_arc_roots() {
    let k = 40;
    let zeros = theta_zeros(k, 1e-13).unwrap();
    let inv = classify_roots(k, 1e-14).unwrap();
    for z in &zeros {
        let (re, im) = (1.0 + z.phi.cos(), z.phi.sin());
        let d = inv.shifted_arc.iter().map(|w| (w.re - re).hypot(w.im - im)).fold(f64::INFINITY, f64::min);
        assert!(d <= 1e-10, "m={}: {d:.2e}", z.m);
    }
}

#[test]
fn records_round_trip_through_json() {
    let z: Vec<ZeroRecord> = theta_zeros(33, 1e-12).unwrap();
    let back: Vec<ZeroRecord> = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
    assert_eq!(z, back);

    let inv = classify_roots(17, 1e-14).unwrap();
    let back: RootInventory = serde_json::from_str(&serde_json::to_string(&inv).unwrap()).unwrap();
    assert_eq!(inv, back);

    let h = height_law(200, 5).unwrap();
    let back: HeightLawReport = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
    assert_eq!(h, back);

    let s = theta_gamma_series(3, 10).unwrap();
    assert_eq!(ExactSeries::from_json(&s.to_json()).unwrap(), s);

    let e = equidistribution(90, 6).unwrap();
    assert_eq!(serde_json::from_str::<theta_zeros::analysis::EquidistReport>(&serde_json::to_string(&e).unwrap()).unwrap(), e);
}

#[test]
fn verify_summary_reports_each_check_once() {
    let s = run_verify(&VerifyConfig { quick: true, inject_fault: Some(Fault::Theta3Coefficient) });
    assert_eq!(s.checks.len(), CHECKS.len());
    assert!(!s.passed);
    assert_eq!(s.failed, vec!["jacobi_identity".to_string()]);
    let back: VerifySummary = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back.failed, s.failed);
}

#[test]
fn default_verify_passes() {
    let s = run_verify(&VerifyConfig::default());
    assert!(s.passed, "{:?}", s.failed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn census_count_and_valence(k in 1u32..400) {
        let z = theta_zeros(k, 1e-12).unwrap();
        prop_assert_eq!(z.len(), ell(k) as usize);
        prop_assert!(valence_check(k).unwrap().passed);
        let inv = classify_roots(k, 1e-14).unwrap();
        prop_assert_eq!(inv.total_count(), 2 * k as usize);
    }
}
