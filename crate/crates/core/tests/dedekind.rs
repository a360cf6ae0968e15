use rug::Float;

use shintani_core::classdata::{build_datum, enumerate_ray_classes};
use shintani_core::limits::{partial_zeta_direct, partial_zeta_via_forms};
use shintani_core::qfield::{FieldCtx, Modulus};
use shintani_core::specfun::{hurwitz_zeta, Precision};

// L(2, χ_12) = 12⁻² Σ_{a mod 12} χ(a) ζ(2, a/12).
fn l2_chi12() -> f64 {
    let p = Precision::DEFAULT;
    let two = Float::with_val(96, 2);
    let mut total = 0.0;
    for (a, sign) in [(1, 1.0), (5, -1.0), (7, -1.0), (11, 1.0)] {
        let x = Float::with_val(96, a) / 12u32;
        total += sign * hurwitz_zeta(&two, &x, p).unwrap().to_f64();
    }
    total / 144.0
}

#[test]
fn classes_sum_to_the_dedekind_zeta() {
    let k = FieldCtx::new(12).unwrap();
    let f = Modulus::trivial(&k);
    let reps = enumerate_ray_classes(&f, &k, 20).unwrap();
    assert_eq!(reps.len(), 2, "narrow class number of Q(√3)");
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let want = zeta2 * l2_chi12();
    let mut direct = 0.0;
    let mut forms = 0.0;
    for a in &reps {
        direct += partial_zeta_direct(a, &f, &k, 2.0, 1_000_000).unwrap().value;
        forms += partial_zeta_via_forms(&build_datum(a, &f, &k).unwrap(), 2.0).unwrap();
    }
    assert!((direct - want).abs() < 1e-8, "{direct} vs {want}");
    assert!((forms - want).abs() < 1e-8, "{forms} vs {want}");
}

#[test]
fn l_value_matches_a_frozen_reference() {
    // Hurwitz-zeta combination evaluated with mpmath at 30 digits.
    assert!((l2_chi12() - 0.949_703_126_294_009_4).abs() < 1e-12);
}
