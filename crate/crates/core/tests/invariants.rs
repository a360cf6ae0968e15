use proptest::prelude::*;
use rug::{Float, Rational};

use shintani_core::classdata::{build_datum, datum_bar, datum_star};
use shintani_core::limits::{shintani_x, zeta0, zeta0_bar};
use shintani_core::qfield::{frac_angle, frac_brace, modulus_data, FieldCtx, Modulus, QuadElem, QuadIdeal};
use shintani_core::specfun::{double_sine, Precision};

const DISCS: [i64; 12] = [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 41];

fn elem(d: u64, a: i64, b: i64, den: i64) -> QuadElem {
    QuadElem::from_parts(d, a, b, den)
}

// A modulus generated by a + bθ, where θ generates the ring of integers.
fn modulus(k: &FieldCtx, a: i64, b: i64) -> Option<Modulus> {
    let g = &k.elem(a, 0) + &k.theta().scale(&Rational::from(b));
    if g.is_zero() {
        return None;
    }
    modulus_data(&QuadIdeal::principal(&g).ok()?, k).ok()
}

fn sorted(mut v: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative(i in 0..DISCS.len(), a in -50i64..50, b in -50i64..50, c in -50i64..50,
                              e in -50i64..50, p in 1i64..9, q in 1i64..9) {
        let d = DISCS[i] as u64;
        let x = elem(d, a, b, p);
        let y = elem(d, c, e, q);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn ideal_form_is_canonical(i in 0..DISCS.len(), a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20) {
        let d = DISCS[i] as u64;
        let k = FieldCtx::new(DISCS[i]).unwrap();
        let t = k.theta();
        let x = &k.elem(a, 0) + &t.scale(&Rational::from(b));
        let y = &k.elem(c, 0) + &t.scale(&Rational::from(e));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let ox = QuadIdeal::principal(&x).unwrap();
        let oy = QuadIdeal::principal(&y).unwrap();
        let s1 = ox.add(&oy);
        let s2 = oy.add(&ox);
        prop_assert_eq!(&s1, &s2);
        let g = [x.clone(), &x * &t, y.clone(), &y * &t];
        let g2 = [&y * &t, &x + &y, x.clone(), &x * &t];
        prop_assert_eq!(QuadIdeal::from_generators(d, &g).unwrap(), QuadIdeal::from_generators(d, &g2).unwrap());
        prop_assert_eq!(ox.mul(&oy), QuadIdeal::principal(&(&x * &y)).unwrap());
    }

    #[test]
    fn bracket_periodicity(n in -1000i64..1000, den in 1i64..60, shift in -20i64..20) {
        let x = Rational::from((n, den));
        let xs = Rational::from(&x + shift);
        let a = frac_angle(&x);
        let b = frac_brace(&x);
        prop_assert!(a > 0 && a <= 1);
        prop_assert!((0..1).contains(&b));
        prop_assert_eq!(&a, &frac_angle(&xs));
        prop_assert_eq!(&b, &frac_brace(&xs));
        prop_assert!(Rational::from(&x - &a).denom() == &1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bar_is_an_involution_and_zeta0_relations_hold(i in 0..DISCS.len(), a in 1i64..12, b in -3i64..4) {
        let k = FieldCtx::new(DISCS[i]).unwrap();
        let Some(f) = modulus(&k, a, b) else { return Ok(()) };
        let d = build_datum(&QuadIdeal::unit(k.disc()), &f, &k).unwrap();
        let bar = datum_bar(&d).unwrap();
        let back = datum_bar(&bar).unwrap();
        prop_assert_eq!(sorted(back.xy.clone()), sorted(d.xy.clone()));
        let z = zeta0(&d);
        prop_assert_eq!(&z, &zeta0_bar(&d));
        prop_assert_eq!(&z, &zeta0(&bar));
        let star = datum_star(&d).unwrap();
        prop_assert_eq!(Rational::from(&z + &zeta0(&star.datum)), 0);
    }

    #[test]
    fn double_sine_reflection(w in 0.2f64..5.0, t in 0.02f64..0.98) {
        let p = Precision::DEFAULT;
        let z = t * (1.0 + w);
        let wf = Float::with_val(96, w);
        let a = double_sine(&wf, &Float::with_val(96, z), p).unwrap();
        let b = double_sine(&wf, &Float::with_val(96, 1.0 + w - z), p).unwrap();
        prop_assert!((a.to_f64() * b.to_f64() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn invariants_do_not_depend_on_the_offset() {
    let k = FieldCtx::new(5).unwrap();
    let f = modulus_data(&QuadIdeal::principal(&k.elem(4, -1)).unwrap(), &k).unwrap();
    let d = build_datum(&QuadIdeal::unit(5), &f, &k).unwrap();
    let p = Precision::DEFAULT;
    let base = shintani_x(&d, p).unwrap();
    for o in 1..d.len() {
        let s = d.shifted(o).unwrap();
        assert_eq!(zeta0(&s), zeta0(&d));
        let inv = shintani_x(&s, p).unwrap();
        assert!((inv.x.to_f64() - base.x.to_f64()).abs() < 1e-10, "offset {o}");
        assert!((inv.x1.to_f64() - base.x1.to_f64()).abs() < 1e-10, "offset {o}");
        assert!((inv.x.to_f64() - inv.x1.to_f64() * inv.x2.to_f64()).abs() < 1e-10);
    }
}
