//! Values of partial zeta functions of a narrow ray class: the exact
//! `ζ(0, 𝔠)`, the Laurent data at `s = 1`, and the invariants `X, X₁, X₂`
//! built from double sines. Each has a brute-force counterpart.

mod laurent;
mod shintani;

pub use laurent::{
    partial_zeta_direct, partial_zeta_via_forms, rho, rho_oracle, zq_direct, zq_direct_diagonal, zq_laurent, zq_laurent_oracle,
    PartialZeta, QuadFormData,
};
pub use shintani::{character_sum_logx, check_star_theorem, shintani_x, shintani_x_bridge, Which};

use rug::{Float, Rational};

use crate::classdata::DecompositionDatum;
use crate::qfield::{frac_angle, frac_brace};
use crate::specfun::{bernoulli_poly1, bernoulli_poly2};

/// Coefficients of `(s − 1)⁻¹` and `(s − 1)⁰`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPair {
    pub pole_coeff: Float,
    pub const_term: Float,
}

/// `X = X₁X₂` together with its two factors.
#[derive(Clone, Debug, PartialEq)]
pub struct ShintaniInvariants {
    pub x: Float,
    pub x1: Float,
    pub x2: Float,
}

fn zeta0_terms<'a>(d: &'a DecompositionDatum, xy: impl Iterator<Item = (Rational, Rational)> + 'a) -> Rational {
    let mut total = Rational::new();
    for (k, (x, y)) in xy.enumerate() {
        total += bernoulli_poly1(&x) * bernoulli_poly1(&y);
        total += bernoulli_poly2(&x) * Rational::from((d.b(k as i64), 2));
    }
    total
}

/// `ζ(0, 𝔠) = Σ_k [B₁(x_k)B₁(y_k) + (b_k/2)B₂(x_k)]`, exactly.
pub fn zeta0(d: &DecompositionDatum) -> Rational {
    zeta0_terms(d, d.xy.iter().cloned())
}

/// `ζ(0, 𝔠̄)` from the coordinates `(⟨−x_k⟩, {−y_k})`.
pub fn zeta0_bar(d: &DecompositionDatum) -> Rational {
    let bar = d
        .xy
        .iter()
        .map(|(x, y)| (frac_angle(&Rational::from(-x)), frac_brace(&Rational::from(-y))));
    zeta0_terms(d, bar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classdata::{build_datum, datum_bar, datum_star};
    use crate::qfield::{modulus_data, FieldCtx, Modulus, QuadIdeal};

    #[test]
    fn zeta0_examples() {
        let k5 = FieldCtx::new(5).unwrap();
        let f = modulus_data(&QuadIdeal::principal(&k5.elem(4, -1)).unwrap(), &k5).unwrap();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k5).unwrap();
        assert_eq!(zeta0(&d), 0);
        assert_eq!(zeta0_bar(&d), 0);
        let k12 = FieldCtx::new(12).unwrap();
        let d = build_datum(&QuadIdeal::unit(12), &Modulus::trivial(&k12), &k12).unwrap();
        assert_eq!(zeta0(&d), Rational::from((1, 12)));
        assert_eq!(zeta0(&d), zeta0_bar(&d));
        let s = datum_star(&d).unwrap();
        assert_eq!(zeta0(&s.datum), Rational::from((-1, 12)));
        let d5 = build_datum(&QuadIdeal::unit(5), &Modulus::trivial(&k5), &k5).unwrap();
        assert_eq!(zeta0(&d5), 0);
    }

    #[test]
    fn bar_route_agrees_with_bar_datum() {
        let k5 = FieldCtx::new(5).unwrap();
        let f = modulus_data(&QuadIdeal::principal(&k5.elem(4, -1)).unwrap(), &k5).unwrap();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k5).unwrap();
        assert_eq!(zeta0(&datum_bar(&d).unwrap()), zeta0_bar(&d));
    }
}
