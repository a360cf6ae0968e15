use rug::{Integer, Rational};

use super::QuadElem;
use crate::error::{Error, Result};

/// The field `ℚ(√D)` together with its unit data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    d: u64,
    eps0: QuadElem,
    eps: QuadElem,
}

impl FieldCtx {
    pub fn new(d: i64) -> Result<Self> {
        validate_discriminant(d)?;
        let (eps0, eps) = fundamental_unit(d)?;
        Ok(FieldCtx { d: d as u64, eps0, eps })
    }

    pub fn disc(&self) -> u64 {
        self.d
    }

    /// Fundamental unit `ε₀ > 1`.
    pub fn eps0(&self) -> &QuadElem {
        &self.eps0
    }

    /// Totally positive fundamental unit `ε > 1`.
    pub fn eps(&self) -> &QuadElem {
        &self.eps
    }

    pub fn elem(&self, a: impl Into<Rational>, b: impl Into<Rational>) -> QuadElem {
        QuadElem::new(self.d, a, b)
    }

    pub fn theta(&self) -> QuadElem {
        QuadElem::theta(self.d)
    }
}

fn squarefree(n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Accepts exactly the positive non-square fundamental discriminants.
pub fn validate_discriminant(d: i64) -> Result<()> {
    let bad = |reason: &str| Err(Error::Discriminant { d, reason: reason.to_string() });
    if d <= 1 {
        return bad("must be a positive non-square integer > 1");
    }
    let u = d as u64;
    let s = (u as f64).sqrt() as u64;
    if (s.saturating_sub(1)..=s + 1).any(|t| t * t == u) {
        return bad("is a perfect square");
    }
    match u % 4 {
        1 => {
            if !squarefree(u) {
                return bad("D ≡ 1 mod 4 must be squarefree");
            }
        }
        0 => {
            let m = u / 4;
            if m % 4 != 2 && m % 4 != 3 {
                return bad("D ≡ 0 mod 4 requires D/4 ≡ 2 or 3 mod 4");
            }
            if !squarefree(m) {
                return bad("D/4 must be squarefree");
            }
        }
        _ => {
            return bad("must be ≡ 0 or 1 mod 4 (for D ≡ 2, 3 mod 4 use 4D)");
        }
    }
    Ok(())
}

/// Returns `(ε₀, ε)`: the fundamental unit and the totally positive
/// fundamental unit, both `> 1`.
///
/// Runs the regular continued fraction of `θ` until it becomes purely
/// periodic; the product of the complete quotients over one period is the
/// fundamental unit.
pub fn fundamental_unit(d: i64) -> Result<(QuadElem, QuadElem)> {
    validate_discriminant(d)?;
    let d = d as u64;
    let mut x = QuadElem::theta(d);
    let is_reduced = |x: &QuadElem| {
        let c = x.conj();
        x > &QuadElem::one(d) && c < QuadElem::zero(d) && c > QuadElem::rational(d, -1)
    };
    while !is_reduced(&x) {
        let a = QuadElem::rational(d, x.floor());
        x = (&x - &a).inv()?;
    }
    let start = x.clone();
    let mut unit = QuadElem::one(d);
    loop {
        let a = QuadElem::rational(d, x.floor());
        x = (&x - &a).inv()?;
        unit = &unit * &x;
        if x == start {
            break;
        }
    }
    let n = unit.norm();
    if n != 1 && n != -1 {
        return Err(crate::error::internal(format!("period product {unit} is not a unit")));
    }
    let eps = if n == 1 { unit.clone() } else { &unit * &unit };
    Ok((unit, eps))
}

/// Brute-force fundamental unit: the smallest `(A + B√D)/2 > 1` with norm ±1.
pub fn fundamental_unit_search(d: u64, max_b: u64) -> Option<QuadElem> {
    let dd = Integer::from(d);
    for b in 1..=max_b {
        let b2d = Integer::from(b * b) * &dd;
        for target in [b2d.clone() - 4u32, b2d + 4u32] {
            if target < 0 {
                continue;
            }
            let a = target.clone().sqrt();
            if Integer::from(&a * &a) == target {
                let u = QuadElem::from_parts(d, a, b, 2);
                if u.is_integral() {
                    return Some(u);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn discriminant_validation() {
        for d in [5, 8, 12, 13, 24, 40, 28, 17, 21] {
            assert!(validate_discriminant(d).is_ok(), "{d}");
        }
        for d in [7, 4, 9, 20, 45, 16, 1, 0, -3, 3] {
            assert!(validate_discriminant(d).is_err(), "{d}");
        }
    }

    #[test]
    fn units_of_small_fields() {
        let (e0, e) = fundamental_unit(5).unwrap();
        assert_eq!(e0, QuadElem::new(5, q(1, 2), q(1, 2)));
        assert_eq!(e, QuadElem::new(5, q(3, 2), q(1, 2)));
        let (e0, e) = fundamental_unit(8).unwrap();
        assert_eq!(e0, QuadElem::new(8, 1, q(1, 2)));
        assert_eq!(e, QuadElem::new(8, 3, 1));
        let (e0, e) = fundamental_unit(12).unwrap();
        assert_eq!(e0, QuadElem::new(12, 2, q(1, 2)));
        assert_eq!(e, e0);
    }

    #[test]
    fn continued_fraction_agrees_with_search() {
        for d in [5u64, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 56, 57, 60, 61] {
            let (e0, _) = fundamental_unit(d as i64).unwrap();
            let s = fundamental_unit_search(d, 2000).unwrap();
            assert_eq!(e0, s, "D = {d}");
        }
    }
}
