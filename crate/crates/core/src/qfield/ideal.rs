use std::fmt;

use rug::ops::RemRounding;
use rug::{Integer, Rational};

use super::QuadElem;
use crate::error::{domain, Result};

/// A rank-2 ℤ-lattice in `ℚ(√D)`, usually a fractional ideal of the maximal
/// order.
///
/// Stored canonically: with `den` the least common denominator of all
/// coordinates in the `(1, √D)` basis, the lattice `den·L` has Hermite basis
/// `(g + h√D, r√D)` where `g, r > 0` and `0 ≤ h < r`. Two lattices are equal
/// iff these fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    d: u64,
    den: Integer,
    g: Integer,
    h: Integer,
    r: Integer,
}

/// Row-style Hermite form of integer vectors in ℤ². `None` if rank < 2.
fn hnf2(rows: &[(Integer, Integer)]) -> Option<(Integer, Integer, Integer)> {
    let mut p0 = Integer::new();
    let mut p1 = Integer::new();
    let mut r = Integer::new();
    for (x, y) in rows {
        if *x == 0 {
            r.gcd_mut(y);
            continue;
        }
        let (g, s, t) = p0.clone().gcd_cofactors(x.clone(), Integer::new());
        // Leftover row (x/g)·P − (p0/g)·R has a zero first coordinate.
        let xg = Integer::from(x / &g);
        let pg = Integer::from(&p0 / &g);
        let left = Integer::from(&xg * &p1) - Integer::from(&pg * y);
        r.gcd_mut(&left);
        let n1 = Integer::from(&s * &p1) + Integer::from(&t * y);
        p0 = g;
        p1 = n1;
    }
    if p0 == 0 || r == 0 {
        return None;
    }
    let h = p1.rem_euc(&r);
    Some((p0, h, r))
}

impl QuadIdeal {
    /// The ℤ-span of `gens`. Fails unless the span has rank 2.
    pub fn from_generators(d: u64, gens: &[QuadElem]) -> Result<Self> {
        let mut den = Integer::from(1);
        for x in gens {
            assert_eq!(x.disc(), d, "generator from a different field");
            den.lcm_mut(x.a().denom());
            den.lcm_mut(x.b().denom());
        }
        let rows: Vec<(Integer, Integer)> = gens
            .iter()
            .map(|x| {
                let a = Rational::from(x.a() * &den);
                let b = Rational::from(x.b() * &den);
                (a.numer().clone(), b.numer().clone())
            })
            .collect();
        let (g, h, r) = hnf2(&rows).ok_or_else(|| domain("QuadIdeal", "generators do not span a rank-2 lattice"))?;
        // Clear any common factor so the stored denominator is minimal.
        let c = Integer::from(g.gcd_ref(&h)).gcd(&r).gcd(&den);
        let (den, g, h, r) = if c == 1 {
            (den, g, h, r)
        } else {
            (den / &c, g / &c, h / &c, r / &c)
        };
        Ok(QuadIdeal { d, den, g, h, r })
    }

    pub fn from_basis(alpha: &QuadElem, beta: &QuadElem) -> Result<Self> {
        Self::from_generators(alpha.disc(), &[alpha.clone(), beta.clone()])
    }

    /// Lattice from a coordinate matrix: rows `(m[i][0] + m[i][1]√D)/den`.
    pub fn from_matrix(d: u64, den: &Integer, m: &[[Integer; 2]]) -> Result<Self> {
        if *den <= 0 {
            return Err(domain("QuadIdeal", "denominator must be positive"));
        }
        let gens: Vec<QuadElem> = m
            .iter()
            .map(|row| QuadElem::from_parts(d, row[0].clone(), row[1].clone(), den.clone()))
            .collect();
        Self::from_generators(d, &gens)
    }

    /// The principal ideal `α·O_K`.
    pub fn principal(alpha: &QuadElem) -> Result<Self> {
        let d = alpha.disc();
        if alpha.is_zero() {
            return Err(domain("QuadIdeal::principal", "zero generates no fractional ideal"));
        }
        Self::from_basis(alpha, &(alpha * &QuadElem::theta(d)))
    }

    pub fn unit(d: u64) -> Self {
        Self::principal(&QuadElem::one(d)).expect("O_K is a lattice")
    }

    pub fn disc(&self) -> u64 {
        self.d
    }

    /// `(den, [[g, h], [0, r]])`.
    pub fn matrix(&self) -> (Integer, [[Integer; 2]; 2]) {
        (
            self.den.clone(),
            [[self.g.clone(), self.h.clone()], [Integer::new(), self.r.clone()]],
        )
    }

    /// The Hermite basis `((g + h√D)/den, r√D/den)`.
    pub fn basis(&self) -> [QuadElem; 2] {
        [
            QuadElem::from_parts(self.d, self.g.clone(), self.h.clone(), self.den.clone()),
            QuadElem::from_parts(self.d, 0, self.r.clone(), self.den.clone()),
        ]
    }

    /// Integer coordinates of `x` in [`Self::basis`], if `x` lies in the lattice.
    pub fn coords(&self, x: &QuadElem) -> Option<(Integer, Integer)> {
        let a = Rational::from(x.a() * &self.den);
        let b = Rational::from(x.b() * &self.den);
        if a.denom() != &1 || b.denom() != &1 {
            return None;
        }
        let (a, b) = (a.numer().clone(), b.numer().clone());
        if !a.is_divisible(&self.g) {
            return None;
        }
        let u = a / &self.g;
        let rest = b - Integer::from(&u * &self.h);
        if !rest.is_divisible(&self.r) {
            return None;
        }
        Some((u, rest / &self.r))
    }

    pub fn contains(&self, x: &QuadElem) -> bool {
        self.coords(x).is_some()
    }

    pub fn contains_lattice(&self, other: &QuadIdeal) -> bool {
        other.basis().iter().all(|x| self.contains(x))
    }

    /// Closed under multiplication by the maximal order.
    pub fn is_fractional_ideal(&self) -> bool {
        let t = QuadElem::theta(self.d);
        self.basis().iter().all(|x| self.contains(&(x * &t)))
    }

    pub fn is_integral(&self) -> bool {
        self.is_fractional_ideal() && self.basis().iter().all(QuadElem::is_integral)
    }

    /// Absolute norm (index relative to the maximal order).
    pub fn norm(&self) -> Rational {
        // The maximal order has covolume 1/2 in (1, √D) coordinates.
        let num = Integer::from(&self.g * &self.r) * 2u32;
        let den = Integer::from(&self.den * &self.den);
        Rational::from((num, den))
    }

    pub fn mul(&self, other: &QuadIdeal) -> QuadIdeal {
        let [a1, a2] = self.basis();
        let [b1, b2] = other.basis();
        let gens = [&a1 * &b1, &a1 * &b2, &a2 * &b1, &a2 * &b2];
        Self::from_generators(self.d, &gens).expect("product of lattices has rank 2")
    }

    pub fn add(&self, other: &QuadIdeal) -> QuadIdeal {
        let [a1, a2] = self.basis();
        let [b1, b2] = other.basis();
        Self::from_generators(self.d, &[a1, a2, b1, b2]).expect("sum of lattices has rank 2")
    }

    pub fn scale(&self, lambda: &QuadElem) -> QuadIdeal {
        let [a1, a2] = self.basis();
        Self::from_basis(&(&a1 * lambda), &(&a2 * lambda)).expect("nonzero scaling")
    }

    pub fn conj(&self) -> QuadIdeal {
        let [a1, a2] = self.basis();
        Self::from_basis(&a1.conj(), &a2.conj()).expect("conjugation preserves rank")
    }

    /// Inverse of a fractional ideal of the maximal order: `𝔞′/N(𝔞)`.
    pub fn inverse(&self) -> Result<QuadIdeal> {
        if !self.is_fractional_ideal() {
            return Err(domain("QuadIdeal::inverse", "lattice is not an O_K-module"));
        }
        let n = self.norm();
        let s = QuadElem::rational(self.d, n.recip());
        Ok(self.conj().scale(&s))
    }

    /// `𝔞 + 𝔟 = O_K` for integral ideals.
    pub fn is_coprime_to(&self, other: &QuadIdeal) -> bool {
        self.add(other) == QuadIdeal::unit(self.d)
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.basis();
        write!(f, "⟨{a}, {b}⟩")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn unit_ideal_has_norm_one() {
        for d in [5u64, 8, 12, 13] {
            let o = QuadIdeal::unit(d);
            assert_eq!(o.norm(), 1);
            assert!(o.is_integral());
            assert!(o.contains(&QuadElem::theta(d)));
        }
    }

    #[test]
    fn principal_norm_matches_element_norm() {
        let f = QuadIdeal::principal(&QuadElem::new(5, 4, -1)).unwrap();
        assert_eq!(f.norm(), 11);
        let two = QuadIdeal::principal(&QuadElem::rational(5, 2)).unwrap();
        assert_eq!(two.norm(), 4);
        let frac = QuadIdeal::principal(&QuadElem::new(5, q(4, 11), q(1, 11))).unwrap();
        assert_eq!(frac.norm(), q(1, 11));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let e = QuadElem::new(5, q(3, 2), q(1, 2));
        let a = QuadIdeal::from_basis(&QuadElem::one(5), &e).unwrap();
        let b = QuadIdeal::from_basis(&(&QuadElem::one(5) + &e), &(&e * &QuadElem::rational(5, 2) + QuadElem::one(5))).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, QuadIdeal::unit(5));
    }

    #[test]
    fn inverse_multiplies_to_unit() {
        let f = QuadIdeal::principal(&QuadElem::new(5, 4, -1)).unwrap();
        let p = QuadIdeal::from_generators(40, &[QuadElem::rational(40, 2), QuadElem::new(40, 0, q(1, 2))]).unwrap();
        assert!(p.is_integral());
        assert_eq!(p.norm(), 2);
        for i in [f, p] {
            let inv = i.inverse().unwrap();
            assert_eq!(i.mul(&inv), QuadIdeal::unit(i.disc()));
        }
    }

    #[test]
    fn non_ideal_lattice_detected() {
        let l = QuadIdeal::from_basis(&QuadElem::one(5), &QuadElem::sqrt_d(5)).unwrap();
        assert!(!l.is_fractional_ideal());
        assert_eq!(l.norm(), 2);
    }
}
