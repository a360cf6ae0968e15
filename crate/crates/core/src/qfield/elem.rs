use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::DivRounding;
use rug::{Float, Integer, Rational};

use crate::error::{domain, Result};

/// An element `a + b·√D` of a real quadratic field, with rational coordinates.
///
/// The discriminant travels with the value so arithmetic needs no context
/// object. Mixing elements of different fields is a logic error and panics.
/// Coordinates are always in lowest terms, so derived equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    d: u64,
    a: Rational,
    b: Rational,
}

impl QuadElem {
    pub fn new(d: u64, a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        QuadElem { d, a: a.into(), b: b.into() }
    }

    /// `(a + b√D)/den` with integer numerators.
    pub fn from_parts(d: u64, a: impl Into<Integer>, b: impl Into<Integer>, den: impl Into<Integer>) -> Self {
        let den: Integer = den.into();
        assert!(den != 0, "zero denominator");
        QuadElem {
            d,
            a: Rational::from((a.into(), den.clone())),
            b: Rational::from((b.into(), den)),
        }
    }

    pub fn rational(d: u64, q: impl Into<Rational>) -> Self {
        QuadElem { d, a: q.into(), b: Rational::new() }
    }

    pub fn zero(d: u64) -> Self {
        Self::rational(d, 0)
    }

    pub fn one(d: u64) -> Self {
        Self::rational(d, 1)
    }

    /// The element `√D`.
    pub fn sqrt_d(d: u64) -> Self {
        QuadElem { d, a: Rational::new(), b: Rational::from(1) }
    }

    /// The generator `θ` of the maximal order, `O_K = ℤ[θ]`.
    pub fn theta(d: u64) -> Self {
        if d % 4 == 1 {
            QuadElem::new(d, Rational::from((1, 2)), Rational::from((1, 2)))
        } else {
            QuadElem::new(d, 0, Rational::from((1, 2)))
        }
    }

    pub fn disc(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Returns `(A, B, den)` with `self = (A + B√D)/den`, `den > 0` minimal.
    pub fn to_parts(&self) -> (Integer, Integer, Integer) {
        let den = self.a.denom().clone().lcm(self.b.denom());
        let a = self.a.numer() * Integer::from(&den / self.a.denom()) ;
        let b = self.b.numer() * Integer::from(&den / self.b.denom()) ;
        (a, b, den)
    }

    pub fn conj(&self) -> Self {
        QuadElem { d: self.d, a: self.a.clone(), b: Rational::from(-&self.b) }
    }

    pub fn norm(&self) -> Rational {
        let a2 = Rational::from(&self.a * &self.a);
        let b2 = Rational::from(&self.b * &self.b);
        a2 - b2 * Integer::from(self.d)
    }

    pub fn trace(&self) -> Rational {
        Rational::from(&self.a * 2u32)
    }

    pub fn norm_trace(&self) -> (Rational, Rational) {
        (self.norm(), self.trace())
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Membership in the maximal order: trace and norm are rational integers.
    pub fn is_integral(&self) -> bool {
        let (n, t) = self.norm_trace();
        n.denom() == &1 && t.denom() == &1
    }

    /// Sign under the fixed embedding `√D > 0`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp0();
        let sb = self.b.cmp0();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a² and b²D wins.
        let a2 = Rational::from(&self.a * &self.a);
        let b2d = Rational::from(&self.b * &self.b) * Integer::from(self.d);
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_totally_positive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(domain("is_totally_positive", "zero has no sign"));
        }
        Ok(self.is_positive() && self.conj().is_positive())
    }

    /// Exact `⌊self⌋`.
    pub fn floor(&self) -> Integer {
        let (a, b, den) = self.to_parts();
        if b == 0 {
            return a.div_floor(den);
        }
        // ⌊B√D⌋ via integer square roots; B²D is never a square here.
        let b2d = Integer::from(&b * &b) * self.d;
        let s = if b > 0 { b2d.sqrt() } else { -(b2d.sqrt()) - 1u32 };
        (a + s).div_floor(den)
    }

    /// Exact `⌈self⌉`.
    pub fn ceil(&self) -> Integer {
        if self.is_rational() {
            let (a, _, den) = self.to_parts();
            return a.div_ceil(den);
        }
        self.floor() + 1u32
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("inv", "division by zero"));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(QuadElem { d: self.d, a: c.a / &n, b: c.b / n })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadElem::one(self.d);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadElem {
            d: self.d,
            a: Rational::from(&self.a * q),
            b: Rational::from(&self.b * q),
        }
    }

    /// Value under the fixed embedding, rounded to `prec` bits.
    pub fn to_float(&self, prec: u32) -> Float {
        let wp = prec + 16;
        let root = Float::with_val(wp, self.d).sqrt();
        let v = Float::with_val(wp, &self.a) + root * &self.b;
        Float::with_val(prec, v)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(64).to_f64()
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "elements of different quadratic fields");
    }
}

impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, den) = self.to_parts();
        let num = if b == 0 {
            format!("{a}")
        } else {
            let root = format!("√{}", self.d);
            let bpart = match b.to_i32() {
                Some(1) => root.clone(),
                Some(-1) => format!("-{root}"),
                _ => format!("{b}{root}"),
            };
            if a == 0 {
                bpart
            } else if b > 0 {
                format!("{a}+{bpart}")
            } else {
                format!("{a}{bpart}")
            }
        };
        if den == 1 {
            write!(f, "{num}")
        } else if b == 0 || a == 0 {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "({num})/{den}")
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { d: self.d, a: Rational::from(-&self.a), b: Rational::from(-&self.b) }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { d: self.d, a: -self.a, b: -self.b }
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        self.check_field(o);
        QuadElem {
            d: self.d,
            a: Rational::from(&self.a + &o.a),
            b: Rational::from(&self.b + &o.b),
        }
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        self.check_field(o);
        QuadElem {
            d: self.d,
            a: Rational::from(&self.a - &o.a),
            b: Rational::from(&self.b - &o.b),
        }
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        self.check_field(o);
        let aa = Rational::from(&self.a * &o.a);
        let bb = Rational::from(&self.b * &o.b) * Integer::from(self.d);
        let ab = Rational::from(&self.a * &o.b);
        let ba = Rational::from(&self.b * &o.a);
        QuadElem { d: self.d, a: aa + bb, b: ab + ba }
    }
}

impl Div for &QuadElem {
    type Output = QuadElem;
    /// Panics on division by zero; use [`QuadElem::inv`] for a checked form.
    fn div(self, o: &QuadElem) -> QuadElem {
        self * &o.inv().expect("division by zero in quadratic field")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem {
                (&self).$m(&o)
            }
        }
        impl $tr<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: &QuadElem) -> QuadElem {
                (&self).$m(o)
            }
        }
        impl $tr<QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Rational `(u, v)` with `z = u·p + v·q`, or `None` if `p, q` are dependent.
pub fn solve_basis(z: &QuadElem, p: &QuadElem, q: &QuadElem) -> Option<(Rational, Rational)> {
    let det = Rational::from(p.a() * q.b()) - Rational::from(q.a() * p.b());
    if det == 0 {
        return None;
    }
    let u = (Rational::from(z.a() * q.b()) - Rational::from(q.a() * z.b())) / &det;
    let v = (Rational::from(p.a() * z.b()) - Rational::from(z.a() * p.b())) / det;
    Some((u, v))
}

/// `⟨x⟩ ∈ (0, 1]` with `x − ⟨x⟩ ∈ ℤ`.
pub fn frac_angle(x: &Rational) -> Rational {
    let c = x.clone().ceil();
    (x - c) + 1u32
}

/// `{x} ∈ [0, 1)` with `x − {x} ∈ ℤ`.
pub fn frac_brace(x: &Rational) -> Rational {
    let f = x.clone().floor();
    x - f 
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn conj_and_norm_trace() {
        let x = QuadElem::new(5, 4, -1);
        assert_eq!(x.conj(), QuadElem::new(5, 4, 1));
        assert_eq!(x.norm_trace(), (Rational::from(11), Rational::from(8)));
        let e = QuadElem::new(5, q(3, 2), q(1, 2));
        assert_eq!(e.norm_trace(), (Rational::from(1), Rational::from(3)));
        let r = QuadElem::sqrt_d(12);
        assert_eq!(r.norm_trace(), (Rational::from(-12), Rational::from(0)));
        assert_eq!(QuadElem::rational(5, 7).conj(), QuadElem::rational(5, 7));
    }

    #[test]
    fn signs_are_exact() {
        let e = QuadElem::new(5, q(3, 2), q(1, 2));
        assert!(e.is_totally_positive().unwrap());
        let phi = QuadElem::new(5, q(1, 2), q(1, 2));
        let m = -phi.pow(5);
        assert!(!m.is_totally_positive().unwrap());
        assert!(QuadElem::one(5).is_totally_positive().unwrap());
        assert!(QuadElem::zero(5).is_totally_positive().is_err());
        // 99 - 70√2 is tiny but positive.
        let t = QuadElem::new(8, 99, q(-35, 1));
        assert!(t.is_positive());
    }

    #[test]
    fn floor_and_ceil() {
        let w = QuadElem::new(5, q(3, 2), q(1, 2));
        assert_eq!(w.floor(), 2);
        assert_eq!(w.ceil(), 3);
        let neg = -&w;
        assert_eq!(neg.floor(), -3);
        assert_eq!(neg.ceil(), -2);
        assert_eq!(QuadElem::rational(5, q(7, 2)).floor(), 3);
        assert_eq!(QuadElem::rational(5, 4).ceil(), 4);
    }

    #[test]
    fn field_operations() {
        let a = QuadElem::new(12, 2, q(1, 2));
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, QuadElem::one(12));
        assert_eq!(inv, QuadElem::new(12, 2, q(-1, 2)));
        assert_eq!(format!("{}", QuadElem::new(5, q(3, 2), q(1, 2))), "(3+√5)/2");
        assert_eq!(format!("{}", QuadElem::new(5, 4, -1)), "4-√5");
    }

    #[test]
    fn basis_solve() {
        let p = QuadElem::new(5, q(3, 2), q(1, 2));
        let one = QuadElem::one(5);
        let z = &p.scale(&q(2, 11)) + &one.scale(&q(1, 11));
        assert_eq!(solve_basis(&z, &p, &one), Some((q(2, 11), q(1, 11))));
        assert_eq!(solve_basis(&z, &one, &QuadElem::rational(5, 3)), None);
    }

    #[test]
    fn fractional_parts() {
        assert_eq!(frac_angle(&Rational::from(1)), 1);
        assert_eq!(frac_angle(&Rational::from(0)), 1);
        assert_eq!(frac_angle(&q(-2, 11)), q(9, 11));
        assert_eq!(frac_brace(&Rational::from(0)), 0);
        assert_eq!(frac_brace(&q(-4, 11)), q(7, 11));
        assert_eq!(frac_brace(&q(13, 11)), q(2, 11));
    }
}
