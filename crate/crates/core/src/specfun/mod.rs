//! Numerical special functions on MPFR floats.
//!
//! Every entry point takes an explicit [`Precision`]. Internally work is done
//! with extra guard bits and the result is rounded to the requested size.

mod barnes;
mod bernoulli;
mod kronecker;
pub mod quad;

pub use barnes::{barnes_g, barnes_zeta2_at0, barnes_zeta2_at0_real, double_sine, t1, t1_xy, t2, t2_xy, Barnes};
pub use bernoulli::{bernoulli_number, bernoulli_poly1, bernoulli_poly2, bernoulli_table};
pub use kronecker::{f_cap, f_cap_split, f_inner, f_inner_quad, Kernel};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{domain, Error, Result};

/// Significand size in bits for a numeric evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision(u32);

/// Guard bits added to every internal computation.
const GUARD: u32 = 32;

impl Precision {
    /// 64 bits, or 128 with the `prec128` feature.
    pub const DEFAULT: Precision = Precision(if cfg!(feature = "prec128") { 128 } else { 64 });

    pub fn new(bits: u32) -> Result<Self> {
        if !(53..=4096).contains(&bits) {
            return Err(domain("Precision", format!("{bits} bits is outside 53..=4096")));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Internal working size.
    pub fn working(self) -> u32 {
        self.0 + GUARD
    }

    /// Twice the target, for cancellation-prone assemblies.
    pub fn doubled(self) -> Precision {
        Precision(2 * self.0)
    }

    /// `2^{−bits}`.
    pub fn epsilon(self) -> Float {
        Float::with_val(self.working(), Float::i_exp(1, -(self.0 as i32)))
    }

    /// Decimal digits carried by this precision.
    pub fn digits(self) -> usize {
        ((self.0 as f64) * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

pub(crate) fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub(crate) fn euler_gamma(bits: u32) -> Float {
    Float::with_val(bits, Constant::Euler)
}

pub(crate) fn rat(bits: u32, q: &Rational) -> Float {
    Float::with_val(bits, q)
}

fn require_positive(op: &'static str, x: &Float) -> Result<()> {
    if x.is_nan() || *x <= 0 {
        return Err(domain(op, format!("argument must be positive, got {}", x.to_f64())));
    }
    Ok(())
}

/// `ψ(x)`, `x > 0`.
pub fn digamma(x: &Float, prec: Precision) -> Result<Float> {
    require_positive("digamma", x)?;
    let w = Float::with_val(prec.working(), x).digamma();
    Ok(Float::with_val(prec.bits(), w))
}

/// `Li₂(x)` for `−1 ≤ x ≤ 1`.
pub fn dilog(x: &Float, prec: Precision) -> Result<Float> {
    if x.is_nan() || *x > 1 || *x < -1 {
        return Err(domain("dilog", format!("argument {} outside [−1, 1]", x.to_f64())));
    }
    let w = Float::with_val(prec.working(), x).li2();
    Ok(Float::with_val(prec.bits(), w))
}

/// `ζ′(0, x) = log Γ(x) − ½ log 2π`.
pub fn lerch_log_gamma(x: &Float, prec: Precision) -> Result<Float> {
    require_positive("lerch_log_gamma", x)?;
    let wp = prec.working();
    let lg = Float::with_val(wp, x).ln_gamma();
    let l2pi = (pi(wp) * 2u32).ln();
    Ok(Float::with_val(prec.bits(), lg - l2pi / 2u32))
}

/// Exact `ζ(0, x) = ½ − x`.
pub fn hurwitz_zeta0(x: &Rational) -> Rational {
    Rational::from((1, 2)) - x
}

/// `ζ(s, x)` for `x > 0`, `s ≠ 1`, by Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: &Float, x: &Float, prec: Precision) -> Result<Float> {
    require_positive("hurwitz_zeta", x)?;
    let wp = prec.working();
    let s = Float::with_val(wp, s);
    if s == 1 {
        return Err(Error::Singular { op: "hurwitz_zeta", msg: "pole at s = 1".into() });
    }
    let x = Float::with_val(wp, x);
    let terms = (prec.bits() / 3 + 8) as usize;
    let n = terms as u32 + (s.to_f64().abs() as u32);
    let mut sum = Float::with_val(wp, 0);
    let neg_s = Float::with_val(wp, -&s);
    for k in 0..n {
        let base = Float::with_val(wp, &x + k);
        sum += base.pow(&neg_s);
    }
    let xn = Float::with_val(wp, &x + n);
    let one_minus_s = Float::with_val(wp, 1 - Float::with_val(wp, &s));
    sum += Float::with_val(wp, xn.clone().pow(&one_minus_s)) / Float::with_val(wp, &s - 1u32);
    let xn_s = Float::with_val(wp, xn.clone().pow(&neg_s));
    sum += Float::with_val(wp, &xn_s / 2u32);
    let bern = bernoulli_table(2 * terms + 2);
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) · (x+N)^{−s−2j+1}
    let mut rising = s.clone();
    let mut power = Float::with_val(wp, &xn_s / &xn);
    let xn2 = Float::with_val(wp, &xn * &xn);
    let mut fact = Float::with_val(wp, 2);
    for j in 1..=terms {
        let term = Float::with_val(wp, rat(wp, &bern[2 * j]) * &rising) * &power / &fact;
        sum += &term;
        if term.is_zero() || term.clone().abs() < Float::with_val(wp, &sum).abs() * prec.epsilon() / 1024u32 {
            break;
        }
        let k = 2 * j as u32;
        rising *= Float::with_val(wp, &s + (k - 1)) * Float::with_val(wp, &s + k);
        fact *= (k + 1) * (k + 2);
        power /= &xn2;
    }
    Ok(Float::with_val(prec.bits(), sum))
}
