//! The integrals `f(ω, x)` and `F(ω, x, y)` of the Kronecker-type limit
//! formula.
//!
//! `f(v, x) = −∫_v^∞ e^{−xu}/(1 − e^{−u}) du` is summed geometrically for
//! `v ≥ 1`; below that, the integrand `u^{−1} Σ B_n(1−x) uⁿ/n!` is integrated
//! termwise from `v` to `1`.

use rug::Float;

use super::bernoulli::bernoulli_table;
use super::quad::{exp_sinh, tanh_sinh};
use super::{rat, require_positive, Precision};
use crate::error::{domain, Error, Result};

/// Cached expansions for fixed `(x, y)`.
#[derive(Clone, Debug)]
pub struct Kernel {
    prec: Precision,
    x: Float,
    y: Float,
    // B_n(1−x)/n!: Taylor coefficients of e^{−xu}β(u).
    fx: Vec<Float>,
    // B_n(1−y)/n!, for the small-t form of e^{−yt}/(1−e^{−t}) − 1/t.
    gy: Vec<Float>,
    f_one: Float,
}

fn shifted_bernoulli(s: &Float, n: usize, wp: u32) -> Vec<Float> {
    // e^{−su}·β(u) with β(u) = Σ B_k(1) u^k/k!, as a Cauchy product.
    let bern = bernoulli_table(n);
    let mut beta = Vec::with_capacity(n + 1);
    let mut fact = Float::with_val(wp, 1);
    for (k, b) in bern.iter().enumerate() {
        if k > 0 {
            fact *= k as u32;
        }
        let v = if k == 1 { Float::with_val(wp, 0.5) } else { rat(wp, b) };
        beta.push(v / &fact);
    }
    let mut ex = Vec::with_capacity(n + 1);
    let mut t = Float::with_val(wp, 1);
    for k in 0..=n {
        ex.push(t.clone());
        t *= Float::with_val(wp, -s) / (k as u32 + 1);
    }
    (0..=n)
        .map(|m| {
            let mut acc = Float::with_val(wp, 0);
            for k in 0..=m {
                acc += Float::with_val(wp, &ex[k] * &beta[m - k]);
            }
            acc
        })
        .collect()
}

impl Kernel {
    pub fn new(x: &Float, y: &Float, prec: Precision) -> Result<Self> {
        require_positive("f_inner", x)?;
        if y.is_nan() || *y < 0 {
            return Err(domain("Kernel", "y must be nonnegative"));
        }
        let wp = prec.working();
        let x = Float::with_val(wp, x);
        let y = Float::with_val(wp, y);
        let grow = (x.to_f64().max(y.to_f64()) * 8.0) as usize;
        let n = (wp as usize) / 2 + 24 + grow;
        let fx = shifted_bernoulli(&x, n, wp);
        let gy = shifted_bernoulli(&y, n, wp);
        let f_one = Self::geometric(&x, &Float::with_val(wp, 1), wp)?;
        Ok(Kernel { prec, x, y, fx, gy, f_one })
    }

    // −Σ_{n≥0} e^{−(x+n)v}/(x+n), v ≥ 1.
    fn geometric(x: &Float, v: &Float, wp: u32) -> Result<Float> {
        let q = Float::with_val(wp, -v).exp();
        let mut pw = Float::with_val(wp, -Float::with_val(wp, x * v)).exp();
        let mut sum = Float::with_val(wp, 0);
        for n in 0..100_000u32 {
            let t = Float::with_val(wp, &pw / Float::with_val(wp, x + n));
            sum += &t;
            if t.is_zero() || Float::with_val(wp, &t * Float::with_val(wp, Float::i_exp(1, wp as i32 + 4))) < sum {
                return Ok(-sum);
            }
            pw *= &q;
        }
        Err(Error::NoConvergence { op: "f_inner", iters: 100_000 })
    }

    /// `f(v, x)` at working precision.
    pub fn f(&self, v: &Float) -> Result<Float> {
        require_positive("f_inner", v)?;
        let wp = self.prec.working();
        if *v >= 1 {
            return Self::geometric(&self.x, v, wp);
        }
        // f(1,x) + log v − Σ_{n≥1} B_n(1−x)/n! · (1 − vⁿ)/n
        let mut total = Float::with_val(wp, &self.f_one) + Float::with_val(wp, v.ln_ref());
        let mut vp = Float::with_val(wp, v);
        let tiny = Float::with_val(wp, Float::i_exp(1, -(wp as i32 + 8)));
        let mut quiet = 0;
        for (n, c) in self.fx.iter().enumerate().skip(1) {
            let t = Float::with_val(wp, c * Float::with_val(wp, 1 - &vp)) / n as u32;
            total -= t;
            // Odd coefficients can vanish identically, so wait for a run.
            quiet = if Float::with_val(wp, c.abs_ref()) < tiny { quiet + 1 } else { 0 };
            if quiet >= 4 {
                break;
            }
            vp *= v;
        }
        Ok(total)
    }

    /// `g(t) = e^{−yt}/(1 − e^{−t}) − 1/t`.
    pub fn g(&self, t: &Float) -> Float {
        let wp = self.prec.working();
        if *t < 1 {
            let mut total = Float::with_val(wp, 0);
            let mut tp = Float::with_val(wp, 1);
            let tiny = Float::with_val(wp, Float::i_exp(1, -(wp as i32 + 8)));
            let mut quiet = 0;
            for c in self.gy.iter().skip(1) {
                total += Float::with_val(wp, c * &tp);
                quiet = if Float::with_val(wp, c.abs_ref()) < tiny { quiet + 1 } else { 0 };
                if quiet >= 4 {
                    break;
                }
                tp *= t;
            }
            return total;
        }
        let num = Float::with_val(wp, -Float::with_val(wp, &self.y * t)).exp();
        let den = -Float::with_val(wp, -t).exp_m1();
        num / den - Float::with_val(wp, 1u32 / t)
    }

    /// `F(ω, x, y) = ∫_0^∞ g(t) f(ωt, x) dt`.
    pub fn f_cap(&self, omega: &Float) -> Result<Float> {
        require_positive("f_cap", omega)?;
        let wp = self.prec.working();
        let v = exp_sinh(|t| self.integrand(omega, t), &Float::with_val(wp, 0), self.prec)?;
        Ok(Float::with_val(self.prec.bits(), v))
    }

    /// `F` with the outer integral split at `t = 1`.
    pub fn f_cap_split(&self, omega: &Float) -> Result<Float> {
        require_positive("f_cap_split", omega)?;
        let wp = self.prec.working();
        let zero = Float::with_val(wp, 0);
        let one = Float::with_val(wp, 1);
        let head = tanh_sinh(|t| self.integrand(omega, t), &zero, &one, self.prec)?;
        let tail = exp_sinh(|t| self.integrand(omega, t), &one, self.prec)?;
        Ok(Float::with_val(self.prec.bits(), head + tail))
    }

    fn integrand(&self, omega: &Float, t: &Float) -> Result<Float> {
        let wp = self.prec.working();
        if t.is_zero() {
            return Ok(Float::with_val(wp, 0));
        }
        let v = Float::with_val(wp, omega * t);
        if v.is_zero() {
            return Ok(Float::with_val(wp, 0));
        }
        Ok(self.g(t) * self.f(&v)?)
    }
}

/// `f(ω, x) = −∫_ω^∞ e^{−xu}/(1 − e^{−u}) du`.
pub fn f_inner(omega: &Float, x: &Float, prec: Precision) -> Result<Float> {
    let k = Kernel::new(x, &Float::with_val(prec.working(), 0), prec)?;
    Ok(Float::with_val(prec.bits(), k.f(omega)?))
}

/// `f(ω, x)` by direct quadrature, as an independent check of [`f_inner`].
pub fn f_inner_quad(omega: &Float, x: &Float, prec: Precision) -> Result<Float> {
    require_positive("f_inner_quad", omega)?;
    require_positive("f_inner_quad", x)?;
    let wp = prec.working();
    let v = exp_sinh(
        |u| {
            let num = Float::with_val(wp, -Float::with_val(wp, x * u)).exp();
            Ok(num / -Float::with_val(wp, -u).exp_m1())
        },
        omega,
        prec,
    )?;
    Ok(Float::with_val(prec.bits(), -v))
}

/// `F(ω, x, y) = ∫_0^∞ (e^{−yt}/(1 − e^{−t}) − 1/t) f(ωt, x) dt`.
pub fn f_cap(omega: &Float, x: &Float, y: &Float, prec: Precision) -> Result<Float> {
    Kernel::new(x, y, prec)?.f_cap(omega)
}

/// [`f_cap`] evaluated as `∫_0^1 + ∫_1^∞` with separate rules.
pub fn f_cap_split(omega: &Float, x: &Float, y: &Float, prec: Precision) -> Result<Float> {
    Kernel::new(x, y, prec)?.f_cap_split(omega)
}
