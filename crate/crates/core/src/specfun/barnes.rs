//! Barnes double zeta at `s = 0`, `G = ∂_s ζ₂(0, ω, z)`, and the double sine.
//!
//! With `H(t) = e^{−zt} / ((1 − e^{−t})(1 − e^{−ωt}))` the Mellin integral
//! gives `ζ₂(s) = Γ(s)^{−1} ∫ t^{s−1} H(t) dt`. Splitting at `a` and
//! expanding `t²H(t) = Σ c_n tⁿ` on `[0, a]` yields
//!
//! `G = Σ_{n≥3} c_n a^{n−2}/(n−2) − c₀/(2a²) − c₁/a + c₂(γ + log a) + ∫_a^∞ H(t)/t dt`.

use std::cmp::Ordering;

use rug::{Float, Rational};

use super::bernoulli::{bernoulli_poly1, bernoulli_poly2, bernoulli_table};
use super::quad::exp_sinh;
use super::{euler_gamma, pi, rat, require_positive, Precision};
use crate::error::{domain, Error, Result};
use crate::qfield::{frac_angle, frac_brace, QuadElem};

/// `G(ω, ·)` evaluator for a fixed `ω`, caching the `z`-independent part of
/// the small-`t` expansion.
#[derive(Clone, Debug)]
pub struct Barnes {
    omega: Float,
    prec: Precision,
    // Taylor coefficients of β(t)β(ωt)/ω, β(u) = u/(1 − e^{−u}).
    pair: Vec<Float>,
}

impl Barnes {
    pub fn new(omega: &Float, prec: Precision) -> Result<Self> {
        require_positive("Barnes", omega)?;
        let wp = prec.working();
        let omega = Float::with_val(wp, omega);
        let n = (wp / 2 + 16) as usize;
        let bern = bernoulli_table(n);
        let mut beta = Vec::with_capacity(n + 1);
        let mut fact = Float::with_val(wp, 1);
        for (k, b) in bern.iter().enumerate() {
            if k > 0 {
                fact *= k as u32;
            }
            let bk = if k == 1 { Rational::from((1, 2)) } else { b.clone() };
            beta.push(rat(wp, &bk) / &fact);
        }
        let mut beta_w = Vec::with_capacity(n + 1);
        let mut wpow = Float::with_val(wp, 1);
        for b in &beta {
            beta_w.push(Float::with_val(wp, b * &wpow));
            wpow *= &omega;
        }
        let pair = (0..=n)
            .map(|m| {
                let mut acc = Float::with_val(wp, 0);
                for k in 0..=m {
                    acc += Float::with_val(wp, &beta[k] * &beta_w[m - k]);
                }
                acc / &omega
            })
            .collect();
        Ok(Barnes { omega, prec, pair })
    }

    pub fn omega(&self) -> &Float {
        &self.omega
    }

    /// `G(ω, z)` for `z > 0`.
    pub fn g(&self, z: &Float) -> Result<Float> {
        require_positive("barnes_g", z)?;
        let wp = self.prec.working();
        let z = Float::with_val(wp, z);
        let one = Float::with_val(wp, 1);
        let w_max = Float::with_val(wp, self.omega.clone().max(&one));
        let mut a = Float::with_val(wp, pi(wp) / 2u32) / &w_max;
        a = a.min(&one);
        let zinv = Float::with_val(wp, 1u32 / &z);
        a = a.min(&zinv);

        let n = self.pair.len() - 1;
        // c_n = Σ_k (−z)^k/k! · pair_{n−k}
        let mut ez = Vec::with_capacity(n + 1);
        let mut term = Float::with_val(wp, 1);
        for k in 0..=n {
            ez.push(term.clone());
            term *= Float::with_val(wp, -&z) / (k as u32 + 1);
        }
        let coeff = |m: usize| {
            let mut acc = Float::with_val(wp, 0);
            for k in 0..=m {
                acc += Float::with_val(wp, &ez[k] * &self.pair[m - k]);
            }
            acc
        };

        let c0 = coeff(0);
        let c1 = coeff(1);
        let c2 = coeff(2);
        let mut total = Float::with_val(wp, &c0 / Float::with_val(wp, a.square_ref())) / -2i32;
        total -= Float::with_val(wp, &c1 / &a);
        total += c2 * (euler_gamma(wp) + Float::with_val(wp, a.ln_ref()));
        let tiny = Float::with_val(wp, Float::i_exp(1, -(wp as i32 + 8)));
        let mut apow = a.clone();
        let mut quiet = 0;
        for m in 3..=n {
            let t = Float::with_val(wp, coeff(m) * &apow) / (m as u32 - 2);
            quiet = if Float::with_val(wp, t.abs_ref()) < tiny { quiet + 1 } else { 0 };
            total += t;
            if quiet >= 4 {
                break;
            }
            apow *= &a;
        }

        let omega = self.omega.clone();
        let tail = exp_sinh(
            |t| {
                let e1 = Float::with_val(wp, -t).exp_m1();
                let e2 = Float::with_val(wp, -Float::with_val(wp, t * &omega)).exp_m1();
                let num = Float::with_val(wp, -Float::with_val(wp, t * &z)).exp();
                Ok(num / (e1 * e2) / t)
            },
            &a,
            self.prec,
        )?;
        total += tail;
        Ok(Float::with_val(self.prec.bits(), total))
    }

    /// `𝒮(ω, z) = exp(G(ω, 1 + ω − z) − G(ω, z))`, continued outside the
    /// strip `0 < z < 1 + ω` by `𝒮(ω, z) = 2 sin(πz/ω) 𝒮(ω, z + 1)`.
    pub fn sine(&self, z: &Float) -> Result<Float> {
        let wp = self.prec.working();
        let mut z = Float::with_val(wp, z);
        let upper = Float::with_val(wp, &self.omega + 1u32);
        let threshold = Float::with_val(wp, Float::i_exp(1, -(self.prec.bits() as i32)));
        let pi_w = Float::with_val(wp, pi(wp) / &self.omega);
        let mut factor = Float::with_val(wp, 1);
        let mut steps = 0u32;
        while z <= 0 || z >= upper {
            steps += 1;
            if steps > 10_000 {
                return Err(Error::NoConvergence { op: "double_sine", iters: 10_000 });
            }
            if z <= 0 {
                let s = Float::with_val(wp, &z * &pi_w).sin() * 2u32;
                if Float::with_val(wp, s.abs_ref()) < threshold {
                    return Ok(Float::with_val(self.prec.bits(), 0));
                }
                factor *= s;
                z += 1u32;
            } else {
                z -= 1u32;
                let s = Float::with_val(wp, &z * &pi_w).sin() * 2u32;
                if Float::with_val(wp, s.abs_ref()) < threshold {
                    return Err(Error::Singular {
                        op: "double_sine",
                        msg: "pole of 𝒮 at z ∈ 1 + ω + ℤ_{≥0} + ωℤ_{≥0}".into(),
                    });
                }
                factor /= s;
            }
        }
        let mirror = Float::with_val(wp, &upper - &z);
        let diff = Float::with_val(wp, self.g(&mirror)? - self.g(&z)?);
        Ok(Float::with_val(self.prec.bits(), diff.exp() * factor))
    }
}

/// `G(ω, z) = ∂_s ζ₂(s, ω, z)|_{s=0}`.
pub fn barnes_g(omega: &Float, z: &Float, prec: Precision) -> Result<Float> {
    Barnes::new(omega, prec)?.g(z)
}

/// `𝒮(ω, z)`.
pub fn double_sine(omega: &Float, z: &Float, prec: Precision) -> Result<Float> {
    Barnes::new(omega, prec)?.sine(z)
}

/// Exact `ζ₂(0, ω, xω + y) = (ω/2)B₂(x) + B₁(x)B₁(y) + B₂(y)/(2ω)`.
pub fn barnes_zeta2_at0(omega: &QuadElem, x: &Rational, y: &Rational) -> Result<QuadElem> {
    if !omega.is_positive() {
        return Err(domain("barnes_zeta2_at0", "ω must be positive"));
    }
    let half = Rational::from((1, 2));
    let a = omega.scale(&(&half * bernoulli_poly2(x)));
    let b = QuadElem::rational(omega.disc(), bernoulli_poly1(x) * bernoulli_poly1(y));
    let c = omega.inv()?.scale(&(&half * bernoulli_poly2(y)));
    Ok(&(&a + &b) + &c)
}

/// Floating-point variant of [`barnes_zeta2_at0`].
pub fn barnes_zeta2_at0_real(omega: &Float, x: &Rational, y: &Rational, prec: Precision) -> Result<Float> {
    require_positive("barnes_zeta2_at0_real", omega)?;
    let wp = prec.working();
    let w = Float::with_val(wp, omega);
    let v = Float::with_val(wp, &w * rat(wp, &bernoulli_poly2(x))) / 2u32
        + rat(wp, &(bernoulli_poly1(x) * bernoulli_poly1(y)))
        + Float::with_val(wp, rat(wp, &bernoulli_poly2(y)) / &w) / 2u32;
    Ok(Float::with_val(prec.bits(), v))
}

fn require_irrational(op: &'static str, omega: &QuadElem) -> Result<()> {
    if omega.is_rational() {
        return Err(domain(op, "ω must be irrational"));
    }
    if !omega.is_positive() {
        return Err(domain(op, "ω must be positive"));
    }
    Ok(())
}

/// `𝒯₁ = 𝒮(ω, ⟨x⟩ω + ⟨y⟩)` for irrational `ω > 0`. At `⟨x⟩ = ⟨y⟩ = 1` the
/// argument is the pole `1 + ω`, reported as [`Error::Singular`].
pub fn t1(omega: &QuadElem, x: &Rational, y: &Rational, prec: Precision) -> Result<Float> {
    require_irrational("t1", omega)?;
    let (xa, ya) = (frac_angle(x), frac_angle(y));
    if xa == 1 && ya == 1 {
        return Err(Error::Singular { op: "t1", msg: "⟨x⟩ = ⟨y⟩ = 1 puts z at the pole 1 + ω".into() });
    }
    strip_sine(omega, &xa, &ya, prec)
}

/// `𝒯₂ = 𝒮(ω, {x}ω + ⟨y⟩)` for irrational `ω > 0`.
pub fn t2(omega: &QuadElem, x: &Rational, y: &Rational, prec: Precision) -> Result<Float> {
    require_irrational("t2", omega)?;
    strip_sine(omega, &frac_brace(x), &frac_angle(y), prec)
}

// The argument uω + v is built exactly, then evaluated inside the strip.
fn strip_sine(omega: &QuadElem, u: &Rational, v: &Rational, prec: Precision) -> Result<Float> {
    let z = &omega.scale(u) + &QuadElem::rational(omega.disc(), v.clone());
    let upper = omega + &QuadElem::one(omega.disc());
    debug_assert!(z.is_positive() && z.cmp(&upper) == Ordering::Less);
    let wp = prec.working() + 32;
    let b = Barnes::new(&omega.to_float(wp), prec)?;
    b.sine(&z.to_float(wp))
}

/// Real-`ω` form of [`t1`]; the pole check is exact in `(x, y)`.
pub fn t1_xy(omega: &Float, x: &Rational, y: &Rational, prec: Precision) -> Result<Float> {
    let (xa, ya) = (frac_angle(x), frac_angle(y));
    if xa == 1 && ya == 1 {
        return Err(Error::Singular { op: "t1_xy", msg: "⟨x⟩ = ⟨y⟩ = 1 puts z at the pole 1 + ω".into() });
    }
    real_strip_sine(omega, &xa, &ya, prec)
}

/// Real-`ω` form of [`t2`].
pub fn t2_xy(omega: &Float, x: &Rational, y: &Rational, prec: Precision) -> Result<Float> {
    real_strip_sine(omega, &frac_brace(x), &frac_angle(y), prec)
}

fn real_strip_sine(omega: &Float, u: &Rational, v: &Rational, prec: Precision) -> Result<Float> {
    let wp = prec.working();
    let b = Barnes::new(omega, prec)?;
    let z = Float::with_val(wp, b.omega() * rat(wp, u)) + rat(wp, v);
    b.sine(&z)
}
