//! Double-exponential quadrature on MPFR floats.
//!
//! `exp_sinh` covers `[a, ∞)` and `tanh_sinh` a finite interval. Both refine
//! by halving the step and stop once two successive levels agree to the
//! requested absolute tolerance (relative for results larger than one).

use rug::Float;

use super::{pi, Precision};
use crate::error::{Error, Result};

const MAX_LEVEL: u32 = 11;
const U_MAX: f64 = 7.0;

/// A node at parameter `u`: abscissa and weight.
type NodeFn<'a> = dyn Fn(&Float) -> (Float, Float) + 'a;

fn de_integrate<F>(node: &NodeFn<'_>, mut f: F, prec: Precision, op: &'static str) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let wp = prec.working();
    let tol = Float::with_val(wp, Float::i_exp(1, -(prec.bits() as i32 + 4)));
    let tiny = Float::with_val(wp, &tol >> 16u32);

    let mut eval = |k: i64, h: &Float| -> Result<Float> {
        let u = Float::with_val(wp, h * k);
        let (x, w) = node(&u);
        if w.is_zero() {
            return Ok(Float::with_val(wp, 0));
        }
        let fx = f(&x)?;
        if fx.is_nan() {
            return Err(Error::Domain { op, msg: format!("integrand is NaN at {}", x.to_f64()) });
        }
        Ok(fx * w)
    };

    // Sum over k ≡ start (mod step) in both directions until terms vanish.
    let mut side_sums = |h: &Float, start: i64, step: i64| -> Result<Float> {
        let mut total = Float::with_val(wp, 0);
        for dir in [1i64, -1] {
            let mut k = if dir == 1 { start } else { start - step };
            if dir == -1 && start != 0 {
                k = -start;
            }
            let mut small = 0;
            loop {
                let u = h.to_f64() * k as f64;
                if u.abs() > U_MAX {
                    break;
                }
                let term = eval(k, h)?;
                let negligible = Float::with_val(wp, term.abs_ref()) <= tiny;
                total += term;
                if negligible && u.abs() > 0.5 {
                    small += 1;
                    if small >= 2 {
                        break;
                    }
                } else {
                    small = 0;
                }
                k += dir * step;
            }
        }
        Ok(total)
    };

    let mut h = Float::with_val(wp, 1);
    let mut sum = side_sums(&h, 0, 1)?;
    let mut est = Float::with_val(wp, &sum * &h);
    for level in 1..=MAX_LEVEL {
        h >>= 1u32;
        sum += side_sums(&h, 1, 2)?;
        let next = Float::with_val(wp, &sum * &h);
        let diff = Float::with_val(wp, &next - &est).abs();
        let scale = Float::with_val(wp, next.abs_ref()).max(&Float::with_val(wp, 1));
        est = next;
        if level >= 3 && diff <= Float::with_val(wp, &tol * &scale) {
            return Ok(est);
        }
    }
    Err(Error::NoConvergence { op, iters: MAX_LEVEL as usize })
}

/// `∫_a^∞ f(t) dt` for integrands decaying at infinity.
pub fn exp_sinh<F>(f: F, a: &Float, prec: Precision) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let wp = prec.working();
    let half_pi = pi(wp) / 2u32;
    let a = Float::with_val(wp, a);
    let node = |u: &Float| {
        let e = (Float::with_val(wp, u.sinh_ref()) * &half_pi).exp();
        let w = Float::with_val(wp, u.cosh_ref()) * &half_pi * &e;
        (Float::with_val(wp, &a + &e), w)
    };
    de_integrate(&node, f, prec, "exp_sinh")
}

/// `∫_a^b f(t) dt`; abscissae near either endpoint are formed from the
/// distance to that endpoint, so endpoint singularities are resolved.
pub fn tanh_sinh<F>(f: F, a: &Float, b: &Float, prec: Precision) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let wp = prec.working();
    let half_pi = pi(wp) / 2u32;
    let a = Float::with_val(wp, a);
    let b = Float::with_val(wp, b);
    let r = Float::with_val(wp, &b - &a) / 2u32;
    let node = |u: &Float| {
        let v = Float::with_val(wp, u.sinh_ref()) * &half_pi;
        let q = (Float::with_val(wp, v.abs_ref()) * -2i32).exp();
        let onep = Float::with_val(wp, 1 + &q);
        let dist = Float::with_val(wp, &r * &q) * 2u32 / &onep;
        let x = if v < 0 { Float::with_val(wp, &a + &dist) } else { Float::with_val(wp, &b - &dist) };
        let sech2 = Float::with_val(wp, &q * 4u32) / Float::with_val(wp, onep.square_ref());
        let w = Float::with_val(wp, u.cosh_ref()) * &half_pi * &r * sech2;
        (x, w)
    };
    de_integrate(&node, f, prec, "tanh_sinh")
}
