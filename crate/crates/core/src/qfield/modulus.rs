use rug::{Integer, Rational};

use super::{FieldCtx, QuadElem, QuadIdeal};
use crate::error::{domain, Result};

/// An integral modulus `𝔣` with the unit data of its narrow ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub ideal: QuadIdeal,
    pub norm: Integer,
    /// `ε_𝔣 = ε^r`, generator of the totally positive units `≡ 1 mod 𝔣`.
    pub eps_f: QuadElem,
    pub r: u32,
}

pub fn modulus_data(f: &QuadIdeal, ctx: &FieldCtx) -> Result<Modulus> {
    if f.disc() != ctx.disc() {
        return Err(domain("modulus_data", "modulus belongs to a different field"));
    }
    if !f.is_integral() {
        return Err(domain("modulus_data", "modulus must be an integral ideal"));
    }
    let one = QuadElem::one(ctx.disc());
    let mut e = ctx.eps().clone();
    let mut r = 1u32;
    while !f.contains(&(&e - &one)) {
        e = &e * ctx.eps();
        r += 1;
    }
    let norm = f.norm().numer().clone();
    Ok(Modulus { ideal: f.clone(), norm, eps_f: e, r })
}

impl Modulus {
    pub fn trivial(ctx: &FieldCtx) -> Modulus {
        modulus_data(&QuadIdeal::unit(ctx.disc()), ctx).expect("unit ideal is integral")
    }

    pub fn is_trivial(&self) -> bool {
        self.norm == 1
    }
}

/// `λ ≡ 1 mod× 𝔣`: `λ − 1 ∈ 𝔣·(O_K + λO_K)`.
///
/// This is the multiplicative congruence for arbitrary `λ ∈ K^×`: at primes
/// above `𝔣` it forces `λ` to be a unit congruent to 1, and elsewhere it is
/// vacuous.
pub fn is_ray_congruent_one(lambda: &QuadElem, f: &Modulus) -> bool {
    let d = lambda.disc();
    let one = QuadElem::one(d);
    let gcd = QuadIdeal::unit(d).add(&QuadIdeal::principal(lambda).expect("nonzero"));
    f.ideal.mul(&gcd).contains(&(lambda - &one))
}

/// A totally positive `λ ≡ 1 mod× 𝔣` with `(λ) = c`, or `None`.
///
/// Any such generator can be moved by powers of `ε_𝔣` into the region
/// `√n ≤ λ < ε_𝔣²·λ′` (with `n = N(c)`), which is a bounded piece of the
/// hyperbola `λλ′ = n`. The lattice points of `c` in the bounding box of that
/// piece are enumerated exhaustively; the returned generator is the unique
/// one with `1 ≤ λ/λ′ < ε_𝔣²`.
pub fn find_generator_narrow(c: &QuadIdeal, f: &Modulus, ctx: &FieldCtx) -> Result<Option<QuadElem>> {
    if c.disc() != ctx.disc() {
        return Err(domain("find_generator_narrow", "ideal belongs to a different field"));
    }
    if !c.is_fractional_ideal() {
        return Err(domain("find_generator_narrow", "input is not a fractional ideal"));
    }
    let n = c.norm();
    let [e1, e2] = c.basis();
    let (x1, y1) = (e1.to_f64(), e1.conj().to_f64());
    let (x2, y2) = (e2.to_f64(), e2.conj().to_f64());
    let det = x1 * y2 - x2 * y1;
    let sn = n.to_f64().sqrt();
    let ef = f.eps_f.to_f64();
    // λ ∈ [√n, ε_𝔣√n], λ′ ∈ [√n/ε_𝔣, √n]
    let (l1, u1, l2, u2) = (sn, ef * sn, sn / ef, sn);
    let pad = 1e-9 * (u1 + 1.0);
    let (l1, u1, l2, u2) = (l1 - pad, u1 + pad, l2 - pad, u2 + pad);
    let corners = [(l1, l2), (l1, u2), (u1, l2), (u1, u2)];
    let ps: Vec<f64> = corners.iter().map(|(l, m)| (l * y2 - m * x2) / det).collect();
    let pmin = ps.iter().cloned().fold(f64::INFINITY, f64::min).floor() as i64 - 1;
    let pmax = ps.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;

    let eps_f2 = &f.eps_f * &f.eps_f;
    for p in pmin..=pmax {
        let pf = p as f64;
        // λ = p·x1 + q·x2 ∈ [l1, u1] and λ′ = p·y1 + q·y2 ∈ [l2, u2]
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (coef, base, l, u) in [(x2, pf * x1, l1, u1), (y2, pf * y1, l2, u2)] {
            if coef == 0.0 {
                if base < l || base > u {
                    lo = 1.0;
                    hi = 0.0;
                }
                continue;
            }
            let (a, b) = ((l - base) / coef, (u - base) / coef);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        if lo > hi + 1.0 {
            continue;
        }
        for q in (lo.floor() as i64 - 1)..=(hi.ceil() as i64 + 1) {
            let lambda = &e1.scale(&Rational::from(p)) + &e2.scale(&Rational::from(q));
            if lambda.is_zero() || lambda.norm() != n {
                continue;
            }
            if !lambda.is_positive() || !lambda.conj().is_positive() {
                continue;
            }
            let lc = lambda.conj();
            if lambda < lc || lambda >= &eps_f2 * &lc {
                continue;
            }
            if is_ray_congruent_one(&lambda, f) {
                debug_assert_eq!(QuadIdeal::principal(&lambda).unwrap(), *c);
                return Ok(Some(lambda));
            }
        }
    }
    Ok(None)
}

/// Whether two ideals coprime to `𝔣` lie in the same narrow ray class.
pub fn same_narrow_class(a: &QuadIdeal, b: &QuadIdeal, f: &Modulus, ctx: &FieldCtx) -> Result<bool> {
    let quotient = a.mul(&b.inverse()?);
    Ok(find_generator_narrow(&quotient, f, ctx)?.is_some())
}
