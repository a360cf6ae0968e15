//! Minus and plus continued fractions of reduced quadratic surds.

mod bridge;

pub use bridge::{bridge, check_markers, BridgeData};

use rug::Integer;

use crate::error::{domain, internal, Error, Result};
use crate::qfield::{FieldCtx, QuadElem, QuadIdeal};

const MAX_STEPS: usize = 100_000;

/// Purely periodic minus continued fraction `ω = b₀ − 1/(b₁ − 1/(b₂ − …))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusCF {
    pub period: Vec<i64>,
}

impl MinusCF {
    pub fn m(&self) -> usize {
        self.period.len()
    }

    /// `b_k`, extended periodically to all integers.
    pub fn b(&self, k: i64) -> i64 {
        self.period[k.rem_euclid(self.m() as i64) as usize]
    }
}

/// Purely periodic regular continued fraction, stored with even period `2l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusCF {
    pub period: Vec<i64>,
}

impl PlusCF {
    pub fn l(&self) -> usize {
        self.period.len() / 2
    }

    pub fn a(&self, j: i64) -> i64 {
        self.period[j.rem_euclid(self.period.len() as i64) as usize]
    }
}

/// `0 < ω′ < 1 < ω`.
pub fn is_reduced(omega: &QuadElem) -> bool {
    reduced_violation(omega).is_none()
}

fn reduced_violation(omega: &QuadElem) -> Option<&'static str> {
    let d = omega.disc();
    let c = omega.conj();
    if omega.is_rational() {
        Some("ω must be irrational")
    } else if *omega <= QuadElem::one(d) {
        Some("ω > 1 fails")
    } else if c <= QuadElem::zero(d) {
        Some("ω′ > 0 fails")
    } else if c >= QuadElem::one(d) {
        Some("ω′ < 1 fails")
    } else {
        None
    }
}

fn to_i64(n: Integer, op: &'static str) -> Result<i64> {
    n.to_i64().ok_or_else(|| domain(op, "partial quotient overflows i64"))
}

pub fn minus_cf(omega: &QuadElem) -> Result<MinusCF> {
    if let Some(why) = reduced_violation(omega) {
        return Err(domain("minus_cf", format!("{omega} is not reduced: {why}")));
    }
    let mut period = Vec::new();
    let mut w = omega.clone();
    for _ in 0..MAX_STEPS {
        let b = w.ceil();
        let bq = QuadElem::rational(w.disc(), b.clone());
        period.push(to_i64(b, "minus_cf")?);
        w = (&bq - &w).inv()?;
        if w == *omega {
            return Ok(MinusCF { period });
        }
    }
    Err(Error::NoConvergence { op: "minus_cf", iters: MAX_STEPS })
}

/// Regular continued fraction of a purely periodic `ξ` (`ξ > 1`, `−1 < ξ′ < 0`).
/// An odd minimal period is doubled.
pub fn plus_cf(xi: &QuadElem) -> Result<PlusCF> {
    let d = xi.disc();
    let c = xi.conj();
    if xi.is_rational() || *xi <= QuadElem::one(d) || c >= QuadElem::zero(d) || c <= QuadElem::rational(d, -1) {
        return Err(domain("plus_cf", format!("{xi} is not purely periodic (need ξ > 1 and −1 < ξ′ < 0)")));
    }
    let mut period = Vec::new();
    let mut x = xi.clone();
    for _ in 0..MAX_STEPS {
        let a = x.floor();
        let aq = QuadElem::rational(d, a.clone());
        period.push(to_i64(a, "plus_cf")?);
        x = (&x - &aq).inv()?;
        if x == *xi {
            if period.len() % 2 == 1 {
                let again = period.clone();
                period.extend(again);
            }
            return Ok(PlusCF { period });
        }
    }
    Err(Error::NoConvergence { op: "plus_cf", iters: MAX_STEPS })
}

/// `ω_0, …, ω_{count−1}` with `ω_{k+1} = 1/(b_k − ω_k)`.
pub fn omega_sequence(cf: &MinusCF, omega: &QuadElem, count: usize) -> Result<Vec<QuadElem>> {
    let d = omega.disc();
    let mut out = Vec::with_capacity(count);
    let mut w = omega.clone();
    for k in 0..count {
        let b = cf.b(k as i64);
        if w.ceil() != b {
            return Err(domain("omega_sequence", format!("ω_{k} = {w} does not match b_{k} = {b}")));
        }
        let next = (&QuadElem::rational(d, b) - &w).inv()?;
        out.push(w);
        w = next;
    }
    Ok(out)
}

/// `A_0, …, A_count` with `A_0 = 1`, `A_{−1} = ω_0` and
/// `A_{k+1} = b_k A_k − A_{k−1} = A_k/ω_{k+1}`; both forms are checked.
pub fn a_sequence(cf: &MinusCF, omega: &QuadElem, count: usize) -> Result<Vec<QuadElem>> {
    let d = omega.disc();
    let omegas = omega_sequence(cf, omega, count + 1)?;
    let mut out = Vec::with_capacity(count + 1);
    let mut prev = omega.clone();
    let mut cur = QuadElem::one(d);
    out.push(cur.clone());
    for k in 0..count {
        let next = &(&QuadElem::rational(d, cf.b(k as i64)) * &cur) - &prev;
        if next != &cur / &omegas[k + 1] {
            return Err(internal(format!("A_{} recurrences disagree", k + 1)));
        }
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    Ok(out)
}

/// `αβ′ − α′β = t·√D`; returns the sign of `t`.
fn orientation(alpha: &QuadElem, beta: &QuadElem) -> std::cmp::Ordering {
    let t = &(alpha * &beta.conj()) - &(&alpha.conj() * beta);
    t.b().cmp0()
}

/// Writes `c = q·⟨1, ω⟩` with `q ≫ 0` and `ω` reduced, preferring `ω > 2`.
///
/// Starting from a positively oriented basis, the minus continued fraction
/// steps `P_{k+1} = b_k P_k − P_{k−1}` keep the lattice and the orientation;
/// once `P_{k−1}/P_k` is reduced the orientation forces `P_k ≫ 0`.
pub fn reduce_ideal(c: &QuadIdeal, ctx: &FieldCtx) -> Result<(QuadElem, QuadElem)> {
    let d = ctx.disc();
    if c.disc() != d {
        return Err(domain("reduce_ideal", "ideal belongs to a different field"));
    }
    let [mut alpha, mut beta] = c.basis();
    if !alpha.is_positive() {
        alpha = -alpha;
    }
    if orientation(&alpha, &beta) == std::cmp::Ordering::Greater {
        beta = -beta;
    }
    let (mut prev, mut cur) = (beta, alpha);
    let mut steps = 0;
    let mut w = &prev / &cur;
    while !is_reduced(&w) {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::NoConvergence { op: "reduce_ideal", iters: MAX_STEPS });
        }
        let b = QuadElem::rational(d, w.ceil());
        let next = &(&b * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
        w = &prev / &cur;
    }
    // Rotate to the first cycle member exceeding 2.
    let cf = minus_cf(&w)?;
    if let Some(k) = cf.period.iter().position(|&b| b >= 3) {
        let a = a_sequence(&cf, &w, k)?;
        cur = &cur * &a[k];
        w = omega_sequence(&cf, &w, k + 1)?.pop().expect("k + 1 entries");
    }
    if !cur.is_totally_positive()? {
        return Err(internal(format!("reduction produced a scale {cur} that is not totally positive")));
    }
    let check = QuadIdeal::from_basis(&cur, &(&cur * &w))?;
    if check != *c {
        return Err(internal("reduction changed the lattice"));
    }
    Ok((cur, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn minus_cf_examples() {
        assert_eq!(minus_cf(&QuadElem::new(5, q(3, 2), q(1, 2))).unwrap().period, vec![3]);
        assert_eq!(minus_cf(&QuadElem::new(12, 2, q(1, 2))).unwrap().period, vec![4]);
        assert_eq!(minus_cf(&QuadElem::new(13, q(5, 2), q(1, 2))).unwrap().period, vec![5, 2, 2]);
    }

    #[test]
    fn minus_cf_rejects_unreduced() {
        let err = minus_cf(&QuadElem::new(5, q(1, 2), q(1, 2))).unwrap_err();
        assert!(format!("{err}").contains("ω′ > 0"), "{err}");
        let err = minus_cf(&QuadElem::new(5, 0, q(1, 5))).unwrap_err();
        assert!(format!("{err}").contains("ω > 1"), "{err}");
    }

    #[test]
    fn plus_cf_examples() {
        assert_eq!(plus_cf(&QuadElem::new(5, q(1, 2), q(1, 2))).unwrap().period, vec![1, 1]);
        assert_eq!(plus_cf(&QuadElem::new(12, 1, q(1, 2))).unwrap().period, vec![2, 1]);
        assert_eq!(plus_cf(&QuadElem::new(8, 1, q(1, 2))).unwrap().period, vec![2, 2]);
        assert!(plus_cf(&QuadElem::new(8, 0, q(1, 2))).is_err());
    }

    #[test]
    fn omega_and_a_sequences() {
        let w = QuadElem::new(13, q(5, 2), q(1, 2));
        let cf = minus_cf(&w).unwrap();
        let ws = omega_sequence(&cf, &w, 4).unwrap();
        assert_eq!(ws[1], QuadElem::new(13, q(5, 6), q(1, 6)));
        assert_eq!(ws[2], QuadElem::new(13, q(7, 6), q(1, 6)));
        assert_eq!(ws[3], ws[0]);

        let e = QuadElem::new(5, q(3, 2), q(1, 2));
        let a = a_sequence(&minus_cf(&e).unwrap(), &e, 1).unwrap();
        assert_eq!(a[0], QuadElem::one(5));
        assert_eq!(a[1], QuadElem::new(5, q(3, 2), q(-1, 2)));

        let w12 = QuadElem::new(12, 2, q(1, 2));
        let a = a_sequence(&minus_cf(&w12).unwrap(), &w12, 1).unwrap();
        assert_eq!(a[1], QuadElem::new(12, 2, q(-1, 2)));
    }

    #[test]
    fn reduce_examples() {
        let k = FieldCtx::new(5).unwrap();
        let e = k.eps().clone();
        let c = QuadIdeal::from_basis(&QuadElem::one(5), &e).unwrap();
        let (q0, w) = reduce_ideal(&c, &k).unwrap();
        assert_eq!(w, e);
        assert_eq!(QuadIdeal::from_basis(&q0, &(&q0 * &w)).unwrap(), c);

        let f = QuadIdeal::principal(&k.elem(4, -1)).unwrap();
        let finv = f.inverse().unwrap();
        let (q1, w1) = reduce_ideal(&finv, &k).unwrap();
        assert!(is_reduced(&w1));
        assert!(q1.is_totally_positive().unwrap());
        assert_eq!(QuadIdeal::from_basis(&q1, &(&q1 * &w1)).unwrap(), finv);
    }
}
