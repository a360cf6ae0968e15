use rug::Rational;

use crate::error::{domain, Result};
use crate::qfield::{find_generator_narrow, FieldCtx, Modulus, QuadElem, QuadIdeal};

/// Integral ideals of norm exactly `n`, in a fixed order.
///
/// Every such ideal has a basis `⟨a, b + cθ⟩` with `ac = n`, `0 ≤ b < a`;
/// the candidates are filtered by the O_K-module test.
pub fn integral_ideals_of_norm(ctx: &FieldCtx, n: u64) -> Vec<QuadIdeal> {
    let d = ctx.disc();
    let theta = ctx.theta();
    let mut out = Vec::new();
    for c in 1..=n {
        if !n.is_multiple_of(c) {
            continue;
        }
        let a = n / c;
        for b in 0..a {
            let gen2 = &QuadElem::rational(d, b) + &theta.scale(&Rational::from(c));
            let lat = QuadIdeal::from_basis(&QuadElem::rational(d, a), &gen2).expect("rank 2");
            if lat.is_fractional_ideal() {
                out.push(lat);
            }
        }
    }
    out
}

/// Representatives of the narrow ray classes met by integral ideals of norm
/// at most `norm_bound` coprime to `𝔣`, starting with `O_K`.
pub fn enumerate_ray_classes(f: &Modulus, ctx: &FieldCtx, norm_bound: u64) -> Result<Vec<QuadIdeal>> {
    if norm_bound == 0 {
        return Err(domain("enumerate_ray_classes", "norm bound must be positive"));
    }
    let mut reps: Vec<QuadIdeal> = Vec::new();
    let mut inverses: Vec<QuadIdeal> = Vec::new();
    for n in 1..=norm_bound {
        for a in integral_ideals_of_norm(ctx, n) {
            if !a.is_coprime_to(&f.ideal) {
                continue;
            }
            let mut new = true;
            for inv in &inverses {
                if find_generator_narrow(&a.mul(inv), f, ctx)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                inverses.push(a.inverse()?);
                reps.push(a);
            }
        }
    }
    Ok(reps)
}

/// Enumerated class representatives with a class lookup.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    pub ctx: FieldCtx,
    pub modulus: Modulus,
    pub reps: Vec<QuadIdeal>,
}

impl RayClassGroup {
    pub fn new(f: &Modulus, ctx: &FieldCtx, norm_bound: u64) -> Result<Self> {
        let reps = enumerate_ray_classes(f, ctx, norm_bound)?;
        Ok(RayClassGroup { ctx: ctx.clone(), modulus: f.clone(), reps })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the representative narrowly equivalent to `a` modulo `𝔣`.
    pub fn index_of(&self, a: &QuadIdeal) -> Result<Option<usize>> {
        for (i, rep) in self.reps.iter().enumerate() {
            if find_generator_narrow(&a.mul(&rep.inverse()?), &self.modulus, &self.ctx)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::modulus_data;

    #[test]
    fn ideal_counts_match_splitting() {
        // D = 5: 11 splits, 2 is inert, 5 ramifies.
        let k = FieldCtx::new(5).unwrap();
        assert_eq!(integral_ideals_of_norm(&k, 11).len(), 2);
        assert_eq!(integral_ideals_of_norm(&k, 2).len(), 0);
        assert_eq!(integral_ideals_of_norm(&k, 4).len(), 1);
        assert_eq!(integral_ideals_of_norm(&k, 5).len(), 1);
        assert_eq!(integral_ideals_of_norm(&k, 1), vec![QuadIdeal::unit(5)]);
    }

    #[test]
    fn class_counts() {
        let k5 = FieldCtx::new(5).unwrap();
        assert_eq!(enumerate_ray_classes(&Modulus::trivial(&k5), &k5, 20).unwrap().len(), 1);
        let k12 = FieldCtx::new(12).unwrap();
        assert_eq!(enumerate_ray_classes(&Modulus::trivial(&k12), &k12, 20).unwrap().len(), 2);
        let f = modulus_data(&QuadIdeal::principal(&k5.elem(4, -1)).unwrap(), &k5).unwrap();
        assert_eq!(enumerate_ray_classes(&f, &k5, 20).unwrap().len(), 2);
        let k40 = FieldCtx::new(40).unwrap();
        assert_eq!(enumerate_ray_classes(&Modulus::trivial(&k40), &k40, 20).unwrap().len(), 2);
    }
}
