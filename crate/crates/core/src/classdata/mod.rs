//! Decomposition data of narrow ray classes and the derived classes
//! `𝔠̄ = 𝔠𝔠₁𝔠₂` and `𝔠* = 𝔠𝔠₂`.

mod classes;
mod star;

pub use classes::{enumerate_ray_classes, integral_ideals_of_norm, RayClassGroup};
pub use star::{check_congruences, datum_star, find_mu, Sign, StarDatum};

use rug::{Integer, Rational};

use crate::cfrac::{a_sequence, minus_cf, omega_sequence, reduce_ideal, MinusCF};
use crate::error::{domain, internal, Result};
use crate::qfield::{frac_angle, frac_brace, solve_basis, FieldCtx, Modulus, QuadElem, QuadIdeal};

/// The periodic data `{(ω_k, A_k, x_k, y_k)}` attached to a narrow ray class.
///
/// Indices run over one full period `k = 0..rm`; index `rm` of the cone
/// decomposition is identified with index 0 by periodicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionDatum {
    pub ctx: FieldCtx,
    pub modulus: Modulus,
    /// Integral representative `𝔞` of the class.
    pub ideal: QuadIdeal,
    /// `𝔟 = ⟨1, ω_0⟩ = (z)𝔞⁻¹𝔣`.
    pub b_ideal: QuadIdeal,
    pub z: QuadElem,
    pub cf: MinusCF,
    pub r: u32,
    /// `ω_0, …, ω_{rm−1}`.
    pub omega: Vec<QuadElem>,
    /// `A_0, …, A_{rm}`; `A_{−1} = ω_0`.
    pub a: Vec<QuadElem>,
    /// `(x_k, y_k)` for `k = 0..rm`.
    pub xy: Vec<(Rational, Rational)>,
    /// `z_k = x_k ω_k + y_k`.
    pub zk: Vec<QuadElem>,
}

impl DecompositionDatum {
    /// Number of cone cells, `rm`.
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    fn idx(&self, k: i64) -> usize {
        k.rem_euclid(self.len() as i64) as usize
    }

    pub fn b(&self, k: i64) -> i64 {
        self.cf.b(k)
    }

    pub fn omega_at(&self, k: i64) -> &QuadElem {
        &self.omega[self.idx(k)]
    }

    pub fn xy_at(&self, k: i64) -> &(Rational, Rational) {
        &self.xy[self.idx(k)]
    }

    pub fn z_at(&self, k: i64) -> &QuadElem {
        &self.zk[self.idx(k)]
    }

    /// `A_k` for `−1 ≤ k ≤ rm`.
    pub fn a_at(&self, k: i64) -> &QuadElem {
        if k == -1 {
            &self.omega[0]
        } else {
            &self.a[k as usize]
        }
    }

    /// Assembles the datum for a given reduced `ω_0` and scale `z`, with no
    /// choice of offset.
    pub fn from_parts(ctx: &FieldCtx, modulus: &Modulus, ideal: &QuadIdeal, omega0: &QuadElem, z: &QuadElem) -> Result<Self> {
        let d = ctx.disc();
        let cf = minus_cf(omega0)?;
        let r = modulus.r;
        let n = r as usize * cf.m();
        let omega = omega_sequence(&cf, omega0, n)?;
        let a = a_sequence(&cf, omega0, n)?;
        if a[n] != modulus.eps_f.inv()? {
            return Err(internal("A_{rm} differs from ε_𝔣⁻¹"));
        }
        if !z.is_totally_positive()? {
            return Err(internal(format!("z = {z} is not totally positive")));
        }
        let b_ideal = QuadIdeal::from_basis(&QuadElem::one(d), omega0)?;
        let expected = QuadIdeal::principal(z)?.mul(&ideal.inverse()?).mul(&modulus.ideal);
        if expected != b_ideal {
            return Err(internal("𝔟 ≠ (z)𝔞⁻¹𝔣"));
        }
        let mut xy = Vec::with_capacity(n);
        let mut zk = Vec::with_capacity(n);
        for k in 0..n {
            let prev = if k == 0 { omega0 } else { &a[k - 1] };
            let (u, v) = solve_basis(z, prev, &a[k]).ok_or_else(|| internal("A_{k−1}, A_k dependent"))?;
            let (x, y) = (frac_angle(&u), frac_brace(&v));
            zk.push(&omega[k].scale(&x) + &QuadElem::rational(d, y.clone()));
            xy.push((x, y));
        }
        let datum = DecompositionDatum {
            ctx: ctx.clone(),
            modulus: modulus.clone(),
            ideal: ideal.clone(),
            b_ideal,
            z: z.clone(),
            cf,
            r,
            omega,
            a,
            xy,
            zk,
        };
        datum.check_recurrence()?;
        Ok(datum)
    }

    /// `x_{k+1} = ⟨b_k x_k + y_k⟩`, `y_{k+1} = 1 − x_k`.
    fn check_recurrence(&self) -> Result<()> {
        for k in 0..self.len() as i64 {
            let (x, y) = self.xy_at(k);
            let (x1, y1) = self.xy_at(k + 1);
            let nx = frac_angle(&(Rational::from(x * self.b(k)) + y));
            let ny = Rational::from(1 - x);
            if nx != *x1 || ny != *y1 {
                return Err(internal(format!("coordinate recurrence fails at k = {k}")));
            }
        }
        Ok(())
    }

    /// The datum re-indexed to start at cycle position `o`.
    pub fn shifted(&self, o: usize) -> Result<Self> {
        let o = o % self.len();
        let z = &self.z / &self.a[o];
        Self::from_parts(&self.ctx, &self.modulus, &self.ideal, &self.omega[o], &z)
    }

    fn offset_key(&self, o: usize) -> (Vec<i64>, Vec<(Rational, Rational)>) {
        let m = self.cf.m();
        let word = (0..m).map(|i| self.b((o + i) as i64)).collect();
        let seq = (0..self.len()).map(|i| self.xy_at((o + i) as i64).clone()).collect();
        (word, seq)
    }
}

/// The datum of the class of `𝔞` modulo `𝔣`.
///
/// The offset is canonical: among positions with `ω_k > 2`, the one with the
/// lexicographically least period word `(b_k, …, b_{k+m−1})`, then the least
/// coordinate sequence `((x_k, y_k), …)`.
pub fn build_datum(a: &QuadIdeal, f: &Modulus, ctx: &FieldCtx) -> Result<DecompositionDatum> {
    if !a.is_integral() {
        return Err(domain("build_datum", "representative must be an integral ideal"));
    }
    if !a.is_coprime_to(&f.ideal) {
        return Err(domain("build_datum", "representative must be coprime to the modulus"));
    }
    let lattice = a.inverse()?.mul(&f.ideal);
    let (q, omega) = reduce_ideal(&lattice, ctx)?;
    let z = q.inv()?;
    let base = DecompositionDatum::from_parts(ctx, f, a, &omega, &z)?;
    let best = (0..base.len())
        .filter(|&o| base.b(o as i64) >= 3)
        .min_by(|&i, &j| base.offset_key(i).cmp(&base.offset_key(j)))
        .ok_or_else(|| internal("reduced cycle has no ω_k > 2"))?;
    if best == 0 {
        Ok(base)
    } else {
        base.shifted(best)
    }
}

/// Data of `𝔠̄`: coordinates `(⟨−x_k⟩, {−y_k})` on the same `ω_k`.
pub fn datum_bar(d: &DecompositionDatum) -> Result<DecompositionDatum> {
    let dd = d.ctx.disc();
    let (x0, y0) = d.xy_at(0);
    let xb = frac_angle(&Rational::from(-x0));
    let yb = frac_brace(&Rational::from(-y0));
    let zbar = &d.omega[0].scale(&xb) + &QuadElem::rational(dd, yb);
    // (z̄)𝔟⁻¹𝔣 is an integral ideal in the class of 𝔠̄.
    let ideal = QuadIdeal::principal(&zbar)?.mul(&d.b_ideal.inverse()?).mul(&d.modulus.ideal);
    DecompositionDatum::from_parts(&d.ctx, &d.modulus, &ideal, &d.omega[0], &zbar)
}

/// All cells `(k, p, q)`, `k ∈ 1..=rm`, with `β = (x_k+p)A_{k−1} + (y_k+q)A_k`.
pub fn cone_cells(beta: &QuadElem, d: &DecompositionDatum) -> Vec<(usize, Integer, Integer)> {
    let n = d.len();
    let mut out = Vec::new();
    for k in 1..=n {
        let Some((pp, qq)) = solve_basis(beta, d.a_at(k as i64 - 1), d.a_at(k as i64)) else {
            continue;
        };
        if pp <= 0 || qq < 0 {
            continue;
        }
        let (x, y) = d.xy_at(k as i64);
        let p = Rational::from(&pp - x);
        let q = Rational::from(&qq - y);
        if p.denom() == &1 && q.denom() == &1 && p >= 0 && q >= 0 {
            out.push((k, p.numer().clone(), q.numer().clone()));
        }
    }
    out
}

/// Coordinates of `β` in `(1, ε_𝔣⁻¹)`.
pub fn domain_coords(beta: &QuadElem, d: &DecompositionDatum) -> Result<(Rational, Rational)> {
    let one = QuadElem::one(d.ctx.disc());
    solve_basis(beta, &one, &d.modulus.eps_f.inv()?).ok_or_else(|| internal("1 and ε_𝔣⁻¹ are dependent"))
}

/// The unique cone cell containing `β ∈ (z + 𝔟) ∩ X`.
pub fn cone_locate(beta: &QuadElem, d: &DecompositionDatum) -> Result<(usize, Integer, Integer)> {
    if !d.b_ideal.contains(&(beta - &d.z)) {
        return Err(domain("cone_locate", "β is not in z + 𝔟"));
    }
    let (x, y) = domain_coords(beta, d)?;
    if x <= 0 || y < 0 {
        return Err(domain("cone_locate", "β lies outside the fundamental domain X"));
    }
    let mut cells = cone_cells(beta, d);
    if cells.len() != 1 {
        return Err(internal(format!("β lies in {} cells", cells.len())));
    }
    Ok(cells.pop().expect("one cell"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn golden_setup() -> (FieldCtx, Modulus) {
        let k = FieldCtx::new(5).unwrap();
        let f = crate::qfield::modulus_data(&QuadIdeal::principal(&k.elem(4, -1)).unwrap(), &k).unwrap();
        (k, f)
    }

    #[test]
    fn golden_table() {
        let (k, f) = golden_setup();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k).unwrap();
        let want = [(2, 1), (7, 9), (8, 4), (6, 3), (10, 5)];
        assert_eq!(d.len(), 5);
        for (i, (x, y)) in want.iter().enumerate() {
            assert_eq!(d.xy[i], (q(*x, 11), q(*y, 11)), "k = {i}");
            assert_eq!(d.omega[i], *k.eps());
        }
        assert_eq!(d.cf.period, vec![3]);
    }

    #[test]
    fn trivial_rays() {
        for dd in [5i64, 12, 13] {
            let k = FieldCtx::new(dd).unwrap();
            let d = build_datum(&QuadIdeal::unit(dd as u64), &Modulus::trivial(&k), &k).unwrap();
            assert!(d.xy.iter().all(|(x, y)| *x == 1 && *y == 0), "D = {dd}");
        }
        let k = FieldCtx::new(12).unwrap();
        let d = build_datum(&QuadIdeal::unit(12), &Modulus::trivial(&k), &k).unwrap();
        assert_eq!(d.cf.period, vec![4]);
    }

    #[test]
    fn bar_coordinates() {
        let (k, f) = golden_setup();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k).unwrap();
        let b = datum_bar(&d).unwrap();
        assert_eq!(b.xy[0], (q(9, 11), q(10, 11)));
        assert!(b.ideal.is_integral());
        let bb = datum_bar(&b).unwrap();
        assert_eq!(bb.xy, d.xy);
    }

    #[test]
    fn locate_z() {
        let (k, f) = golden_setup();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k).unwrap();
        // z itself sits in the cell spanned by A_{−1}, A_0, the ε_𝔣-image of
        // the last cell of X; its translate ε_𝔣⁻¹z lies in X.
        assert!(cone_locate(&d.z, &d).is_err());
        let inside = &d.z / &f.eps_f;
        let (cell, p, qq) = cone_locate(&inside, &d).unwrap();
        assert_eq!(cell, d.len());
        assert_eq!(d.xy_at(cell as i64), &(q(2, 11), q(1, 11)));
        assert_eq!((p, qq), (Integer::new(), Integer::new()));
        let outside = &d.z * &f.eps_f;
        assert!(cone_locate(&outside, &d).is_err());
    }
}
