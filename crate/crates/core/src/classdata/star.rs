use rug::Rational;

use super::DecompositionDatum;
use crate::cfrac::{bridge, BridgeData};
use crate::error::{domain, internal, Result};
use crate::qfield::{solve_basis, FieldCtx, Modulus, QuadElem, QuadIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn matches(self, x: &QuadElem) -> bool {
        match self {
            Sign::Plus => x.is_positive(),
            Sign::Minus => (-x).is_positive(),
        }
    }
}

/// The first `μ = 1 + p·f₁ + q·f₂ ∈ 1 + 𝔣` with the requested signs at the
/// two real places, scanning square shells `max(|p|, |q|) = R` outward.
pub fn find_mu(f: &Modulus, signs: (Sign, Sign), ctx: &FieldCtx) -> Result<QuadElem> {
    if signs.0 == signs.1 {
        return Err(domain("find_mu", "signs must be mixed"));
    }
    let d = ctx.disc();
    let [f1, f2] = f.ideal.basis();
    let one = QuadElem::one(d);
    for radius in 0i64..10_000 {
        for p in -radius..=radius {
            for q in -radius..=radius {
                if p.abs().max(q.abs()) != radius {
                    continue;
                }
                let mu = &(&one + &f1.scale(&Rational::from(p))) + &f2.scale(&Rational::from(q));
                if signs.0.matches(&mu) && signs.1.matches(&mu.conj()) {
                    return Ok(mu);
                }
            }
        }
    }
    Err(internal("no sign witness in 1 + 𝔣 within the search radius"))
}

/// Data of `𝔠* = 𝔠𝔠₂` linked to a datum through the bridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDatum {
    /// Datum of `𝔠*` with `ω*_0 = ξ_1 + 1` and `z* = zξ_1μ₂`, indexed so that
    /// `T_j` positions line up with the bridge.
    pub datum: DecompositionDatum,
    pub bridge: BridgeData,
    pub mu2: QuadElem,
}

impl StarDatum {
    pub fn z_star(&self) -> &QuadElem {
        &self.datum.z
    }
}

pub fn datum_star(d: &DecompositionDatum) -> Result<StarDatum> {
    let ctx = &d.ctx;
    let br = bridge(&d.cf, &d.omega[0])?;
    let xi1 = br.xi[1].clone();
    let b_star = d.b_ideal.scale(&xi1);
    if b_star != QuadIdeal::from_basis(&QuadElem::one(ctx.disc()), &br.omega_star)? {
        return Err(internal("𝔟* ≠ ξ_1𝔟"));
    }
    let mu2 = find_mu(&d.modulus, (Sign::Plus, Sign::Minus), ctx)?;
    let z_star = &(&d.z * &xi1) * &mu2;
    let ideal = d.ideal.scale(&mu2);
    let datum = DecompositionDatum::from_parts(ctx, &d.modulus, &ideal, &br.omega_star, &z_star)?;
    Ok(StarDatum { datum, bridge: br, mu2 })
}

fn in_lattice_one_xi(w: &QuadElem, xi: &QuadElem) -> bool {
    let one = QuadElem::one(w.disc());
    match solve_basis(w, &one, xi) {
        Some((u, v)) => u.denom() == &1 && v.denom() == &1,
        None => false,
    }
}

/// For every `j = 1..=rl`:
/// `z_{S_j} ≡ ξ_{2j} z*_{T_{j−1}} mod ⟨1, ξ_{2j}⟩` and
/// `ξ_{2j+1} z_{S_j} ≡ z*_{T_j} mod ⟨1, ξ_{2j+1}⟩`.
pub fn check_congruences(d: &DecompositionDatum, s: &StarDatum) -> bool {
    congruence_failures(d, s).is_empty()
}

/// The `j` at which either congruence fails.
pub fn congruence_failures(d: &DecompositionDatum, s: &StarDatum) -> Vec<i64> {
    let br = &s.bridge;
    let rl = d.r as i64 * br.l() as i64;
    let mut bad = Vec::new();
    for j in 1..=rl {
        let zs = d.z_at(br.s_ext(j));
        let zt0 = s.datum.z_at(br.t_ext(j - 1));
        let zt1 = s.datum.z_at(br.t_ext(j));
        let xe = br.xi_ext(2 * j);
        let xo = br.xi_ext(2 * j + 1);
        let first = in_lattice_one_xi(&(zs - &(xe * zt0)), xe);
        let second = in_lattice_one_xi(&(&(xo * zs) - zt1), xo);
        if !(first && second) {
            bad.push(j);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classdata::build_datum;
    use crate::qfield::modulus_data;

    #[test]
    fn mu_witnesses() {
        let k = FieldCtx::new(5).unwrap();
        let f = modulus_data(&QuadIdeal::principal(&k.elem(4, -1)).unwrap(), &k).unwrap();
        let m1 = find_mu(&f, (Sign::Minus, Sign::Plus), &k).unwrap();
        assert!(!m1.is_positive() && m1.conj().is_positive());
        assert!(f.ideal.contains(&(&m1 - &QuadElem::one(5))));
        // The classical witness −ε₀⁵ has the same signs and lies in 1 + 𝔣.
        let w = -k.eps0().pow(5);
        assert!(f.ideal.contains(&(&w - &QuadElem::one(5))));
        let m2 = find_mu(&Modulus::trivial(&k), (Sign::Plus, Sign::Minus), &k).unwrap();
        assert!(m2.is_positive() && !m2.conj().is_positive());
    }

    #[test]
    fn congruences_hold_and_detect_perturbation() {
        let k = FieldCtx::new(5).unwrap();
        let f = modulus_data(&QuadIdeal::principal(&k.elem(4, -1)).unwrap(), &k).unwrap();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k).unwrap();
        let s = datum_star(&d).unwrap();
        assert_eq!(s.datum.omega[0], *k.eps());
        assert_eq!(s.bridge.n(), 1);
        assert!(check_congruences(&d, &s));
        let mut bad = s.clone();
        bad.datum.zk[0] = &bad.datum.zk[0] + &QuadElem::rational(5, Rational::from((1, 7)));
        assert!(!check_congruences(&d, &bad));
    }

    #[test]
    fn star_of_d12_trivial_ray() {
        let k = FieldCtx::new(12).unwrap();
        let d = build_datum(&QuadIdeal::unit(12), &Modulus::trivial(&k), &k).unwrap();
        let s = datum_star(&d).unwrap();
        assert_eq!(s.datum.cf.period, vec![3, 2]);
        assert!(s.datum.xy.iter().all(|(x, y)| *x == 1 && *y == 0));
        assert!(check_congruences(&d, &s));
    }
}
