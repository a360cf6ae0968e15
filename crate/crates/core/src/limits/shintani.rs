use num_complex::Complex64;
use rug::{Float, Rational};

use super::ShintaniInvariants;
use crate::classdata::{DecompositionDatum, StarDatum};
use crate::error::{domain, internal, Result};
use crate::qfield::{solve_basis, QuadElem};
use crate::specfun::{t1, t2, Barnes, Precision};

/// `X₁ = Π 𝒮(ω_k, z_k)`, `X₂ = Π 𝒮(ω_k′, z_k′)`, `X = X₁X₂`.
///
/// Since `x_k ∈ (0, 1]` and `y_k ∈ [0, 1)`, both `z_k` and `z_k′` already lie
/// in the open strips `(0, 1 + ω_k)` and `(0, 1 + ω_k′)`.
pub fn shintani_x(d: &DecompositionDatum, prec: Precision) -> Result<ShintaniInvariants> {
    let wp = prec.working();
    let ep = wp + 32;
    let mut x1 = Float::with_val(wp, 1);
    let mut x2 = Float::with_val(wp, 1);
    for (w, z) in d.omega.iter().zip(&d.zk) {
        x1 *= Barnes::new(&w.to_float(ep), prec)?.sine(&z.to_float(ep))?;
        x2 *= Barnes::new(&w.conj().to_float(ep), prec)?.sine(&z.conj().to_float(ep))?;
    }
    let x = Float::with_val(prec.bits(), &x1 * &x2);
    Ok(ShintaniInvariants { x, x1: Float::with_val(prec.bits(), x1), x2: Float::with_val(prec.bits(), x2) })
}

// (u, v) with z = uω + v, exactly.
fn coords(z: &QuadElem, omega: &QuadElem) -> Result<(Rational, Rational)> {
    solve_basis(z, omega, &QuadElem::one(z.disc())).ok_or_else(|| internal("ω is rational"))
}

fn t1_at(omega: &QuadElem, z: &QuadElem, prec: Precision) -> Result<Float> {
    let (u, v) = coords(z, omega)?;
    t1(omega, &u, &v, prec)
}

fn t2_at(omega: &QuadElem, z: &QuadElem, prec: Precision) -> Result<Float> {
    let (u, v) = coords(z, omega)?;
    t2(omega, &u, &v, prec)
}

/// `X₁` and `X₂` through the bridge:
///
/// `X₁ = Π_j 𝒯₁(ξ_{2j}, z_{S_j}) / 𝒯₁(1/ξ_{2j+1}, z_{S_j})`,
/// `X₂ = Π_j 𝒯₂(−1/ξ′_{2j+1}, z′_{S_j}) / 𝒯₂(−ξ′_{2j}, z′_{S_j})`,
/// over `j = 1..=rl`.
///
/// Conjugate-side arguments are formed as field elements whose conjugates
/// are the required reals. When `𝔣 = O_K` the first `𝒯₁` sits at its pole
/// and the error is returned unchanged.
pub fn shintani_x_bridge(d: &DecompositionDatum, s: &StarDatum, prec: Precision) -> Result<(Float, Float)> {
    let br = &s.bridge;
    let wp = prec.working();
    let m = d.cf.m() as i64;
    let span = br.s[br.l()];
    if span % m != 0 {
        return Err(internal("S_l is not a multiple of m"));
    }
    // The product over rl factors covers S_l/m periods of the datum.
    let cover = (span / m) as u32;
    let rl = d.r as i64 * br.l() as i64;
    let mut x1 = Float::with_val(wp, 1);
    let mut x2 = Float::with_val(wp, 1);
    for j in 1..=rl {
        let z = d.z_at(br.s_ext(j));
        let xe = br.xi_ext(2 * j);
        let xo = br.xi_ext(2 * j + 1);
        x1 *= t1_at(xe, z, prec)?;
        x1 /= t1_at(&xo.inv()?, z, prec)?;
        let zc = z.conj();
        let neg_inv_xo = (-xo.inv()?).conj();
        let neg_xe = (-xe).conj();
        x2 *= t2_at(&neg_inv_xo, &zc, prec)?;
        x2 /= t2_at(&neg_xe, &zc, prec)?;
    }
    if cover > 1 {
        x1 = x1.root(cover);
        x2 = x2.root(cover);
    }
    Ok((Float::with_val(prec.bits(), x1), Float::with_val(prec.bits(), x2)))
}

/// `(X₁(𝔠)X₁(𝔠*) − 1, X₂(𝔠)/X₂(𝔠*) − 1)`, both from the cone products.
pub fn check_star_theorem(d: &DecompositionDatum, s: &StarDatum, prec: Precision) -> Result<(Float, Float)> {
    let a = shintani_x(d, prec)?;
    let b = shintani_x(&s.datum, prec)?;
    let wp = prec.working();
    let r1 = Float::with_val(wp, &a.x1 * &b.x1) - 1u32;
    let r2 = Float::with_val(wp, &a.x2 / &b.x2) - 1u32;
    Ok((Float::with_val(prec.bits(), r1), Float::with_val(prec.bits(), r2)))
}

/// Which factor of `X` enters a character sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    X1,
    X2,
}

/// `Σ_𝔠 χ⁻¹(𝔠) log X_i(𝔠)` over a complete table of classes; `χ⁻¹ = χ̄`
/// since the values are roots of unity.
pub fn character_sum_logx(invariants: &[ShintaniInvariants], chi: &[Complex64], which: Which) -> Result<Complex64> {
    if invariants.is_empty() || invariants.len() != chi.len() {
        return Err(domain(
            "character_sum_logx",
            format!("character table has {} values for {} classes", chi.len(), invariants.len()),
        ));
    }
    if chi.iter().any(|c| (c.norm() - 1.0).abs() > 1e-12) {
        return Err(domain("character_sum_logx", "character values must have modulus 1"));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (inv, c) in invariants.iter().zip(chi) {
        let v = match which {
            Which::X1 => &inv.x1,
            Which::X2 => &inv.x2,
        };
        if *v <= 0 {
            return Err(domain("character_sum_logx", "X_i must be positive"));
        }
        total += c.conj() * v.to_f64().ln();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classdata::{build_datum, datum_star};
    use crate::error::Error;
    use crate::qfield::{modulus_data, FieldCtx, Modulus, QuadIdeal};

    fn d5_pair() -> (DecompositionDatum, StarDatum) {
        let k = FieldCtx::new(5).unwrap();
        let f = modulus_data(&QuadIdeal::principal(&k.elem(4, -1)).unwrap(), &k).unwrap();
        let d = build_datum(&QuadIdeal::unit(5), &f, &k).unwrap();
        let s = datum_star(&d).unwrap();
        (d, s)
    }

    #[test]
    fn golden_invariants() {
        let (d, _) = d5_pair();
        let inv = shintani_x(&d, Precision::DEFAULT).unwrap();
        assert!((inv.x2.to_f64() - 1.0).abs() < 1e-12, "{}", inv.x2);
        // ((3+√5)/2 − √((3√5−1)/2))/2, evaluated independently.
        assert!((inv.x.to_f64() - 0.464_312_613_208_126_95).abs() < 1e-12, "{}", inv.x);
    }

    #[test]
    fn bridge_route_and_star_theorem() {
        let (d, s) = d5_pair();
        let p = Precision::DEFAULT;
        let inv = shintani_x(&d, p).unwrap();
        let (b1, b2) = shintani_x_bridge(&d, &s, p).unwrap();
        assert!((b1.to_f64() - inv.x1.to_f64()).abs() < 1e-12);
        assert!((b2.to_f64() - inv.x2.to_f64()).abs() < 1e-12);
        let (r1, r2) = check_star_theorem(&d, &s, p).unwrap();
        assert!(r1.to_f64().abs() < 1e-12 && r2.to_f64().abs() < 1e-12);
    }

    #[test]
    fn trivial_ray_is_degenerate() {
        let k = FieldCtx::new(5).unwrap();
        let d = build_datum(&QuadIdeal::unit(5), &Modulus::trivial(&k), &k).unwrap();
        let p = Precision::DEFAULT;
        let inv = shintani_x(&d, p).unwrap();
        assert!((inv.x.to_f64() - 1.0).abs() < 1e-15);
        let eps = k.eps().to_f64();
        assert!((inv.x1.to_f64() - eps.powf(-0.5)).abs() < 1e-15);
        let s = datum_star(&d).unwrap();
        assert!(matches!(shintani_x_bridge(&d, &s, p), Err(Error::Singular { .. })));
        let (r1, _) = check_star_theorem(&d, &s, p).unwrap();
        assert!((r1.to_f64() - (1.0 / eps - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn character_sums() {
        let inv = ShintaniInvariants {
            x: Float::with_val(64, 1),
            x1: Float::with_val(64, 2),
            x2: Float::with_val(64, 0.5),
        };
        let one = [Complex64::new(1.0, 0.0)];
        let v = character_sum_logx(std::slice::from_ref(&inv), &one, Which::X1).unwrap();
        assert!((v.re - 2f64.ln()).abs() < 1e-15);
        assert!(character_sum_logx(std::slice::from_ref(&inv), &[], Which::X1).is_err());
        let i = [Complex64::new(0.0, 1.0)];
        let a = character_sum_logx(std::slice::from_ref(&inv), &i, Which::X2).unwrap();
        let b = character_sum_logx(&[inv], &[i[0].conj()], Which::X2).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }
}
