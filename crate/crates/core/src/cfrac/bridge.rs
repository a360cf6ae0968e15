use super::{minus_cf, plus_cf, MinusCF};
use crate::error::{domain, internal, Result};
use crate::qfield::QuadElem;

/// Plus continued fraction data interleaving the minus expansions of `ω_0`
/// and of `ω* = ξ_1 + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeData {
    /// `a_0, …, a_{2l−1}`.
    pub a: Vec<i64>,
    /// `S_0, …, S_l`.
    pub s: Vec<i64>,
    /// `T_0, …, T_l`.
    pub t: Vec<i64>,
    /// `ξ_0, …, ξ_{2l}`.
    pub xi: Vec<QuadElem>,
    pub omega_star: QuadElem,
    pub c_period: Vec<i64>,
}

impl BridgeData {
    pub fn l(&self) -> usize {
        self.a.len() / 2
    }

    pub fn n(&self) -> usize {
        self.c_period.len()
    }

    fn ext(v: &[i64], l: usize, j: i64) -> i64 {
        let l = l as i64;
        let (q, r) = (j.div_euclid(l), j.rem_euclid(l));
        v[r as usize] + q * v[l as usize]
    }

    /// `S_j` for any `j`, using `S_{j+l} = S_j + S_l`.
    pub fn s_ext(&self, j: i64) -> i64 {
        Self::ext(&self.s, self.l(), j)
    }

    pub fn t_ext(&self, j: i64) -> i64 {
        Self::ext(&self.t, self.l(), j)
    }

    /// `ξ_j`, periodic with period `2l`.
    pub fn xi_ext(&self, j: i64) -> &QuadElem {
        &self.xi[j.rem_euclid(self.a.len() as i64) as usize]
    }
}

/// Builds the bridge for a minus expansion with `ω_0 > 2` and verifies the
/// marker correspondence `b_{S_j} = a_{2j} + 2`, `c_{T_j} = a_{2j+1} + 2`,
/// all other `b_k, c_k` equal to 2.
pub fn bridge(cf: &MinusCF, omega0: &QuadElem) -> Result<BridgeData> {
    let d = omega0.disc();
    if cf.period.iter().all(|&b| b == 2) {
        return Err(domain("bridge", "every b_k equals 2; no cycle member exceeds 2"));
    }
    if *omega0 <= QuadElem::rational(d, 2) {
        return Err(domain("bridge", format!("need ω_0 > 2, got {omega0}; shift the cycle first")));
    }
    let one = QuadElem::one(d);
    let xi0 = omega0 - &one;
    let pcf = plus_cf(&xi0)?;
    let a = pcf.period.clone();
    let l = pcf.l();

    let mut xi = vec![xi0];
    for j in 0..2 * l {
        let next = (&xi[j] - &QuadElem::rational(d, a[j])).inv()?;
        xi.push(next);
    }
    let mut s = vec![0i64];
    let mut t = vec![0i64];
    for j in 1..=l {
        s.push(s[j - 1] + a[2 * j - 1]);
        t.push(t[j - 1] + a[(2 * j) % (2 * l)]);
    }
    let omega_star = &xi[1] + &one;
    let cstar = minus_cf(&omega_star)?;

    let data = BridgeData { a, s, t, xi, omega_star, c_period: cstar.period };
    check_markers(cf, &data)?;
    Ok(data)
}

/// The marker correspondence `b_{S_j} = a_{2j} + 2`, `c_{T_j} = a_{2j+1} + 2`,
/// with every other `b_k` and `c_k` equal to 2.
pub fn check_markers(cf: &MinusCF, br: &BridgeData) -> Result<()> {
    let l = br.l();
    let (m, n) = (cf.m() as i64, br.n() as i64);
    if br.s[l] % m != 0 || br.t[l] % n != 0 {
        return Err(internal(format!("S_l = {} and T_l = {} are not multiples of m = {m}, n = {n}", br.s[l], br.t[l])));
    }
    let c = MinusCF { period: br.c_period.clone() };
    for j in 0..l {
        let (s0, s1) = (br.s[j], br.s[j + 1]);
        if cf.b(s0) != br.a[2 * j] + 2 {
            return Err(internal(format!("b_{{S_{j}}} ≠ a_{} + 2", 2 * j)));
        }
        if (s0 + 1..s1).any(|k| cf.b(k) != 2) {
            return Err(internal(format!("b_k ≠ 2 strictly between S_{j} and S_{}", j + 1)));
        }
        let (t0, t1) = (br.t[j], br.t[j + 1]);
        if c.b(t0) != br.a[2 * j + 1] + 2 {
            return Err(internal(format!("c_{{T_{j}}} ≠ a_{} + 2", 2 * j + 1)));
        }
        if (t0 + 1..t1).any(|k| c.b(k) != 2) {
            return Err(internal(format!("c_k ≠ 2 strictly between T_{j} and T_{}", j + 1)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::omega_sequence;
    use rug::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn bridge_for_d5() {
        let w = QuadElem::new(5, q(3, 2), q(1, 2));
        let br = bridge(&minus_cf(&w).unwrap(), &w).unwrap();
        assert_eq!(br.a, vec![1, 1]);
        assert_eq!(br.s, vec![0, 1]);
        assert_eq!(br.t, vec![0, 1]);
        assert_eq!(br.c_period, vec![3]);
        assert_eq!(br.omega_star, w);
    }

    #[test]
    fn bridge_for_d12() {
        let w = QuadElem::new(12, 2, q(1, 2));
        let br = bridge(&minus_cf(&w).unwrap(), &w).unwrap();
        assert_eq!(br.a, vec![2, 1]);
        assert_eq!(br.s, vec![0, 1]);
        assert_eq!(br.t, vec![0, 2]);
        assert_eq!(br.c_period, vec![3, 2]);
        assert_eq!((br.l(), br.n()), (1, 2));
    }

    #[test]
    fn omega_xi_relations() {
        // ω_{S_j} = ξ_{2j} + 1 along a longer cycle.
        let w = QuadElem::new(13, q(5, 2), q(1, 2));
        let cf = minus_cf(&w).unwrap();
        let br = bridge(&cf, &w).unwrap();
        let ws = omega_sequence(&cf, &w, 2 * cf.m() + 1).unwrap();
        let one = QuadElem::one(13);
        for j in 0..br.l() {
            let k = br.s[j] as usize;
            assert_eq!(ws[k], br.xi[2 * j].clone() + one.clone());
        }
        assert_eq!(br.s[br.l()] as usize, cf.m());
    }

    #[test]
    fn rejects_small_omega() {
        let w = QuadElem::new(13, q(7, 6), q(1, 6));
        let cf = minus_cf(&w).unwrap();
        assert!(bridge(&cf, &w).is_err());
    }
}
