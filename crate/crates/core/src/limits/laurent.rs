//! `Z_Q(s, x, y)` near `s = 1`, the limit constant `ρ(𝔠)`, and the direct
//! summations used to check them.

use rug::{Float, Rational};

use super::LaurentPair;
use crate::classdata::DecompositionDatum;
use crate::error::{domain, internal, Result};
use crate::qfield::{solve_basis, FieldCtx, Modulus, QuadElem, QuadIdeal};
use crate::specfun::{digamma, dilog, pi, Kernel, Precision};

/// The form `Q(x, y) = (xω + y)(xω′ + y)/(ω − ω′)` with `ω > ω′ > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadFormData {
    pub omega: Float,
    pub omega_prime: Float,
}

impl QuadFormData {
    pub fn new(omega: &Float, omega_prime: &Float) -> Result<Self> {
        if !(*omega_prime > 0 && omega > omega_prime) {
            return Err(domain(
                "QuadFormData",
                format!("need ω > ω′ > 0, got ω = {}, ω′ = {}", omega.to_f64(), omega_prime.to_f64()),
            ));
        }
        Ok(QuadFormData { omega: omega.clone(), omega_prime: omega_prime.clone() })
    }

    /// `ω` and its conjugate, rounded to `bits`.
    pub fn from_elem(omega: &QuadElem, bits: u32) -> Result<Self> {
        Self::new(&omega.to_float(bits), &omega.conj().to_float(bits))
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (w, wp) = (self.omega.to_f64(), self.omega_prime.to_f64());
        (x * w + y) * (x * wp + y) / (w - wp)
    }
}

/// Compensated running sum.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

const BOX_BASE: i64 = 32;
const BOX_LEVELS: usize = 6;

// Truncated sums S_N for N = 32·2^i have tails Σ_k a_k N^{2−2s−k}; a
// Richardson table on those exponents removes the first five.
fn extrapolate_boxes(sums: &[f64], s: f64) -> f64 {
    let mut row = sums.to_vec();
    for k in 0..row.len() - 1 {
        let r = 2f64.powf(2.0 - 2.0 * s - k as f64);
        row = row.windows(2).map(|w| (w[1] - r * w[0]) / (1.0 - r)).collect();
    }
    row[0]
}

fn check_zq_args(op: &'static str, x: &Rational, y: &Rational, s: f64) -> Result<()> {
    if s.is_nan() || s <= 1.0 {
        return Err(domain(op, format!("s = {s} must exceed 1")));
    }
    if *x <= 0 || *y < 0 {
        return Err(domain(op, "need x > 0 and y ≥ 0"));
    }
    Ok(())
}

/// `Z_Q(s, x, y) = Σ_{p,q≥0} Q(x+p, y+q)^{−s}` for `s > 1`, from square
/// partial sums extrapolated in the box size.
pub fn zq_direct(q: &QuadFormData, x: &Rational, y: &Rational, s: f64) -> Result<f64> {
    check_zq_args("zq_direct", x, y, s)?;
    let (xf, yf) = (x.to_f64(), y.to_f64());
    let term = |p: i64, r: i64| q.eval(xf + p as f64, yf + r as f64).powf(-s);
    let mut acc = Neumaier::default();
    let mut sums = Vec::with_capacity(BOX_LEVELS);
    let mut done = 0i64;
    for level in 0..BOX_LEVELS {
        let n = BOX_BASE << level;
        // Add the L-shaped band done ≤ max(p, r) < n.
        for p in 0..n {
            let start = if p < done { done } else { 0 };
            for r in start..n {
                acc.add(term(p, r));
            }
        }
        done = n;
        sums.push(acc.value());
    }
    Ok(extrapolate_boxes(&sums, s))
}

/// The same series summed over triangles `p + q < N`.
pub fn zq_direct_diagonal(q: &QuadFormData, x: &Rational, y: &Rational, s: f64) -> Result<f64> {
    check_zq_args("zq_direct_diagonal", x, y, s)?;
    let (xf, yf) = (x.to_f64(), y.to_f64());
    let mut acc = Neumaier::default();
    let mut sums = Vec::with_capacity(BOX_LEVELS);
    let mut done = 0i64;
    for level in 0..BOX_LEVELS {
        let n = BOX_BASE << level;
        for diag in done..n {
            for p in 0..=diag {
                acc.add(q.eval(xf + p as f64, yf + (diag - p) as f64).powf(-s));
            }
        }
        done = n;
        sums.push(acc.value());
    }
    Ok(extrapolate_boxes(&sums, s))
}

const ORACLE_J: std::ops::RangeInclusive<i32> = 3..=8;

// Values g(1 + h_j), h_j = 2^{−j}, extrapolated to h = 0 by a degree-3
// polynomial Richardson table.
fn extrapolate_to_one(values: &[f64]) -> f64 {
    let mut table = vec![values.to_vec()];
    for k in 1..=3usize {
        let prev = &table[k - 1];
        let f = 2f64.powi(k as i32);
        let next = prev.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        table.push(next);
    }
    *table[3].last().expect("six points")
}

/// Constant term of `Z_Q` at `s = 1` from `zq_direct` at `s = 1 + 2^{−j}`,
/// `j = 3..=8`, after removing the known pole `log(ω/ω′)/2`.
pub fn zq_laurent_oracle(q: &QuadFormData, x: &Rational, y: &Rational) -> Result<f64> {
    let pole = (q.omega.to_f64() / q.omega_prime.to_f64()).ln() / 2.0;
    let mut vals = Vec::new();
    for j in ORACLE_J {
        let h = 2f64.powi(-j);
        vals.push(zq_direct(q, x, y, 1.0 + h)? - pole / h);
    }
    Ok(extrapolate_to_one(&vals))
}

/// Laurent data of `Z_Q(s, x, y)` at `s = 1`:
///
/// `P = F(ω) − F(ω′) + Li₂(ω′/ω) − π²/6 + log(ω/ω′)(−ψ(x) − log(ω − ω′)/2 + log(ω/ω′)/4)`,
/// assembled in that order at twice the requested precision.
pub fn zq_laurent(q: &QuadFormData, x: &Rational, y: &Rational, prec: Precision) -> Result<LaurentPair> {
    if *x <= 0 || *y < 0 {
        return Err(domain("zq_laurent", "need x > 0 and y ≥ 0"));
    }
    let p2 = prec.doubled();
    let wp = p2.working();
    let w = Float::with_val(wp, &q.omega);
    let wc = Float::with_val(wp, &q.omega_prime);
    let xf = Float::with_val(wp, x);
    let yf = Float::with_val(wp, y);
    let kernel = Kernel::new(&xf, &yf, p2)?;

    let mut total = kernel.f_cap(&w)?;
    total -= kernel.f_cap(&wc)?;

    let ratio = Float::with_val(wp, &wc / &w);
    total += dilog(&ratio, p2)?;
    total -= Float::with_val(wp, pi(wp).square()) / 6u32;

    let log_ratio = Float::with_val(wp, &w / &wc).ln();
    let log_diff = Float::with_val(wp, &w - &wc).ln();
    let mut inner = -digamma(&xf, p2)?;
    inner -= Float::with_val(wp, &log_diff / 2u32);
    inner += Float::with_val(wp, &log_ratio / 4u32);
    total += Float::with_val(wp, &log_ratio * &inner);

    let bits = prec.bits();
    Ok(LaurentPair { pole_coeff: Float::with_val(bits, log_ratio / 2u32), const_term: Float::with_val(bits, total) })
}

/// Laurent data of `(√D N𝔣)^s ζ(s, 𝔠)` at `s = 1`: the pole is
/// `Σ_k log(ω_k/ω_k′)/2`, checked against `log ε_𝔣`, and the constant is
/// `ρ(𝔠) = Σ_k P(ω_k, ω_k′, x_k, y_k)`.
pub fn rho(d: &DecompositionDatum, prec: Precision) -> Result<LaurentPair> {
    let wp = prec.working();
    let product = d.omega.iter().fold(QuadElem::one(d.ctx.disc()), |acc, w| &acc * w);
    if product != d.modulus.eps_f {
        return Err(internal("Π ω_k ≠ ε_𝔣"));
    }
    let mut pole = Float::with_val(wp, 0);
    let mut constant = Float::with_val(wp, 0);
    for (w, (x, y)) in d.omega.iter().zip(&d.xy) {
        let q = QuadFormData::from_elem(w, prec.doubled().working())?;
        let lp = zq_laurent(&q, x, y, prec)?;
        pole += lp.pole_coeff;
        constant += lp.const_term;
    }
    let log_eps = d.modulus.eps_f.to_float(wp).ln();
    let gap = Float::with_val(wp, &pole - &log_eps).abs();
    if gap > Float::with_val(wp, Float::i_exp(1, 8 - prec.bits() as i32)) * Float::with_val(wp, log_eps.abs_ref()) {
        return Err(internal(format!("Σ log(ω_k/ω_k′)/2 differs from log ε_𝔣 by {}", gap.to_f64())));
    }
    let bits = prec.bits();
    Ok(LaurentPair { pole_coeff: Float::with_val(bits, pole), const_term: Float::with_val(bits, constant) })
}

/// `ρ(𝔠)` from `Σ_k zq_direct` at `s = 1 + 2^{−j}` minus `log ε_𝔣/(s − 1)`,
/// extrapolated to `s = 1`.
pub fn rho_oracle(d: &DecompositionDatum) -> Result<f64> {
    let forms: Vec<QuadFormData> =
        d.omega.iter().map(|w| QuadFormData::from_elem(w, 64)).collect::<Result<_>>()?;
    let log_eps = d.modulus.eps_f.to_f64().ln();
    let mut vals = Vec::new();
    for j in ORACLE_J {
        let h = 2f64.powi(-j);
        let mut acc = Neumaier::default();
        for (q, (x, y)) in forms.iter().zip(&d.xy) {
            acc.add(zq_direct(q, x, y, 1.0 + h)?);
        }
        vals.push(acc.value() - log_eps / h);
    }
    Ok(extrapolate_to_one(&vals))
}

/// A truncated Dirichlet series with its estimated remainder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialZeta {
    /// Sum over ideals of norm at most the bound, plus `tail`.
    pub value: f64,
    /// `κB^{1−s}/(s − 1)` with `κ = log ε_𝔣/(√D N𝔣)`.
    pub tail: f64,
    /// Size of the boundary term the tail model ignores, `≈ B^{1/2−s}`.
    pub error_estimate: f64,
    pub terms: u64,
}

/// `ζ(s, 𝔠) = Σ_{𝔟 ∈ 𝔠} N𝔟^{−s}` by enumeration.
///
/// The ideals of the class of `𝔞` are `(α)𝔞` with `α ∈ 1 + 𝔞⁻¹𝔣` totally
/// positive, one per orbit of `ε_𝔣`; orbits are represented by
/// `α = X + Yε_𝔣⁻¹` with `X > 0`, `Y ≥ 0`, where
/// `N(α) = X² + tr(ε_𝔣)XY + Y²`.
pub fn partial_zeta_direct(a: &QuadIdeal, f: &Modulus, ctx: &FieldCtx, s: f64, norm_bound: u64) -> Result<PartialZeta> {
    if s.is_nan() || s <= 1.0 {
        return Err(domain("partial_zeta_direct", format!("s = {s} must exceed 1")));
    }
    if !a.is_integral() || !a.is_coprime_to(&f.ideal) {
        return Err(domain("partial_zeta_direct", "need an integral ideal coprime to 𝔣"));
    }
    if norm_bound == 0 {
        return Err(domain("partial_zeta_direct", "norm bound must be positive"));
    }
    let d = ctx.disc();
    let one = QuadElem::one(d);
    let e = f.eps_f.inv()?;
    let lattice = a.inverse()?.mul(&f.ideal);
    let [m1, m2] = lattice.basis();
    let coords = |v: &QuadElem| solve_basis(v, &one, &e).ok_or_else(|| internal("1, ε_𝔣⁻¹ dependent"));
    let (x1, y1) = coords(&m1)?;
    let (x2, y2) = coords(&m2)?;
    let den = [&x1, &y1, &x2, &y2].iter().fold(rug::Integer::from(1), |l, q| l.lcm(q.denom()));
    let scaled = |q: &Rational| -> Result<i128> {
        let v = Rational::from(q * &den);
        v.numer().to_i128().ok_or_else(|| internal("coordinates overflow i128"))
    };
    let (cx1, cy1, cx2, cy2) = (scaled(&x1)?, scaled(&y1)?, scaled(&x2)?, scaled(&y2)?);
    let l = den.to_i128().ok_or_else(|| internal("denominator overflow"))?;
    let trace = f.eps_f.trace();
    let t = trace.numer().to_i128().filter(|_| *trace.denom() == 1).ok_or_else(|| internal("tr ε_𝔣 not integral"))?;
    let norm_a = a.norm().numer().to_i128().ok_or_else(|| internal("N𝔞 overflow"))?;

    // In units of 1/L: X = L + i·cx1 + j·cx2, Y = i·cy1 + j·cy2.
    let bound = norm_bound as i128;
    let limit = bound * l * l; // N(α)·N𝔞·L² ≤ B·L²
    let root = ((norm_bound as f64 / norm_a as f64).sqrt() * l as f64).ceil() as i128 + 1;
    let det = (cx1 * cy2 - cx2 * cy1) as f64;
    if det == 0.0 {
        return Err(internal("degenerate lattice"));
    }
    // Range of i over the square 0 ≤ X, Y ≤ root (inverse of the 2×2 map).
    let corners = [(0i128, 0i128), (root, 0), (0, root), (root, root)];
    let i_of = |xn: i128, yn: i128| ((xn - l) as f64 * cy2 as f64 - yn as f64 * cx2 as f64) / det;
    let (mut i_lo, mut i_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (xn, yn) in corners {
        let v = i_of(xn, yn);
        i_lo = i_lo.min(v);
        i_hi = i_hi.max(v);
    }
    let (i_lo, i_hi) = (i_lo.floor() as i128 - 1, i_hi.ceil() as i128 + 1);

    let mut acc = Neumaier::default();
    let mut terms = 0u64;
    for i in i_lo..=i_hi {
        let bx = l + i * cx1;
        let by = i * cy1;
        // Along j: X = bx + j·cx2, Y = by + j·cy2. The form is indefinite,
        // so j is bounded only through 0 < X, Y ≤ root on the quadrant.
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (base, step) in [(bx, cx2), (by, cy2)] {
            if step == 0 {
                if base < 0 || base > root {
                    lo = f64::INFINITY;
                }
                continue;
            }
            let a = -(base as f64) / step as f64;
            let b = (root - base) as f64 / step as f64;
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        if lo > hi {
            continue;
        }
        let (lo, hi) = (lo.floor() as i128 - 1, hi.ceil() as i128 + 1);
        for j in lo..=hi {
            let xn = bx + j * cx2;
            let yn = by + j * cy2;
            if xn <= 0 || yn < 0 {
                continue;
            }
            let nn = (xn * xn + t * xn * yn + yn * yn) * norm_a;
            if nn > limit {
                continue;
            }
            let norm = nn as f64 / (l * l) as f64;
            acc.add(norm.powf(-s));
            terms += 1;
        }
    }
    let log_eps = f.eps_f.to_f64().ln();
    let kappa = log_eps / ((d as f64).sqrt() * f.norm.to_f64());
    let b = norm_bound as f64;
    let tail = kappa * b.powf(1.0 - s) / (s - 1.0);
    acc.add(tail);
    Ok(PartialZeta { value: acc.value(), tail, error_estimate: b.powf(0.5 - s), terms })
}

/// `Σ_k Z_{Q_k}(s, x_k, y_k)·(√D N𝔣)^{−s}`.
pub fn partial_zeta_via_forms(d: &DecompositionDatum, s: f64) -> Result<f64> {
    let mut acc = Neumaier::default();
    for (w, (x, y)) in d.omega.iter().zip(&d.xy) {
        acc.add(zq_direct(&QuadFormData::from_elem(w, 64)?, x, y, s)?);
    }
    let scale = (d.ctx.disc() as f64).sqrt() * d.modulus.norm.to_f64();
    Ok(acc.value() * scale.powf(-s))
}
