//! JSON reports for each subcommand. Exact rationals are `"p/q"` strings,
//! reals are decimal strings at the requested precision, and ideals are
//! integer matrices over a denominator.

use rug::{Float, Rational};
use serde_json::{json, Value};
use shintani_core::cfrac::check_markers;
use shintani_core::checks::{run_suite, suite_checks};
use shintani_core::classdata::{build_datum, check_congruences, datum_bar, datum_star, DecompositionDatum};
use shintani_core::limits::{
    check_star_theorem, partial_zeta_direct, partial_zeta_via_forms, rho as rho_values, rho_oracle, shintani_x,
    shintani_x_bridge, zeta0 as zeta0_value, zeta0_bar,
};
use shintani_core::qfield::{QuadElem, QuadIdeal};
use shintani_core::specfun::Precision;

use crate::job::JobSpec;
use crate::{CliError, Outcome};

const RHO_TOL: f64 = 1e-5;
const POLE_TOL: f64 = 1e-12;
const X_TOL: f64 = 1e-8;

pub fn rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn elem(x: &QuadElem) -> Value {
    json!({ "a": rational(x.a()), "b": rational(x.b()) })
}

fn ideal(a: &QuadIdeal) -> Value {
    let (den, m) = a.matrix();
    let row = |r: &[rug::Integer; 2]| json!([r[0].to_string(), r[1].to_string()]);
    json!({ "den": den.to_string(), "matrix": [row(&m[0]), row(&m[1])] })
}

/// Plain decimal with `digits` significant digits; scientific notation only
/// for very large or small magnitudes.
pub fn decimal(x: &Float, digits: usize) -> String {
    if !x.is_normal() {
        return if x.is_zero() { "0".into() } else { x.to_string() };
    }
    let s = x.to_string_radix(10, Some(digits));
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("decimal exponent")),
        None => (s.as_str(), 0),
    };
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int}{frac}");
    // Position of the decimal point within `all`.
    let point = int.len() as i64 + exp;
    if !(-8..=30).contains(&point) {
        return s;
    }
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), all)
    } else if point as usize >= all.len() {
        format!("{}{}", all, "0".repeat(point as usize - all.len()))
    } else {
        format!("{}.{}", &all[..point as usize], &all[point as usize..])
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    format!("{sign}{body}")
}

fn residual(r: f64) -> Value {
    if r.is_finite() {
        json!(r)
    } else {
        Value::Null
    }
}

fn header(spec: &JobSpec, d: &DecompositionDatum) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("D".into(), json!(spec.d));
    m.insert("modulus".into(), ideal(&d.modulus.ideal));
    m.insert("ideal".into(), ideal(&d.ideal));
    m
}

fn load(spec: &JobSpec) -> Result<DecompositionDatum, CliError> {
    let k = spec.field()?;
    let f = spec.modulus(&k)?;
    let a = spec.ideal(&k)?;
    Ok(build_datum(&a, &f, &k)?)
}

pub fn datum(spec: &JobSpec, verify: bool) -> Result<Outcome, CliError> {
    let d = load(spec)?;
    let mut m = header(spec, &d);
    m.insert("r".into(), json!(d.r));
    m.insert("epsF".into(), elem(&d.modulus.eps_f));
    m.insert("b_period".into(), json!(d.cf.period));
    m.insert("omega0".into(), elem(&d.omega[0]));
    m.insert("z".into(), elem(&d.z));
    let xy: Vec<Value> = d.xy.iter().map(|(x, y)| json!([rational(x), rational(y)])).collect();
    m.insert("xy".into(), Value::Array(xy));
    let mut verified = true;
    if verify {
        let s = datum_star(&d)?;
        let congruences = check_congruences(&d, &s);
        let markers = check_markers(&d.cf, &s.bridge);
        verified = congruences && markers.is_ok();
        m.insert(
            "verify".into(),
            json!({
                "congruences": congruences,
                "markers": markers.as_ref().map_or_else(|e| e.to_string(), |_| "ok".to_string()),
                "passed": verified,
            }),
        );
    }
    Ok(Outcome { report: Value::Object(m), verified })
}

pub fn zeta0(spec: &JobSpec, verify: bool) -> Result<Outcome, CliError> {
    let d = load(spec)?;
    let z = zeta0_value(&d);
    let mut m = header(spec, &d);
    m.insert("zeta0".into(), json!(rational(&z)));
    let mut verified = true;
    if verify {
        let bar = zeta0_bar(&d);
        let bar_datum = zeta0_value(&datum_bar(&d)?);
        let star = datum_star(&d)?;
        let zs = zeta0_value(&star.datum);
        let mut v = serde_json::Map::new();
        v.insert("zeta0_bar".into(), json!(rational(&bar)));
        v.insert("zeta0_star".into(), json!(rational(&zs)));
        verified = bar == z && bar_datum == z && Rational::from(&z + &zs) == 0;
        if d.modulus.is_trivial() {
            let nm = Rational::from((star.bridge.n() as i64 - d.cf.m() as i64, 12));
            v.insert("n_minus_m_over_12".into(), json!(rational(&nm)));
            verified &= nm == z;
        }
        v.insert("passed".into(), json!(verified));
        m.insert("verify".into(), Value::Object(v));
    }
    Ok(Outcome { report: Value::Object(m), verified })
}

pub fn rho(spec: &JobSpec, verify: bool) -> Result<Outcome, CliError> {
    let d = load(spec)?;
    let p = spec.precision()?;
    let lp = rho_values(&d, p)?;
    let mut m = header(spec, &d);
    m.insert("precision_bits".into(), json!(p.bits()));
    m.insert("pole".into(), json!(decimal(&lp.pole_coeff, p.digits())));
    m.insert("rho".into(), json!(decimal(&lp.const_term, p.digits())));
    let mut verified = true;
    if verify {
        let log_eps = d.modulus.eps_f.to_float(p.working()).ln();
        let pole_res = Float::with_val(p.working(), &lp.pole_coeff - &log_eps).abs().to_f64();
        let oracle = rho_oracle(&d)?;
        let oracle_res = (lp.const_term.to_f64() - oracle).abs();
        let direct = partial_zeta_direct(&d.ideal, &d.modulus, &d.ctx, 2.0, spec.norm_bound)?;
        let forms = partial_zeta_via_forms(&d, 2.0)?;
        let route_res = (direct.value - forms).abs();
        let route_tol = (10.0 * direct.error_estimate).max(1e-8);
        verified = pole_res < POLE_TOL && oracle_res < RHO_TOL && route_res < route_tol;
        m.insert(
            "verify".into(),
            json!({
                "log_epsF": decimal(&log_eps, p.digits()),
                "pole_residual": residual(pole_res),
                "oracle": format!("{oracle:.12}"),
                "oracle_residual": residual(oracle_res),
                "oracle_tolerance": RHO_TOL,
                "zeta_s2_direct": format!("{:.14}", direct.value),
                "zeta_s2_forms": format!("{forms:.14}"),
                "route_residual": residual(route_res),
                "route_tolerance": route_tol,
                "norm_bound": spec.norm_bound,
                "passed": verified,
            }),
        );
    }
    Ok(Outcome { report: Value::Object(m), verified })
}

pub fn shintani(spec: &JobSpec, verify: bool) -> Result<Outcome, CliError> {
    let d = load(spec)?;
    let p = spec.precision()?;
    let inv = shintani_x(&d, p)?;
    let mut m = header(spec, &d);
    m.insert("precision_bits".into(), json!(p.bits()));
    m.insert("x".into(), json!(decimal(&inv.x, p.digits())));
    m.insert("x1".into(), json!(decimal(&inv.x1, p.digits())));
    m.insert("x2".into(), json!(decimal(&inv.x2, p.digits())));
    let mut verified = true;
    if verify {
        let s = datum_star(&d)?;
        let (r1, r2) = check_star_theorem(&d, &s, p)?;
        let (r1, r2) = (r1.to_f64().abs(), r2.to_f64().abs());
        let mut v = serde_json::Map::new();
        v.insert("star_residual_x1".into(), residual(r1));
        v.insert("star_residual_x2".into(), residual(r2));
        verified = r1 < X_TOL && r2 < X_TOL;
        match shintani_x_bridge(&d, &s, p) {
            Ok((b1, b2)) => {
                let res = (b1.to_f64() - inv.x1.to_f64()).abs().max((b2.to_f64() - inv.x2.to_f64()).abs());
                v.insert("bridge_x1".into(), json!(decimal(&b1, p.digits())));
                v.insert("bridge_x2".into(), json!(decimal(&b2, p.digits())));
                v.insert("route_residual".into(), residual(res));
                verified &= res < X_TOL;
            }
            Err(e) => {
                v.insert("bridge_error".into(), json!(e.to_string()));
                verified = false;
            }
        }
        v.insert("tolerance".into(), json!(X_TOL));
        v.insert("passed".into(), json!(verified));
        m.insert("verify".into(), Value::Object(v));
    }
    Ok(Outcome { report: Value::Object(m), verified })
}

pub fn check(suite: &str, p: Precision) -> Result<Outcome, CliError> {
    suite_checks(suite)?;
    let outcomes = run_suite(suite, p)?;
    let verified = outcomes.iter().all(|o| o.passed);
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "title": o.title,
                "passed": o.passed,
                "residual": o.residual.map_or(Value::Null, residual),
                "tolerance": o.tolerance,
                "seconds": (o.seconds * 1000.0).round() / 1000.0,
                "budget_seconds": o.budget_seconds,
                "detail": o.detail,
            })
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let report = json!({
        "suite": suite,
        "precision_bits": p.bits(),
        "criteria": rows,
        "passed": passed,
        "total": outcomes.len(),
    });
    Ok(Outcome { report, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_plain() {
        let f = |x: f64| Float::with_val(64, x);
        assert_eq!(decimal(&f(0.5), 10), "0.5");
        assert_eq!(decimal(&f(-12.25), 10), "-12.25");
        assert_eq!(decimal(&f(1e-3), 5), "0.001");
        assert_eq!(decimal(&f(1200.0), 6), "1200");
        assert_eq!(decimal(&f(0.0), 6), "0");
        assert!(decimal(&f(1e-40), 6).contains('e'));
    }

    #[test]
    fn rationals_always_have_a_denominator() {
        assert_eq!(rational(&Rational::from(0)), "0/1");
        assert_eq!(rational(&Rational::from((-2, 4))), "-1/2");
    }
}
