//! Job specifications: discriminant, modulus, class representative and
//! numerical settings, read from flags, a JSON job file, or both.

use std::path::Path;

use rug::Integer;
use serde::Deserialize;
use shintani_core::qfield::{modulus_data, FieldCtx, Modulus, QuadElem, QuadIdeal};
use shintani_core::specfun::Precision;

use crate::CliError;

pub const DEFAULT_PRECISION_BITS: u32 = 64;
pub const DEFAULT_NORM_BOUND: u64 = 100_000;
pub const PRECISION_ENV: &str = "SHINTANI_PRECISION_BITS";

/// An ideal as written by the user.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum IdealInput {
    /// `a,b` or `a,b/den` for the principal ideal of `(a + b√D)/den`, or
    /// `a1,b1;a2,b2[/den]` for the ℤ-span of two elements.
    Text(String),
    /// Rows `(m[i][0] + m[i][1]√D)/den`, integers as decimal strings.
    Matrix { den: String, matrix: [[String; 2]; 2] },
}

#[derive(Debug, Default, Deserialize)]
struct JobFile {
    #[serde(rename = "D")]
    d: Option<i64>,
    modulus: Option<IdealInput>,
    ideal: Option<IdealInput>,
    precision_bits: Option<u32>,
    norm_bound: Option<u64>,
}

/// A fully resolved job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub d: i64,
    pub modulus: IdealInput,
    pub ideal: IdealInput,
    pub precision_bits: u32,
    pub norm_bound: u64,
}

/// Values given on the command line; each overrides the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub d: Option<i64>,
    pub modulus: Option<String>,
    pub ideal: Option<String>,
    pub precision_bits: Option<u32>,
    pub norm_bound: Option<u64>,
}

fn env_precision() -> Result<Option<u32>, CliError> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Validation(format!("{PRECISION_ENV}={v:?} is not a bit count"))),
        Err(_) => Ok(None),
    }
}

/// Precision from the flag, then the environment, then the default.
pub fn resolve_precision(flag: Option<u32>) -> Result<Precision, CliError> {
    let bits = match flag {
        Some(b) => b,
        None => env_precision()?.unwrap_or(DEFAULT_PRECISION_BITS),
    };
    Ok(Precision::new(bits)?)
}

impl JobSpec {
    pub fn resolve(job: Option<&Path>, o: Overrides) -> Result<Self, CliError> {
        let file = match job {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Validation(format!("cannot read job file {}: {e}", p.display())))?;
                serde_json::from_str::<JobFile>(&text)
                    .map_err(|e| CliError::Validation(format!("job file {}: {e}", p.display())))?
            }
            None => JobFile::default(),
        };
        let d = o.d.or(file.d).ok_or_else(|| CliError::Validation("the discriminant is required (--D)".into()))?;
        let one = || IdealInput::Text("1,0".into());
        let precision_bits = match o.precision_bits.or(file.precision_bits) {
            Some(b) => b,
            None => env_precision()?.unwrap_or(DEFAULT_PRECISION_BITS),
        };
        Ok(JobSpec {
            d,
            modulus: o.modulus.map(IdealInput::Text).or(file.modulus).unwrap_or_else(one),
            ideal: o.ideal.map(IdealInput::Text).or(file.ideal).unwrap_or_else(one),
            precision_bits,
            norm_bound: o.norm_bound.or(file.norm_bound).unwrap_or(DEFAULT_NORM_BOUND),
        })
    }

    pub fn field(&self) -> Result<FieldCtx, CliError> {
        Ok(FieldCtx::new(self.d)?)
    }

    pub fn precision(&self) -> Result<Precision, CliError> {
        Ok(Precision::new(self.precision_bits)?)
    }

    pub fn modulus(&self, k: &FieldCtx) -> Result<Modulus, CliError> {
        let f = to_ideal(&self.modulus, k.disc(), "modulus")?;
        Ok(modulus_data(&f, k)?)
    }

    pub fn ideal(&self, k: &FieldCtx) -> Result<QuadIdeal, CliError> {
        to_ideal(&self.ideal, k.disc(), "ideal")
    }
}

fn to_ideal(input: &IdealInput, d: u64, what: &str) -> Result<QuadIdeal, CliError> {
    match input {
        IdealInput::Text(s) => parse_ideal(s, d).map_err(|e| CliError::Validation(format!("--{what} {s:?}: {e}"))),
        IdealInput::Matrix { den, matrix } => {
            let int = |s: &String| {
                s.parse::<Integer>().map_err(|_| CliError::Validation(format!("{what}: {s:?} is not an integer")))
            };
            let m = [[int(&matrix[0][0])?, int(&matrix[0][1])?], [int(&matrix[1][0])?, int(&matrix[1][1])?]];
            Ok(QuadIdeal::from_matrix(d, &int(den)?, &m)?)
        }
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => Err(format!("at character {}: expected '{c}', found '{x}'", self.pos + 1)),
            None => Err(format!("at character {}: expected '{c}', found end of input", self.pos + 1)),
        }
    }

    fn int(&mut self) -> Result<Integer, String> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.s[start..];
        let sign = usize::from(rest.starts_with(['-', '+']));
        let len = sign + rest[sign..].chars().take_while(char::is_ascii_digit).count();
        if len == sign {
            return Err(format!("at character {}: expected an integer", start + 1));
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("sign and digits"))
    }
}

/// Parses `a,b[/den]` (principal) or `a1,b1;a2,b2[/den]` (ℤ-basis), where a
/// pair `a,b` stands for `a + b√D`.
pub fn parse_ideal(s: &str, d: u64) -> Result<QuadIdeal, String> {
    let mut c = Cursor { s, pos: 0 };
    let mut rows = vec![(c.int()?, {
        c.expect(',')?;
        c.int()?
    })];
    if c.peek() == Some(';') {
        c.expect(';')?;
        let a = c.int()?;
        c.expect(',')?;
        rows.push((a, c.int()?));
    }
    let den = if c.peek() == Some('/') {
        c.expect('/')?;
        let at = c.pos + 1;
        let den = c.int()?;
        if den <= 0 {
            return Err(format!("at character {at}: denominator must be positive"));
        }
        den
    } else {
        Integer::from(1)
    };
    if let Some(x) = c.peek() {
        return Err(format!("at character {}: unexpected '{x}'", c.pos + 1));
    }
    let elems: Vec<QuadElem> = rows.into_iter().map(|(a, b)| QuadElem::from_parts(d, a, b, den.clone())).collect();
    let out = match elems.as_slice() {
        [g] => QuadIdeal::principal(g),
        [x, y] => QuadIdeal::from_basis(x, y),
        _ => unreachable!("one or two rows"),
    };
    out.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let a = parse_ideal("4,-1", 5).unwrap();
        let g = QuadElem::new(5, 4, -1);
        assert_eq!(a, QuadIdeal::principal(&g).unwrap());
        let b = parse_ideal("2,0; 1,1/2", 5).unwrap();
        assert_eq!(b, QuadIdeal::unit(5));
    }

    #[test]
    fn errors_name_the_position() {
        let e = parse_ideal("4,x", 5).unwrap_err();
        assert!(e.contains("character 3"), "{e}");
        let e = parse_ideal("4,1/0", 5).unwrap_err();
        assert!(e.contains("character 5") && e.contains("positive"), "{e}");
        let e = parse_ideal("4,1 7", 5).unwrap_err();
        assert!(e.contains("unexpected '7'"), "{e}");
    }
}
