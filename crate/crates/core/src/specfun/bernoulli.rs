use std::sync::Mutex;

use rug::{Integer, Rational};

static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_0, …, B_n` (with `B_1 = −1/2`), exact. Results are memoized.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut table = TABLE.lock().expect("bernoulli table poisoned");
    if table.len() <= n {
        extend(&mut table, n);
    }
    table[..=n].to_vec()
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_table(n).pop().expect("nonempty")
}

// Σ_{k=0}^{n} C(n+1, k) B_k = 0 for n ≥ 1.
fn extend(table: &mut Vec<Rational>, n: usize) {
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    for m in table.len()..=n {
        if m > 1 && m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in table.iter().enumerate().take(m) {
            if *b != 0 {
                acc += Rational::from(b * &binom);
            }
            binom *= (m + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        table.push(-acc / Integer::from(m + 1));
    }
}

/// `B₁(x) = x − 1/2`.
pub fn bernoulli_poly1(x: &Rational) -> Rational {
    x - Rational::from((1, 2)) 
}

/// `B₂(x) = x² − x + 1/6`.
pub fn bernoulli_poly2(x: &Rational) -> Rational {
    Rational::from(x * x) - x + Rational::from((1, 6))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn small_bernoulli_numbers() {
        let t = bernoulli_table(12);
        assert_eq!(t[0], 1);
        assert_eq!(t[1], q(-1, 2));
        assert_eq!(t[2], q(1, 6));
        assert_eq!(t[3], 0);
        assert_eq!(t[4], q(-1, 30));
        assert_eq!(t[6], q(1, 42));
        assert_eq!(t[12], q(-691, 2730));
        assert_eq!(bernoulli_number(20), q(-174611, 330));
    }

    #[test]
    fn polynomial_identities() {
        for (n, d) in [(0, 1), (1, 1), (2, 11), (7, 11), (1, 2), (-3, 5)] {
            let x = q(n, d);
            let one_minus = Rational::from(1 - &x);
            assert_eq!(bernoulli_poly2(&x), bernoulli_poly2(&one_minus));
            assert_eq!(bernoulli_poly1(&x), -bernoulli_poly1(&one_minus));
            assert_eq!(crate::specfun::hurwitz_zeta0(&x), -bernoulli_poly1(&x));
        }
        assert_eq!(bernoulli_poly2(&q(1, 2)), q(-1, 12));
    }
}
