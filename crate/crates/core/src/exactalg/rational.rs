//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// `x^e` for a possibly negative exponent. Panics on `0^-k`.
pub fn pow_i(x: &Q, e: i64) -> Q {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6"), Some(qf(1, 2)));
        assert_eq!(parse_q("-7"), Some(q(-7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(format_q(&qf(-2, 8)), "-1/4");
        assert_eq!(format_q(&q(5)), "5");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i(&qf(2, 3), -2), qf(9, 4));
        assert_eq!(pow_i(&q(-1), 3), q(-1));
    }
}
