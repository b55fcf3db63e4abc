//! Exact scalars, dense linear algebra, sparse multivariate polynomials and
//! univariate quasi-polynomials.

mod linalg;
mod poly;
pub(crate) mod quasi;

pub use linalg::{determinant_int, rank, solve_linear_system};
pub use poly::{Monomial, SparsePolynomial};
pub use quasi::{QuasiPolynomial, UniPoly};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Decimal rendering of an exact value, rounded half away from zero to
/// `digits` places. Display only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * 2u32 >= *scaled.denom() {
        q + 1u32
    } else {
        q
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = rat(2, 4);
        let b = rat(-3, -6);
        assert_eq!(a, b);
        assert_eq!(a.numer(), &BigInt::from(1));
        assert_eq!(a.denom(), &BigInt::from(2));
        let c = rat(3, -9);
        assert_eq!(c.numer(), &BigInt::from(-1));
        assert_eq!(c.denom(), &BigInt::from(3));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(5, 16), 10), "0.3125000000");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&int(7), 0), "7");
        let runoff = parse_rational("2988379676768359/12173449145352192").unwrap();
        assert_eq!(to_decimal(&runoff, 10), "0.2454833992");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 5), BigUint::from(21u32));
        assert_eq!(binomial(8, 5), BigUint::from(56u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational(" 6/8 "), Some(rat(3, 4)));
        assert_eq!(parse_rational("-5"), Some(int(-5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
