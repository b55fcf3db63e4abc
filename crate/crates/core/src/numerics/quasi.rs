use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::{solve_linear_system, Rational};
use crate::error::{Error, Result};

/// Univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

/// A quasi-polynomial: one polynomial per residue class of `n mod period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: u64,
    polys: Vec<UniPoly>,
}

impl QuasiPolynomial {
    pub fn new(polys: Vec<UniPoly>) -> Self {
        assert!(!polys.is_empty(), "period must be at least 1");
        QuasiPolynomial {
            period: polys.len() as u64,
            polys,
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn for_residue(&self, r: u64) -> &UniPoly {
        &self.polys[(r % self.period) as usize]
    }

    pub fn degree(&self) -> Option<usize> {
        self.polys.iter().filter_map(UniPoly::degree).max()
    }

    pub fn eval(&self, n: u64) -> Rational {
        self.for_residue(n).eval(&Rational::from_integer(n.into()))
    }

    /// Leading coefficient (of the common degree) for each residue class.
    pub fn leading_coefficients(&self) -> Vec<Rational> {
        let deg = self.degree().unwrap_or(0);
        self.polys.iter().map(|p| p.coeff(deg)).collect()
    }

    /// Rewrites each coefficient of `n^j` as a polynomial in the fractional
    /// part `{n / period}`: entry `[j][i]` is the coefficient of
    /// `{n/period}^i * n^j`.
    pub fn fractional_coefficients(&self) -> Vec<Vec<Rational>> {
        let k = self.period as usize;
        let nodes: Vec<Rational> = (0..k)
            .map(|r| Rational::new(r.into(), self.period.into()))
            .collect();
        let vandermonde: Vec<Vec<Rational>> = nodes
            .iter()
            .map(|x| (0..k).map(|i| num_traits::pow(x.clone(), i)).collect())
            .collect();
        let deg = self.degree().unwrap_or(0);
        (0..=deg)
            .map(|j| {
                let values: Vec<Rational> = self.polys.iter().map(|p| p.coeff(j)).collect();
                solve_linear_system(&vandermonde, &values).expect("Vandermonde nodes are distinct")
            })
            .collect()
    }

    /// Inverse of [`fractional_coefficients`](Self::fractional_coefficients).
    pub fn from_fractional_coefficients(period: u64, coeffs: &[Vec<Rational>]) -> Self {
        let polys = (0..period)
            .map(|r| {
                let frac = Rational::new(r.into(), period.into());
                UniPoly::new(
                    coeffs
                        .iter()
                        .map(|by_power| {
                            by_power
                                .iter()
                                .enumerate()
                                .map(|(i, a)| a * num_traits::pow(frac.clone(), i))
                                .fold(Rational::zero(), |acc, v| acc + v)
                        })
                        .collect(),
                )
            })
            .collect();
        QuasiPolynomial::new(polys)
    }

    /// Closed form using the fractional part `{ 1/k * n }`, highest power of
    /// `n` first, one term per line.
    pub fn fractional_part_form(&self) -> String {
        let frac = format!("{{ 1/{} * n }}", self.period);
        let coeffs = self.fractional_coefficients();
        let mut lines = Vec::new();
        for (j, by_power) in coeffs.iter().enumerate().rev() {
            let periodic: Vec<String> = by_power
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| {
                    if i == 1 {
                        format!("{a} * {frac}")
                    } else {
                        format!("{a} * {frac}^{i}")
                    }
                })
                .collect();
            let constant = &by_power[0];
            if periodic.is_empty() && constant.is_zero() {
                continue;
            }
            let mut term = if periodic.is_empty() {
                constant.to_string()
            } else {
                let mut inner = periodic.join(" + ");
                if constant.is_negative() {
                    write!(inner, " - {}", constant.abs()).unwrap();
                } else {
                    write!(inner, " + {constant}").unwrap();
                }
                format!("( {inner} )")
            };
            match j {
                0 => {}
                1 => term.push_str(" * n"),
                _ => write!(term, " * n^{j}").unwrap(),
            }
            lines.push(term);
        }
        if lines.is_empty() {
            return "0".into();
        }
        let mut out = format!("   {}", lines[0]);
        for l in &lines[1..] {
            write!(out, "\n + {l}").unwrap();
        }
        out
    }
}

/// Fits one polynomial of degree `degree` through `(n, value)` samples and
/// checks it reproduces every validation sample.
pub(crate) fn fit_class(
    degree: usize,
    samples: &[(u64, Rational)],
    validation: &[(u64, Rational)],
    period: u64,
) -> Result<UniPoly> {
    let a: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(n, _)| {
            let x = Rational::from_integer((*n).into());
            let mut row = Vec::with_capacity(degree + 1);
            let mut p = Rational::one();
            for _ in 0..=degree {
                row.push(p.clone());
                p *= &x;
            }
            row
        })
        .collect();
    let b: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    let poly = UniPoly::new(solve_linear_system(&a, &b)?);
    for (n, v) in validation {
        if poly.eval(&Rational::from_integer((*n).into())) != *v {
            return Err(Error::PeriodTooSmall { period, n: *n });
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    #[test]
    fn evaluates_by_residue() {
        let q = QuasiPolynomial::new(vec![
            UniPoly::new(vec![int(0), int(1)]),
            UniPoly::new(vec![int(7)]),
        ]);
        assert_eq!(q.eval(4), int(4));
        assert_eq!(q.eval(5), int(7));
    }

    #[test]
    fn fractional_round_trip() {
        let q = QuasiPolynomial::new(vec![
            UniPoly::new(vec![int(1), rat(1, 2), rat(1, 3)]),
            UniPoly::new(vec![int(2), rat(3, 2), rat(1, 3)]),
            UniPoly::new(vec![int(0), rat(-1, 2), rat(1, 3)]),
        ]);
        let back = QuasiPolynomial::from_fractional_coefficients(3, &q.fractional_coefficients());
        assert_eq!(back, q);
    }

    #[test]
    fn fit_detects_wrong_period() {
        // n mod 2 is not a polynomial
        let samples = vec![(2, int(0)), (3, int(1))];
        let validation = vec![(4, int(0))];
        assert!(matches!(
            fit_class(1, &samples, &validation, 1),
            Err(Error::PeriodTooSmall { .. })
        ));
    }

    #[test]
    fn fit_rejects_repeated_points() {
        let samples = vec![(2, int(1)), (2, int(1))];
        assert!(matches!(
            fit_class(1, &samples, &[], 1),
            Err(Error::NoUniqueSolution)
        ));
    }
}
