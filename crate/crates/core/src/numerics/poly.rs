use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Multivariate polynomial with exact coefficients, stored as a map from
/// exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// A single term `coefficient * prod z_i^exponents[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coefficient: Rational,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>, coefficient: Rational) -> Self {
        Monomial {
            exponents,
            coefficient,
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
            coefficient: Rational::one(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.exponents
            .iter()
            .zip(point)
            .fold(self.coefficient.clone(), |acc, (&e, x)| {
                acc * num_traits::pow(x.clone(), e as usize)
            })
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Monomial {
            exponents: self.exponents.clone(),
            coefficient: &self.coefficient * c,
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = self.coefficient.to_string();
        for (e, name) in self.exponents.iter().zip(names) {
            match e {
                0 => {}
                1 => write!(s, "*{name}").unwrap(),
                _ => write!(s, "*{name}^{e}").unwrap(),
            }
        }
        s
    }
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(
        nvars: usize,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// `binom(N_i + k - 1, k - 1)` as a polynomial in variable `i`.
    pub fn binomial_weight(nvars: usize, i: usize, k: u32) -> Self {
        assert!(k >= 1, "group size must be positive");
        let x = Self::var(nvars, i);
        let mut p = Self::one(nvars);
        for j in 1..k {
            let shifted = &x + &Self::constant(nvars, Rational::from_integer(j.into()));
            p = &p * &shifted;
            p = p.scale(&Rational::new(1.into(), j.into()));
        }
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// The terms of maximal total degree.
    pub fn leading_part(&self) -> Result<Self> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// The polynomial as a single monomial, if it has exactly one term.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Monomial::new(e.clone(), c.clone()))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| Monomial::new(e.clone(), c.clone()).eval(point))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse(e.iter().sum::<u32>()));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let m = Monomial::new(e.clone(), c.abs()).display_with(names);
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                out.push_str(if c.is_negative() { "-" } else { "" });
            } else {
                write!(out, " {sign} ").unwrap();
            }
            out.push_str(&m);
        }
        out
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SparsePolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}
