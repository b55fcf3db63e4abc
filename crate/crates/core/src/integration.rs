//! Exact integration of monomials over simplices and polytopes in the slice
//! `sum z = 1`, and limiting probabilities as ratios of leading-term
//! integrals.
//!
//! For a simplex with vertices `q_1..q_D` and a monomial `z^e` of degree `M`,
//!
//! ```text
//! int z^e = |det Q| * e! / (M + D - 1)! * [u^e] prod_j 1 / (1 - <q_j, u>)
//! ```
//!
//! which is the Dirichlet moment formula summed over the barycentric
//! expansion of `z^e`. The coefficient extraction only touches exponents
//! `beta <= e`, so the work is `prod (e_k + 1)` per vertex instead of the
//! number of degree-`M` monomials in `D` variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{triangulate, vertex_enumeration, Polytope, Simplex};
use crate::numerics::{factorial, Monomial, Rational, SparsePolynomial};
use crate::recipe::ProbabilityRecipe;
use crate::reduction::ReducedSystem;

fn check_dims(s: &Simplex, m: &Monomial) -> Result<()> {
    if m.exponents.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: m.exponents.len(),
        });
    }
    Ok(())
}

/// `int_s m(z) dz` under the drop-last-coordinate normalization.
pub fn integrate_monomial_simplex(s: &Simplex, m: &Monomial) -> Result<Rational> {
    check_dims(s, m)?;
    let d = s.dim();
    let degree = m.degree() as u64;
    let sums: Vec<BigInt> = s.rays().iter().map(|r| r.iter().sum()).collect();
    let lcm = sums.iter().fold(BigInt::one(), |l, v| l.lcm(v));
    // vertices q_j = scaled_j / lcm with integer scaled_j
    let scaled: Vec<Vec<BigInt>> = s
        .rays()
        .iter()
        .zip(&sums)
        .map(|(r, sum)| {
            let f = &lcm / sum;
            r.iter().map(|v| v * &f).collect()
        })
        .collect();
    let det = crate::numerics::determinant_int(&scaled).abs();
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    let coeff = box_coefficient(&scaled, &m.exponents);
    let e_fact = m.exponents.iter().fold(BigInt::one(), |acc, &e| {
        acc * BigInt::from(factorial(e.into()))
    });
    let num = det * e_fact * coeff;
    let den =
        num_traits::pow(lcm, d + degree as usize) * BigInt::from(factorial(degree + d as u64 - 1));
    Ok(&m.coefficient * Rational::new(num, den))
}

/// `[u^e] prod_j 1 / (1 - <p_j, u>)`, restricted to the support of `e`.
fn box_coefficient(points: &[Vec<BigInt>], e: &[u32]) -> BigInt {
    let support: Vec<usize> = (0..e.len()).filter(|&k| e[k] > 0).collect();
    let radix: Vec<usize> = support.iter().map(|&k| e[k] as usize + 1).collect();
    let mut stride = vec![1usize; support.len()];
    for t in 1..support.len() {
        stride[t] = stride[t - 1] * radix[t - 1];
    }
    let size: usize = radix.iter().product();
    let mut g = vec![BigInt::zero(); size];
    g[0] = BigInt::one();
    let mut digits = vec![0usize; support.len()];
    for p in points {
        let coords: Vec<&BigInt> = support.iter().map(|&k| &p[k]).collect();
        digits.iter_mut().for_each(|x| *x = 0);
        for idx in 1..size {
            // odometer increment, first digit fastest
            for t in 0..digits.len() {
                digits[t] += 1;
                if digits[t] < radix[t] {
                    break;
                }
                digits[t] = 0;
            }
            let mut acc = BigInt::zero();
            for t in 0..support.len() {
                if digits[t] > 0 && !coords[t].is_zero() {
                    acc += coords[t] * &g[idx - stride[t]];
                }
            }
            g[idx] += acc;
        }
    }
    g.pop().expect("box is nonempty")
}

/// Reference integrator: expands `z^e` in barycentric coordinates with term
/// combining and integrates each `lambda^beta` by the Dirichlet formula
/// `relvol * (D-1)! * beta! / (|beta| + D - 1)!`.
pub fn integrate_monomial_simplex_expanded(s: &Simplex, m: &Monomial) -> Result<Rational> {
    check_dims(s, m)?;
    let d = s.dim();
    let points = s.points();
    let mut poly = SparsePolynomial::one(d);
    for (k, &e) in m.exponents.iter().enumerate() {
        let linear = SparsePolynomial::from_terms(
            d,
            points.iter().enumerate().map(|(j, q)| {
                let mut ex = vec![0; d];
                ex[j] = 1;
                (ex, q[k].clone())
            }),
        );
        for _ in 0..e {
            poly = &poly * &linear;
        }
    }
    let relvol = s.relative_volume();
    let base = relvol * Rational::from_integer(factorial(d as u64 - 1).into());
    let degree = m.degree() as u64;
    let denom = Rational::from_integer(factorial(degree + d as u64 - 1).into());
    let total = poly
        .terms()
        .map(|(beta, c)| {
            let bf = beta.iter().fold(BigInt::one(), |acc, &b| {
                acc * BigInt::from(factorial(b.into()))
            });
            c * Rational::from_integer(bf)
        })
        .fold(Rational::zero(), |a, b| a + b);
    Ok(&m.coefficient * total * base / denom)
}

/// Sum of per-simplex integrals, reduced in a fixed order.
pub fn integrate_over_simplices(simplices: &[Simplex], m: &Monomial) -> Result<Rational> {
    let parts = simplices
        .par_iter()
        .map(|s| integrate_monomial_simplex(s, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(Rational::zero(), |a, b| a + b))
}

/// `int_P m(z) dz` over a triangulation of the polytope.
pub fn integrate_monomial_polytope(p: &Polytope, m: &Monomial) -> Result<Rational> {
    if m.exponents.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: m.exponents.len(),
        });
    }
    let v = vertex_enumeration(p);
    let simplices = triangulate(&v)?;
    integrate_over_simplices(&simplices, m)
}

/// Integral of the reduced system's leading weight term over the closure
/// of its slice. Its ratio across systems is the limiting ratio of their
/// weighted counts.
pub fn leading_term_integral(reduced: &ReducedSystem) -> Result<Rational> {
    integrate_monomial_polytope(
        &Polytope::from_system(&reduced.base),
        &reduced.weight.leading_term(),
    )
}

/// `lim_{n -> inf}` of the assembled probability, as the multiplier-adjusted
/// ratio of leading-term integrals over the two reduced polytopes.
pub fn limiting_probability(recipe: &ProbabilityRecipe) -> Result<Rational> {
    let num = match leading_term_integral(&recipe.reduced_numerator()) {
        Ok(v) => v,
        // lower-dimensional or empty numerator has measure zero
        Err(Error::EmptyPolytope | Error::Degenerate { .. }) => Rational::zero(),
        Err(e) => return Err(e),
    };
    let den = leading_term_integral(&recipe.reduced_denominator())?;
    if den.is_zero() {
        return Err(Error::EmptyPolytope);
    }
    Ok(recipe.multiplier() * num / den)
}

/// The same limit from relative volumes of the unreduced polytopes.
pub fn limiting_probability_by_volume(recipe: &ProbabilityRecipe) -> Result<Rational> {
    let num = crate::geometry::relative_volume(&Polytope::from_system(&recipe.numerator));
    let den = crate::geometry::relative_volume(&Polytope::from_system(&recipe.denominator));
    if den.is_zero() {
        return Err(Error::EmptyPolytope);
    }
    Ok(recipe.multiplier() * num / den)
}
