//! Exact lattice-point counting on slices `sum x = n` of integer cones,
//! weighted counting over reduced systems, and quasi-polynomial fitting.
//!
//! Strict rows are enforced as `row . x >= 1`, which is exact because rows
//! and points are integral.

use std::collections::HashMap;
use std::ops::{AddAssign, Mul};
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::quasi::fit_class;
use crate::numerics::{binomial, QuasiPolynomial, Rational};
use crate::recipe::ProbabilityRecipe;
use crate::reduction::ReducedSystem;
use crate::voting::ConstraintSystem;

/// Periods tried, in order, when none is given.
pub const TRIAL_PERIODS: [u64; 7] = [1, 2, 3, 4, 6, 12, 24];

/// Held-out samples per residue class that a fit must reproduce. They sit
/// at 1, 2 and 4 times the sampled span, so that a run of leading zero
/// counts cannot pass for the zero polynomial.
pub const VALIDATION_POINTS: usize = 3;

/// Accumulator for counts: `u128` when the orthant count fits, else
/// `BigUint`.
trait Tally:
    Clone + Zero + One + Send + Sync + AddAssign + for<'x> Mul<&'x Self, Output = Self>
{
    fn from_big(v: &BigUint) -> Self;
}

impl Tally for u128 {
    fn from_big(v: &BigUint) -> Self {
        v.to_u128().expect("weight bounded by the orthant count")
    }
}

impl Tally for BigUint {
    fn from_big(v: &BigUint) -> Self {
        v.clone()
    }
}

/// Depth-first enumerator over `{x >= 0, sum x = n, A x >= rhs}` with the
/// variables visited in a fixed order.
struct Enumerator<'a> {
    order: Vec<usize>,
    /// coefficients reordered: `coeffs[r][depth]`
    coeffs: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    /// max of row `r` over the variables at depth `>= i`: `suffix_max[i][r]`
    suffix_max: Vec<Vec<i64>>,
    weights: Option<&'a [u32]>,
}

impl<'a> Enumerator<'a> {
    fn new(system: &ConstraintSystem, weights: Option<&'a [u32]>) -> Self {
        let d = system.vars();
        let mut order: Vec<usize> = (0..d).collect();
        // heaviest columns first so that row bounds bite early
        order.sort_by_key(|&j| {
            std::cmp::Reverse(system.column(j).iter().map(|c| c.abs()).sum::<i64>())
        });
        let coeffs: Vec<Vec<i64>> = system
            .rows()
            .iter()
            .map(|r| order.iter().map(|&j| r.coeffs[j]).collect())
            .collect();
        let rhs = system.rows().iter().map(|r| r.rhs()).collect();
        let mut suffix_max = vec![vec![i64::MIN; coeffs.len()]; d + 1];
        for i in (0..d).rev() {
            for (r, row) in coeffs.iter().enumerate() {
                suffix_max[i][r] = suffix_max[i + 1][r].max(row[i]);
            }
        }
        Enumerator {
            order,
            coeffs,
            rhs,
            suffix_max,
            weights,
        }
    }

    fn d(&self) -> usize {
        self.order.len()
    }

    fn feasible(&self, depth: usize, budget: i64, partial: &[i64]) -> bool {
        partial
            .iter()
            .zip(&self.rhs)
            .zip(&self.suffix_max[depth])
            .all(|((s, rhs), mx)| s + budget * mx >= *rhs)
    }

    /// Weight tables: `tables[depth][v] = binom(v + k - 1, k - 1)`.
    fn tables<T: Tally>(&self, n: u64) -> Option<Vec<Vec<T>>> {
        let w = self.weights?;
        Some(
            self.order
                .iter()
                .map(|&j| {
                    let k = u64::from(w[j]);
                    (0..=n)
                        .map(|v| T::from_big(&binomial(v + k - 1, k - 1)))
                        .collect()
                })
                .collect(),
        )
    }

    fn run<T: Tally>(&self, n: u64) -> T {
        let tables = self.tables::<T>(n);
        let budget = n as i64;
        let partial = vec![0i64; self.coeffs.len()];
        if !self.feasible(0, budget, &partial) {
            return T::zero();
        }
        if self.d() == 1 {
            let mut acc = T::zero();
            self.leaf(0, budget, &partial, T::one(), tables.as_deref(), &mut acc);
            return acc;
        }
        (0..=budget)
            .into_par_iter()
            .map(|v| {
                let mut acc = T::zero();
                let mut p = partial.clone();
                self.assign(0, v, &mut p);
                let w = match &tables {
                    Some(t) => t[0][v as usize].clone(),
                    None => T::one(),
                };
                if self.feasible(1, budget - v, &p) {
                    self.descend(1, budget - v, &mut p, w, tables.as_deref(), &mut acc);
                }
                acc
            })
            .reduce(T::zero, |mut a, b| {
                a += b;
                a
            })
    }

    fn assign(&self, depth: usize, v: i64, partial: &mut [i64]) {
        for (s, row) in partial.iter_mut().zip(&self.coeffs) {
            *s += row[depth] * v;
        }
    }

    fn leaf<T: Tally>(
        &self,
        depth: usize,
        v: i64,
        partial: &[i64],
        w: T,
        tables: Option<&[Vec<T>]>,
        acc: &mut T,
    ) {
        let ok = partial
            .iter()
            .zip(&self.coeffs)
            .zip(&self.rhs)
            .all(|((s, row), rhs)| s + row[depth] * v >= *rhs);
        if ok {
            match tables {
                Some(t) => *acc += w * &t[depth][v as usize],
                None => *acc += w,
            }
        }
    }

    fn descend<T: Tally>(
        &self,
        depth: usize,
        budget: i64,
        partial: &mut [i64],
        w: T,
        tables: Option<&[Vec<T>]>,
        acc: &mut T,
    ) {
        if depth + 1 == self.d() {
            self.leaf(depth, budget, partial, w, tables, acc);
            return;
        }
        for v in 0..=budget {
            self.assign(depth, v, partial);
            if self.feasible(depth + 1, budget - v, partial) {
                let wv = match tables {
                    Some(t) => w.clone() * &t[depth][v as usize],
                    None => w.clone(),
                };
                self.descend(depth + 1, budget - v, partial, wv, tables, acc);
            }
            self.assign(depth, -v, partial);
        }
    }
}

/// Number of integer points `x >= 0` with `sum x = n` satisfying every row.
pub fn count_points(system: &ConstraintSystem, n: u64) -> BigUint {
    let e = Enumerator::new(system, None);
    let d = system.vars() as u64;
    // every count is bounded by the full orthant count
    if binomial(n + d - 1, d - 1).to_u128().is_some() {
        BigUint::from(e.run::<u128>(n))
    } else {
        e.run::<BigUint>(n)
    }
}

/// Sum of the group weight over the integer points of the reduced slice;
/// equals [`count_points`] on the unreduced system.
pub fn weighted_count(reduced: &ReducedSystem, n: u64) -> BigUint {
    let sizes = reduced.weight.sizes();
    let e = Enumerator::new(&reduced.base, Some(sizes));
    let d = reduced.original_vars() as u64;
    if binomial(n + d - 1, d - 1).to_u128().is_some() {
        BigUint::from(e.run::<u128>(n))
    } else {
        e.run::<BigUint>(n)
    }
}

/// Exact probability at `n` voters: the multiplier-adjusted ratio of the
/// numerator and denominator counts, both taken over the reduced systems.
pub fn probability(recipe: &ProbabilityRecipe, n: u64) -> Result<Rational> {
    let num = weighted_count(&recipe.reduced_numerator(), n) * recipe.numerator_multiplier;
    let den = weighted_count(&recipe.reduced_denominator(), n) * recipe.denominator_multiplier;
    if den.is_zero() {
        return Err(Error::Undefined(n));
    }
    Ok(Rational::new(num.into(), den.into()))
}

/// Fits a quasi-polynomial of the given degree and period to exact values
/// supplied by `sampler`.
///
/// Residue class `r` is sampled at the `degree + 1` smallest `n >= period`
/// with `n = r (mod period)`, followed by [`VALIDATION_POINTS`] held-out
/// values in the same class that the fitted polynomial must reproduce
/// exactly.
pub fn interpolate_quasipolynomial<F>(
    degree: usize,
    period: u64,
    sampler: F,
) -> Result<QuasiPolynomial>
where
    F: Fn(u64) -> Rational + Sync,
{
    let memo = Mutex::new(HashMap::new());
    fit_period(degree, period, &|n| cached(&memo, &sampler, n))
}

/// Tries each period in turn and returns the first fit that validates.
pub fn fit_smallest_period<F>(degree: usize, periods: &[u64], sampler: F) -> Result<QuasiPolynomial>
where
    F: Fn(u64) -> Rational + Sync,
{
    let memo = Mutex::new(HashMap::new());
    let mut last = Error::PeriodTooSmall { period: 0, n: 0 };
    for &k in periods {
        match fit_period(degree, k, &|n| cached(&memo, &sampler, n)) {
            Ok(q) => return Ok(q),
            Err(e @ Error::PeriodTooSmall { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn cached<F: Fn(u64) -> Rational>(memo: &Mutex<HashMap<u64, Rational>>, f: &F, n: u64) -> Rational {
    if let Some(v) = memo.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = f(n);
    memo.lock().unwrap().insert(n, v.clone());
    v
}

/// Sample points used for residue class `r`.
pub fn sample_points(degree: usize, period: u64, r: u64) -> Vec<u64> {
    let start = period + r % period;
    let span = degree as u64 + 1;
    (0..span)
        .chain([span, 2 * span, 4 * span])
        .map(|i| start + i * period)
        .collect()
}

fn fit_period<F>(degree: usize, period: u64, sampler: &F) -> Result<QuasiPolynomial>
where
    F: Fn(u64) -> Rational + Sync,
{
    if period == 0 {
        return Err(Error::NotEnoughSamples { period, residue: 0 });
    }
    let points: Vec<u64> = (0..period)
        .flat_map(|r| sample_points(degree, period, r))
        .collect();
    let values: HashMap<u64, Rational> = points.par_iter().map(|&n| (n, sampler(n))).collect();
    let polys = (0..period)
        .map(|r| {
            let pts = sample_points(degree, period, r);
            let samples: Vec<_> = pts[..=degree]
                .iter()
                .map(|&n| (n, values[&n].clone()))
                .collect();
            let validation: Vec<_> = pts[degree + 1..]
                .iter()
                .map(|&n| (n, values[&n].clone()))
                .collect();
            fit_class(degree, &samples, &validation, period)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuasiPolynomial::new(polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, UniPoly};
    use crate::reduction::{reduce, reduce_maximal, Grouping};
    use crate::voting::{event_condorcet_winner, Candidate, Row};

    const A: Candidate = Candidate(0);

    fn orthant(d: usize) -> ConstraintSystem {
        ConstraintSystem::orthant((0..d).map(|i| format!("x{i}")).collect())
    }

    /// Every point of the slice, by odometer.
    fn brute_force(system: &ConstraintSystem, n: u64) -> u64 {
        let d = system.vars();
        let mut x = vec![0i64; d];
        let mut count = 0;
        loop {
            let rest = n as i64 - x[..d - 1].iter().sum::<i64>();
            if rest >= 0 {
                x[d - 1] = rest;
                if system.satisfied_by(&x) {
                    count += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == d - 1 {
                    return count;
                }
                x[i] += 1;
                if x[i] <= n as i64 {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn full_orthant() {
        assert_eq!(count_points(&orthant(6), 2), BigUint::from(21u32));
        assert_eq!(count_points(&orthant(1), 9), BigUint::one());
        assert_eq!(count_points(&orthant(3), 0), BigUint::one());
    }

    #[test]
    fn condorcet_small_n() {
        let sys = event_condorcet_winner(3, A).unwrap();
        assert_eq!(brute_force(&sys, 1), 2);
        assert_eq!(brute_force(&sys, 2), 3);
        assert_eq!(count_points(&sys, 0), BigUint::zero());
        assert_eq!(count_points(&sys, 1), BigUint::from(2u32));
        assert_eq!(count_points(&sys, 2), BigUint::from(3u32));
        for n in 0..12 {
            assert_eq!(
                count_points(&sys, n),
                BigUint::from(brute_force(&sys, n)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn weighted_matches_unweighted() {
        let sys = event_condorcet_winner(3, A).unwrap();
        let r = reduce_maximal(&sys);
        assert_eq!(weighted_count(&r, 2), BigUint::from(3u32));
        let trivial = reduce(&sys, &Grouping::singletons(6)).unwrap();
        for n in 0..15 {
            let c = count_points(&sys, n);
            assert_eq!(weighted_count(&r, n), c);
            assert_eq!(weighted_count(&trivial, n), c);
        }
    }

    #[test]
    fn row_scaling_invariance() {
        let sys = event_condorcet_winner(3, A).unwrap();
        let scaled = ConstraintSystem::new(
            sys.names().to_vec(),
            sys.rows()
                .iter()
                .map(|r| Row::strict(r.coeffs.iter().map(|c| 3 * c).collect()))
                .collect(),
        )
        .unwrap();
        // 3 * row >= 1 and row >= 1 agree on integers
        for n in 0..10 {
            assert_eq!(count_points(&sys, n), count_points(&scaled, n));
        }
    }

    #[test]
    fn binomial_quasipolynomial() {
        let sys = orthant(6);
        let q = interpolate_quasipolynomial(5, 1, |n| {
            Rational::from_integer(count_points(&sys, n).into())
        })
        .unwrap();
        assert_eq!(q.period(), 1);
        for n in 0..20u64 {
            assert_eq!(q.eval(n), Rational::from_integer(binomial(n + 5, 5).into()));
        }
    }

    #[test]
    fn wrong_period_is_reported() {
        let parity = |n: u64| int((n % 2) as i64);
        assert!(matches!(
            interpolate_quasipolynomial(1, 1, parity),
            Err(Error::PeriodTooSmall { .. })
        ));
        let q = fit_smallest_period(1, &TRIAL_PERIODS, parity).unwrap();
        assert_eq!(q.period(), 2);
        assert_eq!(q.polys()[1], UniPoly::new(vec![int(1)]));
    }

    #[test]
    fn samples_start_at_period() {
        assert_eq!(sample_points(1, 2, 0), [2, 4, 6, 10, 18]);
        assert_eq!(sample_points(1, 2, 1), [3, 5, 7, 11, 19]);
        assert_eq!(sample_points(0, 1, 0), [1, 2, 3, 5]);
    }
}
