//! Equal-column symmetry reduction.
//!
//! Variables whose coefficient columns coincide in every row only ever occur
//! through their sum, so they can be merged into one group variable `N_i`.
//! A point of the reduced system stands for
//! `prod_i binom(N_i + k_i - 1, k_i - 1)` points of the original one, where
//! `k_i` is the size of group `i`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, Monomial, Rational, SparsePolynomial};
use crate::voting::{Candidate, ConstraintSystem, OrderIndexing, Row};

/// Partition of the variable indices into groups of identical columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grouping {
    groups: Vec<Vec<usize>>,
}

impl Grouping {
    /// Validates that `groups` partition `0..d`. Each group is sorted and
    /// groups are ordered by their smallest member.
    pub fn new(d: usize, mut groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; d];
        for g in &mut groups {
            if g.is_empty() {
                return Err(Error::GroupingMismatch("empty group".into()));
            }
            g.sort_unstable();
            for &j in g.iter() {
                if j >= d || std::mem::replace(&mut seen[j], true) {
                    return Err(Error::GroupingMismatch(format!(
                        "index {j} repeated or out of range"
                    )));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::GroupingMismatch(
                "groups do not cover every variable".into(),
            ));
        }
        groups.sort_by_key(|g| g[0]);
        Ok(Grouping { groups })
    }

    pub fn singletons(d: usize) -> Self {
        Grouping {
            groups: (0..d).map(|j| vec![j]).collect(),
        }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.groups.iter().map(|g| g.len() as u32).collect()
    }

    pub fn var_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

/// The maximal grouping of identical columns.
pub fn group_equal_columns(system: &ConstraintSystem) -> Grouping {
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..system.vars() {
        let col = system.column(j);
        let g = *index.entry(col).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(j);
    }
    Grouping { groups }
}

/// Multiplicity weight of a grouping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    sizes: Vec<u32>,
}

impl WeightSpec {
    pub fn new(sizes: Vec<u32>) -> Self {
        assert!(sizes.iter().all(|&k| k >= 1), "group sizes are positive");
        WeightSpec { sizes }
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Total degree, `d - D`.
    pub fn degree(&self) -> u32 {
        self.sizes.iter().map(|k| k - 1).sum()
    }

    /// The expanded product of binomials. The term count is the product of
    /// the group sizes, so only call this for small groupings.
    pub fn polynomial(&self) -> SparsePolynomial {
        let n = self.sizes.len();
        self.sizes
            .iter()
            .enumerate()
            .fold(SparsePolynomial::one(n), |acc, (i, &k)| {
                &acc * &SparsePolynomial::binomial_weight(n, i, k)
            })
    }

    /// `prod N_i^(k_i - 1) / (k_i - 1)!`, computed without expanding.
    pub fn leading_term(&self) -> Monomial {
        let denom = self
            .sizes
            .iter()
            .fold(BigUint::one(), |acc, &k| acc * factorial(u64::from(k - 1)));
        Monomial::new(
            self.sizes.iter().map(|k| k - 1).collect(),
            Rational::new(1.into(), denom.into()),
        )
    }

    pub fn eval(&self, point: &[u64]) -> BigUint {
        self.sizes
            .iter()
            .zip(point)
            .fold(BigUint::one(), |acc, (&k, &x)| {
                acc * binomial(x + u64::from(k) - 1, u64::from(k) - 1)
            })
    }
}

/// A system over group variables plus the weight restoring the original
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSystem {
    pub base: ConstraintSystem,
    pub grouping: Grouping,
    pub weight: WeightSpec,
}

impl ReducedSystem {
    pub fn dim(&self) -> usize {
        self.base.vars()
    }

    pub fn original_vars(&self) -> usize {
        self.grouping.var_count()
    }

    /// Names the group variables after the preference orders they collect.
    pub fn with_order_names(mut self, indexing: &OrderIndexing) -> Self {
        let names = self
            .grouping
            .groups()
            .iter()
            .enumerate()
            .map(|(i, g)| group_name(indexing, g).unwrap_or_else(|| format!("G{i}")))
            .collect();
        self.base = self.base.with_names(names);
        self
    }

    /// Sums the original coordinates of `x` per group.
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        self.grouping
            .groups()
            .iter()
            .map(|g| g.iter().map(|&j| x[j]).sum())
            .collect()
    }
}

/// Builds the reduced system for `g`, one representative column (the lowest
/// original index) per group.
pub fn reduce(system: &ConstraintSystem, g: &Grouping) -> Result<ReducedSystem> {
    if g.var_count() != system.vars() {
        return Err(Error::GroupingMismatch(format!(
            "grouping covers {} variables, system has {}",
            g.var_count(),
            system.vars()
        )));
    }
    for group in g.groups() {
        let rep = system.column(group[0]);
        if let Some(&j) = group.iter().find(|&&j| system.column(j) != rep) {
            return Err(Error::GroupingMismatch(format!(
                "column {j} differs from column {} in its group",
                group[0]
            )));
        }
    }
    let rows = system
        .rows()
        .iter()
        .map(|r| Row {
            coeffs: g.groups().iter().map(|grp| r.coeffs[grp[0]]).collect(),
            strict: r.strict,
        })
        .collect();
    let names = (0..g.len()).map(|i| format!("G{i}")).collect();
    Ok(ReducedSystem {
        base: ConstraintSystem::new(names, rows)?,
        grouping: g.clone(),
        weight: WeightSpec::new(g.sizes()),
    })
}

/// Reduces by the maximal equal-column grouping.
pub fn reduce_maximal(system: &ConstraintSystem) -> ReducedSystem {
    reduce(system, &group_equal_columns(system)).expect("maximal grouping is consistent")
}

/// Direct construction of the reduced plurality-vs-runoff system in
/// `2(m-1)` variables: `n_a`, `n_b`, then `n_{c.a.b}` and `n_{c.b.a}` for
/// each remaining candidate `c`.
pub fn runoff_reduced_system(m: usize) -> Result<ReducedSystem> {
    if m < 3 {
        return Err(Error::InvalidEvent(
            "runoff needs at least three candidates".into(),
        ));
    }
    let ix = OrderIndexing::new(m);
    let (a, b) = (Candidate(0), Candidate(1));
    let mut groups = vec![Vec::new(), Vec::new()];
    let mut others: Vec<[Vec<usize>; 2]> = vec![Default::default(); m - 2];
    for (j, o) in ix.orders().iter().enumerate() {
        match o.first() {
            f if f == a => groups[0].push(j),
            f if f == b => groups[1].push(j),
            f => others[f.0 as usize - 2][usize::from(!o.prefers(a, b))].push(j),
        }
    }
    let dim = 2 * (m - 1);
    let mut rows = Vec::with_capacity(m);
    let mut r = vec![0i64; dim];
    r[0] = -1;
    r[1] = 1;
    rows.push(Row::strict(r));
    for i in 0..m - 2 {
        let mut r = vec![0i64; dim];
        r[0] = 1;
        r[2 + 2 * i] = -1;
        r[3 + 2 * i] = -1;
        rows.push(Row::strict(r));
    }
    let mut r = vec![0i64; dim];
    r[0] = 1;
    r[1] = -1;
    for i in 0..m - 2 {
        r[2 + 2 * i] = 1;
        r[3 + 2 * i] = -1;
    }
    rows.push(Row::strict(r));
    for [ab, ba] in others {
        groups.push(ab);
        groups.push(ba);
    }
    let grouping = Grouping { groups };
    let names = grouping
        .groups()
        .iter()
        .enumerate()
        .map(|(i, g)| group_name(&ix, g).unwrap_or_else(|| format!("G{i}")))
        .collect();
    Ok(ReducedSystem {
        base: ConstraintSystem::new(names, rows)?,
        weight: WeightSpec::new(grouping.sizes()),
        grouping,
    })
}

/// Name for a group of preference orders following the index scheme
/// `n_a` (first preference a), `n_*a` (a last), `n_ba` (starting b, a),
/// `n_*ab` (ending a, b), `n_b*a` (b first, a last) and `n_c·a·b` (c first,
/// a ahead of b). Single orders drop their implied last candidate.
pub fn group_name(indexing: &OrderIndexing, group: &[usize]) -> Option<String> {
    let labels: Vec<String> = group
        .iter()
        .map(|&j| indexing.orders()[j].label())
        .collect();
    let m = indexing.m();
    if labels.len() == 1 {
        return Some(format!("n_{}", &labels[0][..m.saturating_sub(1).max(1)]));
    }
    let first = labels[0].as_bytes();
    let prefix = (0..m)
        .take_while(|&i| labels.iter().all(|l| l.as_bytes()[i] == first[i]))
        .count();
    let suffix = (0..m - prefix)
        .take_while(|&i| {
            labels
                .iter()
                .all(|l| l.as_bytes()[m - 1 - i] == first[m - 1 - i])
        })
        .count();
    let free = m - prefix - suffix;
    if (1..=free as u64).product::<u64>() == labels.len() as u64 {
        let p = &labels[0][..prefix];
        let s = &labels[0][m - suffix..];
        return Some(match (prefix, suffix) {
            (0, 0) => "n".into(),
            (_, 0) => format!("n_{p}"),
            _ => format!("n_{p}*{s}"),
        });
    }
    if prefix == 1 {
        let total: u64 = (1..m as u64).product();
        if labels.len() as u64 * 2 == total {
            let order = &indexing.orders()[group[0]];
            for (y, z) in (0..m as u8)
                .map(Candidate)
                .flat_map(|y| (0..m as u8).map(move |z| (y, Candidate(z))))
            {
                if y == z || y == order.first() || z == order.first() {
                    continue;
                }
                if group.iter().all(|&j| indexing.orders()[j].prefers(y, z)) {
                    return Some(format!("n_{}·{}·{}", order.first(), y, z));
                }
            }
        }
    }
    None
}
