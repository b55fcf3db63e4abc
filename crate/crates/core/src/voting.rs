//! Candidates, preference orders and voting events as integer constraint
//! systems over the `m!` voting-situation counts.
//!
//! Columns follow the lexicographic order of the preference strings
//! (`abc, acb, bac, bca, cab, cba` for three candidates). A variable is named
//! after its order with the last, implied candidate dropped, e.g. `n_ab` for
//! `abc` and `n_abc` for `abcd`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate, labelled `a`, `b`, `c`, ... by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate(pub u8);

impl Candidate {
    pub fn from_label(label: &str) -> Result<Self> {
        let mut chars = label.chars();
        match (chars.next(), chars.next()) {
            (Some(c @ 'a'..='z'), None) => Ok(Candidate(c as u8 - b'a')),
            _ => Err(Error::UnknownCandidate(label.to_string())),
        }
    }

    pub fn label(self) -> char {
        (b'a' + self.0) as char
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A complete strict ranking, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreferenceOrder(Vec<Candidate>);

impl PreferenceOrder {
    pub fn ranking(&self) -> &[Candidate] {
        &self.0
    }

    pub fn first(&self) -> Candidate {
        self.0[0]
    }

    pub fn position(&self, c: Candidate) -> usize {
        self.0
            .iter()
            .position(|&x| x == c)
            .expect("candidate present in complete order")
    }

    pub fn prefers(&self, x: Candidate, y: Candidate) -> bool {
        self.position(x) < self.position(y)
    }

    pub fn label(&self) -> String {
        self.0.iter().map(|c| c.label()).collect()
    }
}

/// Bijection between column indices and the `m!` preference orders.
#[derive(Clone, Debug)]
pub struct OrderIndexing {
    m: usize,
    orders: Vec<PreferenceOrder>,
}

impl OrderIndexing {
    pub fn new(m: usize) -> Self {
        assert!((1..=26).contains(&m), "candidate count out of range");
        let orders = (0..m as u8)
            .map(Candidate)
            .permutations(m)
            .map(PreferenceOrder)
            .collect();
        OrderIndexing { m, orders }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[PreferenceOrder] {
        &self.orders
    }

    pub fn candidate(&self, label: &str) -> Result<Candidate> {
        let c = Candidate::from_label(label)?;
        if (c.0 as usize) < self.m {
            Ok(c)
        } else {
            Err(Error::UnknownCandidate(label.to_string()))
        }
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.orders
            .iter()
            .map(|o| {
                let l = o.label();
                format!("n_{}", &l[..l.len().saturating_sub(1).max(1)])
            })
            .collect()
    }

    fn check(&self, c: Candidate) -> Result<()> {
        if (c.0 as usize) < self.m {
            Ok(())
        } else {
            Err(Error::UnknownCandidate(c.label().to_string()))
        }
    }

    /// `+1` where an order ranks `x` above `y`, `-1` otherwise.
    pub fn pairwise_row(&self, x: Candidate, y: Candidate) -> Result<Vec<i64>> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Err(Error::InvalidEvent(format!(
                "pairwise comparison of {x} with itself"
            )));
        }
        Ok(self
            .orders
            .iter()
            .map(|o| if o.prefers(x, y) { 1 } else { -1 })
            .collect())
    }

    /// `+1` for orders with first preference `x`, `-1` for first preference
    /// `y`, `0` otherwise.
    pub fn plurality_row(&self, x: Candidate, y: Candidate) -> Result<Vec<i64>> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Err(Error::InvalidEvent(format!(
                "plurality comparison of {x} with itself"
            )));
        }
        Ok(self
            .orders
            .iter()
            .map(|o| match o.first() {
                f if f == x => 1,
                f if f == y => -1,
                _ => 0,
            })
            .collect())
    }
}

/// One homogeneous constraint `coeffs . x > 0` (strict) or `>= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub strict: bool,
}

impl Row {
    pub fn strict(coeffs: Vec<i64>) -> Self {
        Row {
            coeffs,
            strict: true,
        }
    }

    pub fn non_strict(coeffs: Vec<i64>) -> Self {
        Row {
            coeffs,
            strict: false,
        }
    }

    /// Right-hand side over the integers: a strict row with integer
    /// coefficients holds iff the left side is at least one.
    pub fn rhs(&self) -> i64 {
        i64::from(self.strict)
    }

    pub fn value(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Homogeneous integer inequalities over `d` nonnegative variables; the
/// slice `sum x = n` is supplied when the system is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    names: Vec<String>,
    rows: Vec<Row>,
}

impl ConstraintSystem {
    pub fn new(names: Vec<String>, rows: Vec<Row>) -> Result<Self> {
        let d = names.len();
        if d == 0 {
            return Err(Error::InvalidEvent("no variables".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.coeffs.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.coeffs.len(),
            });
        }
        Ok(ConstraintSystem { names, rows })
    }

    /// The full orthant: no rows besides nonnegativity.
    pub fn orthant(names: Vec<String>) -> Self {
        ConstraintSystem {
            names,
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r.coeffs[j]).collect()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names;
        self
    }

    /// Whether a nonnegative integer point satisfies every row.
    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v >= 0) && self.rows.iter().all(|r| r.value(x) >= r.rhs())
    }

    /// Applies a column permutation: new column `i` is old column `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        ConstraintSystem {
            names: perm.iter().map(|&j| self.names[j].clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| Row {
                    coeffs: perm.iter().map(|&j| r.coeffs[j]).collect(),
                    strict: r.strict,
                })
                .collect(),
        }
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let mut first = true;
            for (c, name) in row.coeffs.iter().zip(&self.names) {
                if *c == 0 {
                    continue;
                }
                let sign = if *c < 0 {
                    "-"
                } else if first {
                    ""
                } else {
                    "+"
                };
                let mag = if c.abs() == 1 {
                    String::new()
                } else {
                    format!("{}*", c.abs())
                };
                if first {
                    write!(f, "{sign}{mag}{name}")?;
                } else {
                    write!(f, " {sign} {mag}{name}")?;
                }
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
            writeln!(f, " {} 0", if row.strict { ">" } else { ">=" })?;
        }
        Ok(())
    }
}

fn system(indexing: &OrderIndexing, rows: Vec<Row>) -> ConstraintSystem {
    ConstraintSystem {
        names: indexing.variable_names(),
        rows,
    }
}

/// `w` beats every other candidate in pairwise majority comparison.
pub fn event_condorcet_winner(m: usize, w: Candidate) -> Result<ConstraintSystem> {
    let ix = OrderIndexing::new(m);
    condorcet_winner_rows(&ix, w).map(|rows| system(&ix, rows))
}

fn condorcet_winner_rows(ix: &OrderIndexing, w: Candidate) -> Result<Vec<Row>> {
    ix.check(w)?;
    (0..ix.m() as u8)
        .map(Candidate)
        .filter(|&c| c != w)
        .map(|c| ix.pairwise_row(w, c).map(Row::strict))
        .collect()
}

/// `cw` is the Condorcet winner while `pw` wins the plurality vote.
pub fn event_condorcet_efficiency_violation(
    m: usize,
    cw: Candidate,
    pw: Candidate,
) -> Result<ConstraintSystem> {
    if cw == pw {
        return Err(Error::InvalidEvent(
            "Condorcet winner and plurality winner coincide".into(),
        ));
    }
    let ix = OrderIndexing::new(m);
    let mut rows = condorcet_winner_rows(&ix, cw)?;
    ix.check(pw)?;
    for c in (0..m as u8).map(Candidate).filter(|&c| c != pw) {
        rows.push(Row::strict(ix.plurality_row(pw, c)?));
    }
    Ok(system(&ix, rows))
}

/// `b` wins the plurality round with `a` second, and `a` wins the runoff.
pub fn event_runoff_reversal(m: usize) -> Result<ConstraintSystem> {
    runoff_reversal_between(m, Candidate(1), Candidate(0))
}

/// `plurality_winner` tops the first round, `runner_up` is second ahead of
/// every other candidate, and `runner_up` beats `plurality_winner` pairwise.
pub fn runoff_reversal_between(
    m: usize,
    plurality_winner: Candidate,
    runner_up: Candidate,
) -> Result<ConstraintSystem> {
    if m < 3 {
        return Err(Error::InvalidEvent(
            "runoff needs at least three candidates".into(),
        ));
    }
    if plurality_winner == runner_up {
        return Err(Error::InvalidEvent(
            "runoff between a candidate and itself".into(),
        ));
    }
    let ix = OrderIndexing::new(m);
    let mut rows = vec![Row::strict(ix.plurality_row(plurality_winner, runner_up)?)];
    for c in (0..m as u8)
        .map(Candidate)
        .filter(|&c| c != plurality_winner && c != runner_up)
    {
        rows.push(Row::strict(ix.plurality_row(runner_up, c)?));
    }
    rows.push(Row::strict(ix.pairwise_row(runner_up, plurality_winner)?));
    Ok(system(&ix, rows))
}

/// Strict majority cycle `cycle[0] > cycle[1] > ... > cycle[0]`.
pub fn event_majority_cycle(m: usize, cycle: &[Candidate]) -> Result<ConstraintSystem> {
    let ix = OrderIndexing::new(m);
    let rows = cycle
        .iter()
        .zip(cycle.iter().cycle().skip(1))
        .map(|(&x, &y)| ix.pairwise_row(x, y).map(Row::strict))
        .collect::<Result<_>>()?;
    Ok(system(&ix, rows))
}

/// Event description read from a JSON file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EventSpec {
    pub m: usize,
    pub rows: Vec<RowSpec>,
    #[serde(default = "default_strict")]
    pub strict: bool,
}

fn default_strict() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSpec {
    Pairwise([String; 2]),
    Plurality([String; 2]),
}

impl EventSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_system(&self) -> Result<ConstraintSystem> {
        if !(2..=8).contains(&self.m) {
            return Err(Error::InvalidEvent(format!(
                "unsupported candidate count {}",
                self.m
            )));
        }
        let ix = OrderIndexing::new(self.m);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let coeffs = match r {
                    RowSpec::Pairwise([x, y]) => {
                        ix.pairwise_row(ix.candidate(x)?, ix.candidate(y)?)?
                    }
                    RowSpec::Plurality([x, y]) => {
                        ix.plurality_row(ix.candidate(x)?, ix.candidate(y)?)?
                    }
                };
                Ok(Row {
                    coeffs,
                    strict: self.strict,
                })
            })
            .collect::<Result<_>>()?;
        Ok(system(&ix, rows))
    }
}
