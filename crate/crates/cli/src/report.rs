use std::fmt::Write as _;

use iacpoly::numerics::{to_decimal, Rational};
use iacpoly::reduction::ReducedSystem;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ReductionSummary {
    pub original_vars: usize,
    #[serde(rename = "D")]
    pub dim: usize,
    pub group_sizes: Vec<u32>,
    pub weight_degree: u32,
    pub variables: Vec<String>,
}

impl ReductionSummary {
    pub fn of(r: &ReducedSystem) -> Self {
        ReductionSummary {
            original_vars: r.original_vars(),
            dim: r.dim(),
            group_sizes: r.weight.sizes().to_vec(),
            weight_degree: r.weight.degree(),
            variables: r.base.names().to_vec(),
        }
    }

    fn line(&self) -> String {
        format!(
            "D = {} (from {}), group sizes {:?}, weight degree {}",
            self.dim, self.original_vars, self.group_sizes, self.weight_degree
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Reduction {
    pub numerator: ReductionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<ReductionSummary>,
}

#[derive(Debug, Serialize)]
pub struct Output {
    pub name: String,
    pub result: String,
    pub decimal: String,
}

/// Everything a subcommand reports. The exact `result` is authoritative;
/// `decimal` is a rendering of it.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: serde_json::Value,
    pub result: String,
    pub decimal: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<Output>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Reduction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasipolynomial: Option<serde_json::Value>,
    /// replaces the `result (decimal)` first line of the text report
    #[serde(skip)]
    pub headline: Option<String>,
    #[serde(skip)]
    pub details: Vec<String>,
    /// integer results print without a decimal rendering
    #[serde(skip)]
    pub integral: bool,
    pub ms: u128,
}

impl RunReport {
    pub fn new(
        command: String,
        inputs: serde_json::Value,
        result: &Rational,
        digits: usize,
    ) -> Self {
        RunReport {
            command,
            inputs,
            result: result.to_string(),
            decimal: to_decimal(result, digits),
            outputs: Vec::new(),
            reduction: None,
            quasipolynomial: None,
            headline: None,
            details: Vec::new(),
            integral: false,
            ms: 0,
        }
    }

    pub fn output(&mut self, name: &str, value: &Rational, digits: usize) {
        self.outputs.push(Output {
            name: name.into(),
            result: value.to_string(),
            decimal: to_decimal(value, digits),
        });
    }

    pub fn render_text(&self) -> String {
        let mut s = if let Some(h) = &self.headline {
            format!("{h}\n")
        } else if self.integral {
            format!("{}\n", self.result)
        } else {
            format!("{} ({})\n", self.result, self.decimal)
        };
        writeln!(s, "command: {}", self.command).unwrap();
        for o in &self.outputs {
            writeln!(s, "  {}: {} ({})", o.name, o.result, o.decimal).unwrap();
        }
        if let Some(r) = &self.reduction {
            writeln!(s, "reduction (numerator): {}", r.numerator.line()).unwrap();
            if let Some(d) = &r.denominator {
                writeln!(s, "reduction (denominator): {}", d.line()).unwrap();
            }
        }
        for d in &self.details {
            writeln!(s, "{d}").unwrap();
        }
        writeln!(s, "time: {} ms", self.ms).unwrap();
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
