//! `iacpoly`: exact probabilities of voting events under the Impartial
//! Anonymous Culture assumption.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use iacpoly::counting::{
    count_points, fit_smallest_period, interpolate_quasipolynomial, probability, weighted_count,
    TRIAL_PERIODS,
};
use iacpoly::geometry::{relative_volume, Polytope};
use iacpoly::integration::{leading_term_integral, limiting_probability};
use iacpoly::numerics::Rational;
use iacpoly::recipe::{Preset, ProbabilityRecipe};
use iacpoly::reduction::ReducedSystem;
use iacpoly::voting::{EventSpec, OrderIndexing};
use iacpoly::Error;
use num_traits::Zero;
use serde_json::json;

use report::{Reduction, ReductionSummary, RunReport};

#[derive(Parser, Debug)]
#[command(
    name = "iacpoly",
    version,
    about = "Exact IAC probabilities of voting events"
)]
struct Cli {
    /// Worker threads (default: all available)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit the report as a single JSON object
    #[arg(long, global = true)]
    json: bool,
    /// Digits in decimal renderings
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct EventArgs {
    /// Preset name or path to an event JSON file
    #[arg(long)]
    event: Option<String>,
    #[arg(value_name = "EVENT", conflicts_with = "event")]
    event_positional: Option<String>,
    /// Number of candidates
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count voting situations of the event at n voters
    Count {
        #[command(flatten)]
        event: EventArgs,
        #[arg(long)]
        n: u64,
        /// Weighted count over the equal-column reduced system
        #[arg(long)]
        reduced: bool,
    },
    /// Fit the Ehrhart quasi-polynomial of the event count
    Quasipoly {
        #[command(flatten)]
        event: EventArgs,
        #[arg(long)]
        period: Option<u64>,
    },
    /// Exact probability at n voters
    Prob {
        #[command(flatten)]
        event: EventArgs,
        #[arg(long)]
        n: u64,
    },
    /// Exact limiting probability as n tends to infinity
    Limit {
        #[command(flatten)]
        event: EventArgs,
    },
    /// Show the equal-column grouping and weight
    Reduce {
        #[command(flatten)]
        event: EventArgs,
    },
    /// Relative volumes (unreduced) or leading-term integrals (reduced)
    Volume {
        #[command(flatten)]
        event: EventArgs,
        #[arg(long)]
        unreduced: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EmptyPolytope
            | Error::Degenerate { .. }
            | Error::DegenerateSimplex
            | Error::Undefined(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn resolve(event: &EventArgs) -> Result<ProbabilityRecipe, Failure> {
    let name = event
        .event
        .as_ref()
        .or(event.event_positional.as_ref())
        .ok_or_else(|| bad_input("missing --event"))?;
    if let Ok(preset) = name.parse::<Preset>() {
        let m = event
            .m
            .ok_or_else(|| bad_input("--m is required for preset events"))?;
        return Ok(ProbabilityRecipe::preset(preset, m)?);
    }
    let text = std::fs::read_to_string(name).map_err(|e| {
        bad_input(format!(
            "{name:?} is neither a preset nor a readable event file: {e}"
        ))
    })?;
    let spec = EventSpec::from_json(&text)?;
    if let Some(m) = event.m {
        if m != spec.m {
            return Err(bad_input(format!(
                "--m {m} disagrees with m = {} in {name}",
                spec.m
            )));
        }
    }
    Ok(ProbabilityRecipe::from_event(name, &spec)?)
}

fn weight_formula(r: &ReducedSystem) -> String {
    let factors: Vec<String> = r
        .base
        .names()
        .iter()
        .zip(r.weight.sizes())
        .filter(|(_, &k)| k > 1)
        .map(|(name, &k)| {
            if k == 2 {
                format!("({name} + 1)")
            } else {
                format!("binom({name} + {}, {})", k - 1, k - 1)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" * ")
    }
}

fn reduction_details(label: &str, r: &ReducedSystem, m: usize) -> Vec<String> {
    let ix = OrderIndexing::new(m);
    let mut out = vec![format!("{label} groups:")];
    for (name, g) in r.base.names().iter().zip(r.grouping.groups()) {
        let orders: Vec<String> = g.iter().map(|&j| ix.orders()[j].label()).collect();
        out.push(format!(
            "  {name} = {{{}}} (k = {})",
            orders.join(", "),
            g.len()
        ));
    }
    out.push(format!("{label} reduced system:"));
    out.extend(r.base.to_string().lines().map(|l| format!("  {l}")));
    out.push(format!("{label} weight: {}", weight_formula(r)));
    out.push(format!(
        "{label} leading term: {}",
        r.weight.leading_term().display_with(r.base.names())
    ));
    out
}

fn inputs(command: &str, event: &EventArgs, extra: serde_json::Value) -> serde_json::Value {
    let mut v = json!({
        "command": command,
        "event": event.event.as_ref().or(event.event_positional.as_ref()),
        "m": event.m,
    });
    if let (Some(obj), Some(more)) = (v.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    v
}

fn run(command: &Command, digits: usize, echo: String) -> Result<RunReport, Failure> {
    let report = match command {
        Command::Count { event, n, reduced } => {
            let recipe = resolve(event)?;
            let (count, summary) = if *reduced {
                let r = recipe.reduced_numerator();
                (weighted_count(&r, *n), Some(ReductionSummary::of(&r)))
            } else {
                (count_points(&recipe.numerator, *n), None)
            };
            let value = Rational::from_integer(count.into());
            let mut rep = RunReport::new(
                echo,
                inputs("count", event, json!({"n": n, "reduced": reduced})),
                &value,
                digits,
            );
            rep.decimal = rep.result.clone();
            rep.integral = true;
            rep.reduction = summary.map(|numerator| Reduction {
                numerator,
                denominator: None,
            });
            rep
        }
        Command::Quasipoly { event, period } => {
            let recipe = resolve(event)?;
            let r = recipe.reduced_numerator();
            let degree = r.original_vars() - 1;
            let sampler = |n: u64| Rational::from_integer(weighted_count(&r, n).into());
            let q = match period.or(recipe.numerator_period) {
                Some(k) => interpolate_quasipolynomial(degree, k, sampler)?,
                None => fit_smallest_period(degree, &TRIAL_PERIODS, sampler)?,
            };
            let lead = q.leading_coefficients();
            let mut rep = RunReport::new(
                echo,
                inputs("quasipoly", event, json!({"period": period})),
                &lead[0],
                digits,
            );
            rep.headline = Some(format!(
                "period {}, degree {}, leading coefficient {}",
                q.period(),
                degree,
                lead[0]
            ));
            let polys: Vec<Vec<String>> = q
                .polys()
                .iter()
                .map(|p| p.coeffs().iter().map(ToString::to_string).collect())
                .collect();
            for (res, p) in polys.iter().enumerate() {
                rep.details.push(format!(
                    "n = {res} mod {}: [{}] (constant term first)",
                    q.period(),
                    p.join(", ")
                ));
            }
            rep.details.push("fractional-part form:".into());
            rep.details.push(q.fractional_part_form());
            rep.quasipolynomial = Some(json!({
                "period": q.period(),
                "degree": degree,
                "polys": polys,
                "fractional_form": q.fractional_part_form(),
            }));
            rep.reduction = Some(Reduction {
                numerator: ReductionSummary::of(&r),
                denominator: None,
            });
            rep
        }
        Command::Prob { event, n } => {
            let recipe = resolve(event)?;
            let p = probability(&recipe, *n)?;
            let mut rep = RunReport::new(echo, inputs("prob", event, json!({"n": n})), &p, digits);
            for (name, v) in recipe.outputs_for(&p) {
                rep.output(&name, &v, digits);
            }
            rep
        }
        Command::Limit { event } => {
            let recipe = resolve(event)?;
            let p = limiting_probability(&recipe)?;
            let outputs = recipe.outputs_for(&p);
            let mut rep = RunReport::new(
                echo,
                inputs("limit", event, json!({})),
                &outputs[0].1,
                digits,
            );
            for (name, v) in &outputs {
                rep.output(name, v, digits);
            }
            rep.reduction = Some(Reduction {
                numerator: ReductionSummary::of(&recipe.reduced_numerator()),
                denominator: Some(ReductionSummary::of(&recipe.reduced_denominator())),
            });
            rep
        }
        Command::Reduce { event } => {
            let recipe = resolve(event)?;
            let num = recipe.reduced_numerator();
            let den = recipe.reduced_denominator();
            let lead = num.weight.leading_term();
            let mut rep = RunReport::new(
                echo,
                inputs("reduce", event, json!({})),
                &lead.coefficient,
                digits,
            );
            rep.headline = Some(format!(
                "D = {} (from {}), weight degree {}",
                num.dim(),
                num.original_vars(),
                num.weight.degree()
            ));
            rep.details
                .extend(reduction_details("numerator", &num, recipe.m));
            rep.details
                .extend(reduction_details("denominator", &den, recipe.m));
            rep.reduction = Some(Reduction {
                numerator: ReductionSummary::of(&num),
                denominator: Some(ReductionSummary::of(&den)),
            });
            rep
        }
        Command::Volume { event, unreduced } => {
            let recipe = resolve(event)?;
            let (num, den, what) = if *unreduced {
                (
                    relative_volume(&Polytope::from_system(&recipe.numerator)),
                    relative_volume(&Polytope::from_system(&recipe.denominator)),
                    "relative volume",
                )
            } else {
                let num = match leading_term_integral(&recipe.reduced_numerator()) {
                    Ok(v) => v,
                    Err(Error::EmptyPolytope | Error::Degenerate { .. }) => Rational::zero(),
                    Err(e) => return Err(e.into()),
                };
                (
                    num,
                    leading_term_integral(&recipe.reduced_denominator())?,
                    "leading-term integral",
                )
            };
            if den.is_zero() {
                return Err(Error::EmptyPolytope.into());
            }
            let ratio = recipe.multiplier() * &num / &den;
            let mut rep = RunReport::new(
                echo,
                inputs("volume", event, json!({"unreduced": unreduced})),
                &ratio,
                digits,
            );
            rep.output(&format!("numerator {what}"), &num, digits);
            rep.output(&format!("denominator {what}"), &den, digits);
            rep.output("multiplier", &recipe.multiplier(), digits);
            if !*unreduced {
                rep.reduction = Some(Reduction {
                    numerator: ReductionSummary::of(&recipe.reduced_numerator()),
                    denominator: Some(ReductionSummary::of(&recipe.reduced_denominator())),
                });
            }
            rep
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(k);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    match pool.install(|| run(&cli.command, cli.digits, echo)) {
        Ok(mut rep) => {
            rep.ms = start.elapsed().as_millis();
            if cli.json {
                println!("{}", rep.render_json());
            } else {
                print!("{}", rep.render_text());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
