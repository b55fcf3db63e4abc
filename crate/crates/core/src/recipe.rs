//! Probability assembly for the preset events.
//!
//! A recipe pairs a numerator event with the event it is conditioned on,
//! together with the symmetry multipliers that turn counts for one labelled
//! configuration into counts over all labellings. Reported quantities are
//! affine images `offset + scale * p` of the assembled ratio `p`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::reduction::{reduce_maximal, ReducedSystem};
use crate::voting::{
    event_condorcet_efficiency_violation, event_condorcet_winner, event_runoff_reversal, Candidate,
    ConstraintSystem, EventSpec, OrderIndexing,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    CondorcetWinner,
    CondorcetEfficiencyViolation,
    CondorcetEfficiency,
    RunoffReversal,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::CondorcetWinner,
        Preset::CondorcetEfficiencyViolation,
        Preset::CondorcetEfficiency,
        Preset::RunoffReversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::CondorcetWinner => "condorcet-winner",
            Preset::CondorcetEfficiencyViolation => "condorcet-efficiency-violation",
            Preset::CondorcetEfficiency => "condorcet-efficiency",
            Preset::RunoffReversal => "runoff-reversal",
        }
    }

    /// Quasi-polynomial period of the numerator count for three candidates.
    pub fn known_period(self, m: usize) -> Option<u64> {
        match (self, m) {
            (Preset::CondorcetWinner, 3) => Some(2),
            (Preset::CondorcetEfficiencyViolation | Preset::CondorcetEfficiency, 3) => Some(6),
            (Preset::RunoffReversal, 3) => Some(12),
            _ => None,
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidEvent(format!("unknown preset {s:?}")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reported quantity `offset + scale * p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub name: String,
    pub offset: Rational,
    pub scale: Rational,
}

impl Derived {
    fn identity(name: &str) -> Self {
        Derived {
            name: name.into(),
            offset: Rational::zero(),
            scale: Rational::one(),
        }
    }

    fn affine(name: &str, offset: i64, scale: i64) -> Self {
        Derived {
            name: name.into(),
            offset: Rational::from_integer(offset.into()),
            scale: Rational::from_integer(scale.into()),
        }
    }

    pub fn apply(&self, p: &Rational) -> Rational {
        &self.offset + &self.scale * p
    }
}

#[derive(Clone, Debug)]
pub struct ProbabilityRecipe {
    pub name: String,
    pub m: usize,
    pub numerator: ConstraintSystem,
    pub denominator: ConstraintSystem,
    pub numerator_multiplier: u64,
    pub denominator_multiplier: u64,
    /// The first entry is the headline result.
    pub outputs: Vec<Derived>,
    pub numerator_period: Option<u64>,
}

impl ProbabilityRecipe {
    pub fn preset(preset: Preset, m: usize) -> Result<Self> {
        if !(2..=6).contains(&m) {
            return Err(Error::InvalidEvent(format!(
                "unsupported candidate count {m}"
            )));
        }
        let (a, b) = (Candidate(0), Candidate(1));
        let m64 = m as u64;
        let orthant = ConstraintSystem::orthant(OrderIndexing::new(m).variable_names());
        let recipe = match preset {
            Preset::CondorcetWinner => ProbabilityRecipe {
                name: preset.name().into(),
                m,
                numerator: event_condorcet_winner(m, a)?,
                denominator: orthant,
                numerator_multiplier: 1,
                denominator_multiplier: 1,
                outputs: vec![
                    Derived::identity("a is the Condorcet winner"),
                    Derived::affine("a Condorcet winner exists", 0, m as i64),
                    Derived::affine("Condorcet paradox", 1, -(m as i64)),
                ],
                numerator_period: preset.known_period(m),
            },
            Preset::CondorcetEfficiencyViolation | Preset::CondorcetEfficiency => {
                let conditional =
                    Derived::identity("Condorcet winner loses plurality, given one exists");
                let efficiency = Derived::affine("Condorcet efficiency of plurality", 1, -1);
                let outputs = if preset == Preset::CondorcetEfficiency {
                    vec![efficiency, conditional]
                } else {
                    vec![conditional, efficiency]
                };
                ProbabilityRecipe {
                    name: preset.name().into(),
                    m,
                    numerator: event_condorcet_efficiency_violation(m, a, b)?,
                    denominator: event_condorcet_winner(m, a)?,
                    numerator_multiplier: m64 * (m64 - 1),
                    denominator_multiplier: m64,
                    outputs,
                    numerator_period: preset.known_period(m),
                }
            }
            Preset::RunoffReversal => ProbabilityRecipe {
                name: preset.name().into(),
                m,
                numerator: event_runoff_reversal(m)?,
                denominator: orthant,
                numerator_multiplier: m64 * (m64 - 1),
                denominator_multiplier: 1,
                outputs: vec![Derived::identity("plurality winner loses the runoff")],
                numerator_period: preset.known_period(m),
            },
        };
        Ok(recipe)
    }

    /// Probability of a user-described event among all voting situations.
    pub fn from_event(name: &str, spec: &EventSpec) -> Result<Self> {
        Ok(ProbabilityRecipe {
            name: name.into(),
            m: spec.m,
            numerator: spec.to_system()?,
            denominator: ConstraintSystem::orthant(OrderIndexing::new(spec.m).variable_names()),
            numerator_multiplier: 1,
            denominator_multiplier: 1,
            outputs: vec![Derived::identity("event probability")],
            numerator_period: None,
        })
    }

    pub fn reduced_numerator(&self) -> ReducedSystem {
        reduce_maximal(&self.numerator).with_order_names(&OrderIndexing::new(self.m))
    }

    pub fn reduced_denominator(&self) -> ReducedSystem {
        reduce_maximal(&self.denominator).with_order_names(&OrderIndexing::new(self.m))
    }

    /// `(numerator multiplier) / (denominator multiplier)`.
    pub fn multiplier(&self) -> Rational {
        Rational::new(
            self.numerator_multiplier.into(),
            self.denominator_multiplier.into(),
        )
    }

    pub fn outputs_for(&self, p: &Rational) -> Vec<(String, Rational)> {
        self.outputs
            .iter()
            .map(|d| (d.name.clone(), d.apply(p)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("borda".parse::<Preset>().is_err());
    }

    #[test]
    fn efficiency_multipliers() {
        let r = ProbabilityRecipe::preset(Preset::CondorcetEfficiencyViolation, 3).unwrap();
        assert_eq!((r.numerator_multiplier, r.denominator_multiplier), (6, 3));
        assert_eq!(r.multiplier(), rat(2, 1));
        let r4 = ProbabilityRecipe::preset(Preset::RunoffReversal, 4).unwrap();
        assert_eq!(r4.numerator_multiplier, 12);
    }

    #[test]
    fn derived_outputs() {
        let r = ProbabilityRecipe::preset(Preset::CondorcetWinner, 3).unwrap();
        let outs = r.outputs_for(&rat(5, 16));
        assert_eq!(outs[0].1, rat(5, 16));
        assert_eq!(outs[1].1, rat(15, 16));
        assert_eq!(outs[2].1, rat(1, 16));
        let e = ProbabilityRecipe::preset(Preset::CondorcetEfficiency, 3).unwrap();
        assert_eq!(e.outputs_for(&rat(16, 135))[0].1, rat(119, 135));
    }
}
