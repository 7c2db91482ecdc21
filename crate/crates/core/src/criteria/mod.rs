//! Probes for the proportionality criteria, Perfect Representation checks
//! and the PRIL convergence experiment.
//!
//! A probe applies one perturbation to a profile, reruns a method and
//! compares outputs. Outputs are compared by candidate name so that
//! profiles with different candidate lists can be matched up; zero weights
//! and zero probabilities are dropped first.

pub mod pr;
pub mod pril;
pub mod probes;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::ballots::BallotProfile;
use crate::error::{Error, Result};
use crate::method::{Method, MethodOutput};
use crate::rational::Rational;
use crate::refmethods::cc_weights;
use crate::set::CandidateSet;

pub use pr::{committee_pr_feasible, misrepresentation, pr_feasible, representation_flow, RepresentationFlow};
pub use pril::{expected_party_list_misrepresentation, pril_convergence, PrilPoint};
pub use probes::{
    clone_probe, consistency_probe, iia_probe, iib_probe, iuac_probe, monotonicity_probe, pareto_dominates,
    pareto_probe, weighted_pareto_dominates,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    PassStrong,
    PassWeak,
    Fail,
    NotApplicable,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::PassStrong => "passStrong",
            Outcome::PassWeak => "passWeak",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "notApplicable",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, Outcome::PassStrong | Outcome::PassWeak)
    }

    /// Worst of two outcomes (fail beats weak beats strong).
    pub fn and(self, other: Outcome) -> Outcome {
        self.max(other)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The probes available from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Monotonicity,
    Iib,
    Iuac,
    Iia,
    Consistency,
    Clone,
    Pareto,
}

impl Probe {
    pub const ALL: [Probe; 7] =
        [Probe::Monotonicity, Probe::Iib, Probe::Iuac, Probe::Iia, Probe::Consistency, Probe::Clone, Probe::Pareto];

    pub fn name(self) -> &'static str {
        match self {
            Probe::Monotonicity => "monotonicity",
            Probe::Iib => "iib",
            Probe::Iuac => "iuac",
            Probe::Iia => "iia",
            Probe::Consistency => "consistency",
            Probe::Clone => "clone",
            Probe::Pareto => "pareto",
        }
    }
}

impl FromStr for Probe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Probe::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown probe `{s}`")))
    }
}

/// One named part of a verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, outcome: Outcome, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), outcome, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeVerdict {
    pub probe: Probe,
    pub method: Method,
    pub outcome: Outcome,
    pub perturbation: String,
    /// The profile after the perturbation, in profile-file syntax.
    pub perturbed_profile: Option<String>,
    pub before: Value,
    pub after: Value,
    pub checks: Vec<Check>,
}

impl ProbeVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "probe": self.probe.name(),
            "method": self.method.name(),
            "outcome": self.outcome.as_str(),
            "perturbation": self.perturbation,
            "perturbedProfile": self.perturbed_profile,
            "before": self.before,
            "after": self.after,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "outcome": c.outcome.as_str(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

pub type Committee = BTreeSet<String>;

/// Tied committees are expanded up to this many for name-based comparison.
pub const COMPARISON_LIMIT: usize = 100_000;

/// Absolute tolerance when comparing floating-point weights across runs.
pub const APPROX_WEIGHT_TOLERANCE: f64 = 1e-5;

/// A method output keyed by candidate names.
#[derive(Debug, Clone, PartialEq)]
pub enum Canonical {
    Committees(BTreeSet<Committee>),
    WeightedCommittees(BTreeMap<Committee, BTreeMap<String, Rational>>),
    Weights(BTreeMap<String, Rational>),
    ApproxWeights(BTreeMap<String, f64>),
    Distribution(BTreeMap<Committee, Rational>),
}

fn names(profile: &BallotProfile, set: CandidateSet) -> Committee {
    profile.names_of(set).into_iter().collect()
}

fn nonzero(profile: &BallotProfile, weights: &[Rational]) -> BTreeMap<String, Rational> {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(c, w)| (profile.name(c).to_string(), w.clone()))
        .collect()
}

impl Canonical {
    pub fn of(profile: &BallotProfile, output: &MethodOutput) -> Result<Canonical> {
        Ok(match output {
            MethodOutput::Committees(t) => {
                Canonical::Committees(t.concrete(COMPARISON_LIMIT)?.into_iter().map(|w| names(profile, w)).collect())
            }
            MethodOutput::WeightedCommittees(cc) => Canonical::WeightedCommittees(
                cc.committees
                    .concrete(COMPARISON_LIMIT)?
                    .into_iter()
                    .map(|w| (names(profile, w), nonzero(profile, &cc_weights(profile, w).weights)))
                    .collect(),
            ),
            MethodOutput::Weights(w) => Canonical::Weights(nonzero(profile, &w.weights)),
            MethodOutput::ApproxWeights(r) => Canonical::ApproxWeights(
                r.weights
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x > 0.0)
                    .map(|(c, x)| (profile.name(c).to_string(), *x))
                    .collect(),
            ),
            MethodOutput::Distribution(d) => {
                Canonical::Distribution(d.probabilities.iter().map(|(s, p)| (names(profile, *s), p.clone())).collect())
            }
        })
    }

    /// Drops candidate weights from weighted committees.
    pub fn committees_only(self) -> Canonical {
        match self {
            Canonical::WeightedCommittees(m) => Canonical::Committees(m.into_keys().collect()),
            other => other,
        }
    }

    /// Equality, with floating-point weights compared to [`APPROX_WEIGHT_TOLERANCE`].
    pub fn same(&self, other: &Canonical) -> bool {
        match (self, other) {
            (Canonical::ApproxWeights(a), Canonical::ApproxWeights(b)) => {
                let keys: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
                keys.into_iter().all(|k| {
                    let (x, y) = (a.get(k).copied().unwrap_or(0.0), b.get(k).copied().unwrap_or(0.0));
                    (x - y).abs() <= APPROX_WEIGHT_TOLERANCE
                })
            }
            _ => self == other,
        }
    }

    /// Sets of winners, when the output is a set of committees.
    pub fn committee_sets(&self) -> Option<BTreeSet<Committee>> {
        match self {
            Canonical::Committees(s) => Some(s.clone()),
            Canonical::WeightedCommittees(m) => Some(m.keys().cloned().collect()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests;
