//! Plain-text reports.

use std::fmt::Write;

use cowpea_core::criteria::PrilPoint;
use cowpea_core::criteria::ProbeVerdict;
use cowpea_core::method::LISTED_COMMITTEES;
use cowpea_core::rational::{decimal, format_rational, round_sig12};
use cowpea_core::refmethods::{OptPavResult, TiedCommittees};
use cowpea_core::{BallotProfile, CandidateSet, MethodOutput, Rational, Score, SeatDistribution};

use crate::golden::NoteReport;

pub fn names_of(names: &[String], set: CandidateSet) -> Vec<String> {
    set.iter().map(|c| names[c].clone()).collect()
}

pub fn exact(r: &Rational) -> String {
    format!("{} {}", format_rational(r), decimal(r))
}

pub fn score(s: &Score) -> String {
    match s {
        Score::Exact(r) => exact(r),
        Score::Approx(x) => round_sig12(*x).to_string(),
        Score::Worst => "worst".to_string(),
    }
}

pub fn weights(names: &[String], weights: &[Rational]) -> String {
    let mut out = String::new();
    for (n, w) in names.iter().zip(weights) {
        let _ = writeln!(out, "{n} {}", exact(w));
    }
    out
}

pub fn sequence(names: &[String], elected: &[usize]) -> String {
    let line: Vec<&str> = elected.iter().map(|&c| names[c].as_str()).collect();
    format!("{}\n", line.join(" "))
}

pub fn counts(names: &[String], counts: &[u64], trials: u64) -> String {
    let mut out = format!("trials {trials}\n");
    for (n, &c) in names.iter().zip(counts) {
        let _ = writeln!(out, "{n} {c} {}", round_sig12(c as f64 / trials as f64));
    }
    out
}

pub fn distribution(names: &[String], d: &SeatDistribution) -> String {
    let mut out = String::new();
    for (set, p) in &d.probabilities {
        let _ = writeln!(out, "{{{}}} {}", names_of(names, *set).join(" "), exact(p));
    }
    out.push_str("inclusion\n");
    for (c, n) in names.iter().enumerate() {
        let _ = writeln!(out, "{n} {}", exact(&d.inclusion(c)));
    }
    out
}

fn committees(profile: &BallotProfile, t: &TiedCommittees) -> String {
    let names: Vec<String> = profile.candidates().iter().map(|c| c.to_string()).collect();
    let mut out = format!("score {}\nwinning committees {}\n", score(&t.score), t.count());
    if (t.patterns.len() as u128) < t.count() {
        let _ = writeln!(out, "distinct up to clones {}", t.patterns.len());
    }
    match t.concrete(LISTED_COMMITTEES) {
        Ok(list) => {
            for w in list {
                let _ = writeln!(out, "{}", names_of(&names, w).join(" "));
            }
        }
        Err(_) => {
            for p in &t.patterns {
                let parts: Vec<String> = t
                    .classes
                    .iter()
                    .zip(p)
                    .filter(|(_, &m)| m > 0)
                    .map(|(class, &m)| format!("{m} of [{}]", names_of(&names, *class).join(" ")))
                    .collect();
                let _ = writeln!(out, "{}", parts.join(", "));
            }
        }
    }
    out
}

fn approx_weights(names: &[String], r: &OptPavResult) -> String {
    let mut out = String::new();
    for (n, x) in names.iter().zip(&r.weights) {
        let _ = writeln!(out, "{n} {}", round_sig12(*x));
    }
    let _ = writeln!(out, "iterations {}\nkkt residual {:e}", r.iterations, r.kkt_residual);
    if !r.excluded_ballots.is_empty() {
        let lines: Vec<String> = r.excluded_ballots.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "excluded empty ballots {}", lines.join(" "));
    }
    out
}

pub fn method_output(profile: &BallotProfile, output: &MethodOutput) -> String {
    let names: Vec<String> = profile.candidates().iter().map(|c| c.to_string()).collect();
    match output {
        MethodOutput::Committees(t) => committees(profile, t),
        MethodOutput::WeightedCommittees(cc) => {
            let mut out = committees(profile, &cc.committees);
            for w in &cc.weights {
                let parts: Vec<String> =
                    w.committee.iter().map(|c| format!("{} {}", names[c], format_rational(&w.weights[c]))).collect();
                let tie = if w.assignment_tie { " (assignment tie)" } else { "" };
                let _ = writeln!(out, "weights {}{tie}", parts.join(", "));
            }
            out
        }
        MethodOutput::Weights(w) => weights(&names, &w.weights),
        MethodOutput::ApproxWeights(r) => approx_weights(&names, r),
        MethodOutput::Distribution(d) => distribution(&names, d),
    }
}

pub fn verdict(v: &ProbeVerdict) -> String {
    let mut out = format!("{} {} {}\nperturbation {}\n", v.probe.name(), v.method, v.outcome, v.perturbation);
    for c in &v.checks {
        let _ = writeln!(out, "  {} {}: {}", c.name, c.outcome, c.detail);
    }
    out
}

pub fn pril(points: &[PrilPoint]) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "seats {} mean misrepresentation {}", p.seats, round_sig12(p.mean_misrepresentation));
    }
    out
}

pub fn golden(reports: &[NoteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.ok() { "ok" } else { "MISMATCH" };
        let _ = writeln!(out, "Note {:>2} {status:<8} {}", r.note, r.title);
        for c in &r.checks {
            let mark = if c.ok { "ok" } else { "MISMATCH" };
            let _ = writeln!(out, "    {mark:<8} {}: expected {}, computed {}", c.what, c.expected, c.computed);
        }
    }
    let passed = reports.iter().filter(|r| r.ok()).count();
    let _ = writeln!(out, "{passed}/{} note groups verified", reports.len());
    out
}
