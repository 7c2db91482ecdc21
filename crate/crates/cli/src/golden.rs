//! Built-in golden examples checked by `cowpea verify-paper`.

use std::collections::{BTreeMap, BTreeSet};

use cowpea_core::method::committee_score;
use cowpea_core::rational::{decimal, format_rational, parse_rational, round_sig12};
use cowpea_core::{
    cowpea_weights, lottery_exact_distribution, parse_approval_profile, run_method, BallotProfile, CandidateSet,
    Method, MethodOutput, Rational, RunOptions, Score, TiedCommittees,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::Failure;

/// The golden file shipped with the tool.
pub const BUILTIN: &str = include_str!("../golden.toml");

/// Allowed gap between an iterative solver's score and an exact reference value.
pub const SOLVER_TOLERANCE: f64 = 1e-9;

const PROFILES: [(&str, &str); 26] = [
    ("example-01", include_str!("../profiles/example-01.txt")),
    ("example-02", include_str!("../profiles/example-02.txt")),
    ("example-03", include_str!("../profiles/example-03.txt")),
    ("example-04", include_str!("../profiles/example-04.txt")),
    ("example-05", include_str!("../profiles/example-05.txt")),
    ("example-06", include_str!("../profiles/example-06.txt")),
    ("example-07", include_str!("../profiles/example-07.txt")),
    ("example-08", include_str!("../profiles/example-08.txt")),
    ("example-09", include_str!("../profiles/example-09.txt")),
    ("example-10", include_str!("../profiles/example-10.txt")),
    ("example-11", include_str!("../profiles/example-11.txt")),
    ("example-12", include_str!("../profiles/example-12.txt")),
    ("example-13", include_str!("../profiles/example-13.txt")),
    ("example-14", include_str!("../profiles/example-14.txt")),
    ("example-15", include_str!("../profiles/example-15.txt")),
    ("example-16", include_str!("../profiles/example-16.txt")),
    ("example-17", include_str!("../profiles/example-17.txt")),
    ("example-18", include_str!("../profiles/example-18.txt")),
    ("example-19", include_str!("../profiles/example-19.txt")),
    ("example-20", include_str!("../profiles/example-20.txt")),
    ("example-21", include_str!("../profiles/example-21.txt")),
    ("example-22", include_str!("../profiles/example-22.txt")),
    ("example-23", include_str!("../profiles/example-23.txt")),
    ("example-24", include_str!("../profiles/example-24.txt")),
    ("example-25", include_str!("../profiles/example-25.txt")),
    ("example-26", include_str!("../profiles/example-26.txt")),
];

/// Text of a built-in example profile, keyed `example-NN`.
pub fn builtin_profile(key: &str) -> Option<&'static str> {
    PROFILES.iter().find(|(k, _)| *k == key).map(|(_, text)| *text)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoldenFile {
    note: Vec<NoteEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NoteEntry {
    note: u32,
    title: String,
    profile: String,
    check: Vec<CheckEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum CheckEntry {
    Score {
        method: String,
        seats: usize,
        committee: String,
        value: Option<String>,
        decimal: Option<f64>,
        tolerance: Option<f64>,
    },
    Winners {
        method: String,
        seats: usize,
        committees: Vec<String>,
    },
    WinnerCounts {
        method: String,
        seats: usize,
        counts: BTreeMap<String, usize>,
    },
    Weights {
        method: String,
        weights: BTreeMap<String, String>,
    },
    ApproxWeights {
        method: String,
        weights: BTreeMap<String, f64>,
        tolerance: f64,
    },
    Probability {
        seats: usize,
        committee: String,
        value: String,
    },
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct NoteReport {
    pub note: u32,
    pub title: String,
    pub checks: Vec<CheckReport>,
}

impl NoteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "note": self.note,
            "title": self.title,
            "ok": self.ok(),
            "checks": self.checks.iter().map(|c| json!({
                "what": c.what,
                "expected": c.expected,
                "computed": c.computed,
                "ok": c.ok,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates every check in a golden file.
pub fn verify(text: &str) -> Result<Vec<NoteReport>, Failure> {
    let file: GoldenFile = toml::from_str(text).map_err(|e| Failure::input(format!("golden file: {e}")))?;
    let opts = RunOptions::default();
    let mut reports = Vec::new();
    for note in file.note {
        let source = builtin_profile(&note.profile)
            .ok_or_else(|| Failure::input(format!("note {}: unknown profile `{}`", note.note, note.profile)))?;
        let profile = parse_approval_profile(source)?;
        let checks = note
            .check
            .iter()
            .map(|c| evaluate(&profile, c, &opts))
            .collect::<Result<Vec<_>, Failure>>()
            .map_err(|f| Failure::new(f.code, format!("note {}: {}", note.note, f.message)))?;
        reports.push(NoteReport { note: note.note, title: note.title, checks });
    }
    Ok(reports)
}

fn method(name: &str) -> Result<Method, Failure> {
    name.parse().map_err(|e: cowpea_core::Error| Failure::new(crate::EXIT_UNKNOWN_NAME, e.to_string()))
}

fn rational(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::input(format!("malformed rational `{text}`")))
}

fn label(profile: &BallotProfile, set: CandidateSet) -> String {
    profile.names_of(set).join(" ")
}

fn winners(profile: &BallotProfile, m: Method, k: usize, opts: &RunOptions) -> Result<TiedCommittees, Failure> {
    match run_method(m, profile, k, opts)? {
        MethodOutput::Committees(t) => Ok(t),
        MethodOutput::WeightedCommittees(cc) => Ok(cc.committees),
        _ => Err(Failure::input(format!("{} does not elect committees", m.name()))),
    }
}

fn group_of(name: &str) -> &str {
    name.trim_end_matches(|c: char| c.is_ascii_digit())
}

fn evaluate(profile: &BallotProfile, check: &CheckEntry, opts: &RunOptions) -> Result<CheckReport, Failure> {
    let report = match check {
        CheckEntry::Score { method: name, seats, committee, value, decimal: dec, tolerance } => {
            let m = method(name)?;
            let set = profile.set_of(committee)?;
            if set.len() != *seats {
                return Err(Failure::input(format!("committee `{committee}` does not have {seats} members")));
            }
            let score = committee_score(m, profile, set, opts)?;
            let what = format!("{} score of {{{committee}}}", m.name());
            match (value, dec) {
                (Some(v), None) => {
                    let expected = rational(v)?;
                    let ok = match &score {
                        Score::Exact(r) => *r == expected,
                        Score::Approx(x) => (x - decimal(&expected)).abs() <= SOLVER_TOLERANCE,
                        Score::Worst => false,
                    };
                    CheckReport { what, expected: format_rational(&expected), computed: score_text(&score), ok }
                }
                (None, Some(x)) => {
                    let tol = tolerance.unwrap_or(0.0);
                    let computed = match &score {
                        Score::Exact(r) => decimal(r),
                        Score::Approx(a) => *a,
                        Score::Worst => f64::NAN,
                    };
                    let ok = (computed - x).abs() <= tol;
                    CheckReport {
                        what,
                        expected: format!("{x} ± {tol}"),
                        computed: round_sig12(computed).to_string(),
                        ok,
                    }
                }
                _ => return Err(Failure::input("score check needs exactly one of `value` and `decimal`")),
            }
        }
        CheckEntry::Winners { method: name, seats, committees } => {
            let m = method(name)?;
            let mut expected =
                committees.iter().map(|c| profile.set_of(c).map_err(Failure::from)).collect::<Result<Vec<_>, _>>()?;
            expected.sort();
            let tied = winners(profile, m, *seats, opts)?;
            let covered: BTreeSet<Vec<usize>> = expected.iter().map(|&c| tied.pattern_of(c)).collect();
            let ok = expected.iter().all(|&c| tied.contains(c)) && covered.len() == tied.patterns.len();
            let show = |sets: &[CandidateSet]| {
                sets.iter().map(|s| format!("{{{}}}", label(profile, *s))).collect::<Vec<_>>().join(", ")
            };
            CheckReport {
                what: format!("{} winners up to clones at k={seats}", m.name()),
                expected: show(&expected),
                computed: show(&tied.representatives()),
                ok,
            }
        }
        CheckEntry::WinnerCounts { method: name, seats, counts } => {
            let m = method(name)?;
            let tied = winners(profile, m, *seats, opts)?;
            let tally = |set: CandidateSet| {
                let mut t: BTreeMap<String, usize> = BTreeMap::new();
                for c in set.iter() {
                    *t.entry(group_of(profile.name(c)).to_string()).or_default() += 1;
                }
                t
            };
            let reps = tied.representatives();
            let ok = reps.iter().all(|&s| tally(s) == *counts);
            let show =
                |t: &BTreeMap<String, usize>| t.iter().map(|(g, n)| format!("{g}×{n}")).collect::<Vec<_>>().join(" ");
            let computed = reps.iter().map(|&s| show(&tally(s))).collect::<Vec<_>>().join(" | ");
            CheckReport {
                what: format!("{} seats per group at k={seats}", m.name()),
                expected: show(counts),
                computed,
                ok,
            }
        }
        CheckEntry::Weights { method: name, weights } => {
            if method(name)? != Method::Cowpea {
                return Err(Failure::input("exact weight checks apply to cowpea only"));
            }
            let w = cowpea_weights(profile)?;
            let mut failed = Vec::new();
            for (cand, text) in weights {
                let c = candidate(profile, cand)?;
                if *w.get(c) != rational(text)? {
                    failed.push(format!("{cand}={}", format_rational(w.get(c))));
                }
            }
            CheckReport {
                what: "cowpea weights".to_string(),
                expected: weights.iter().map(|(c, v)| format!("{c}={v}")).collect::<Vec<_>>().join(" "),
                computed: if failed.is_empty() { "as expected".to_string() } else { failed.join(" ") },
                ok: failed.is_empty(),
            }
        }
        CheckEntry::ApproxWeights { method: name, weights, tolerance } => {
            let m = method(name)?;
            let result = match run_method(m, profile, 0, opts)? {
                MethodOutput::ApproxWeights(r) => r,
                _ => return Err(Failure::input(format!("{} does not produce approximate weights", m.name()))),
            };
            let mut failed = Vec::new();
            for (cand, x) in weights {
                let c = candidate(profile, cand)?;
                if (result.weights[c] - x).abs() > *tolerance {
                    failed.push(format!("{cand}={}", round_sig12(result.weights[c])));
                }
            }
            CheckReport {
                what: format!("{} weights within {tolerance}", m.name()),
                expected: weights.iter().map(|(c, v)| format!("{c}={v}")).collect::<Vec<_>>().join(" "),
                computed: if failed.is_empty() { "as expected".to_string() } else { failed.join(" ") },
                ok: failed.is_empty(),
            }
        }
        CheckEntry::Probability { seats, committee, value } => {
            let set = profile.set_of(committee)?;
            let d = lottery_exact_distribution(profile, *seats)?;
            let expected = rational(value)?;
            let p = d.probability(set);
            CheckReport {
                what: format!("lottery probability of {{{committee}}}"),
                expected: format_rational(&expected),
                computed: format_rational(&p),
                ok: p == expected,
            }
        }
    };
    Ok(report)
}

fn candidate(profile: &BallotProfile, name: &str) -> Result<usize, Failure> {
    profile.index_of(name).ok_or_else(|| Failure::input(format!("unknown candidate `{name}`")))
}

fn score_text(s: &Score) -> String {
    match s {
        Score::Exact(r) => format_rational(r),
        Score::Approx(x) => round_sig12(*x).to_string(),
        Score::Worst => "worst".to_string(),
    }
}
