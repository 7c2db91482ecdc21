use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::{Canonical, Check, Committee, Outcome, Probe, ProbeVerdict, APPROX_WEIGHT_TOLERANCE};
use crate::ballots::{add_synthetic_ballots, ApprovalBallot, BallotProfile, SyntheticBallot};
use crate::error::{Error, Result};
use crate::method::{committee_score, run_method, Method, MethodOutput, RunOptions};
use crate::rational::{format_rational, to_f64, Rational};
use crate::refmethods::{clone_classes, Score, TiedCommittees};
use crate::set::{binomial, k_subsets, CandidateSet};

fn canonical(method: Method, profile: &BallotProfile, output: &MethodOutput) -> Result<Canonical> {
    let c = Canonical::of(profile, output)?;
    // CC's member weights depend on an arbitrary assignment; only its committees are compared
    Ok(if method == Method::Cc { c.committees_only() } else { c })
}

fn tied(output: &MethodOutput) -> Option<&TiedCommittees> {
    match output {
        MethodOutput::Committees(t) => Some(t),
        MethodOutput::WeightedCommittees(cc) => Some(&cc.committees),
        _ => None,
    }
}

struct Run {
    profile: BallotProfile,
    output: MethodOutput,
}

impl Run {
    fn new(method: Method, profile: BallotProfile, k: usize, opts: &RunOptions) -> Result<Run> {
        let output = run_method(method, &profile, k, opts)?;
        Ok(Run { profile, output })
    }

    fn json(&self) -> Value {
        self.output.to_json(&self.profile)
    }

    /// Candidate weight, or inclusion probability for the lottery, as f64.
    fn share(&self, candidate: usize) -> Option<f64> {
        match &self.output {
            MethodOutput::Weights(w) => Some(to_f64(w.get(candidate))),
            MethodOutput::ApproxWeights(r) => Some(r.weights[candidate]),
            MethodOutput::Distribution(d) => Some(to_f64(&d.inclusion(candidate))),
            _ => None,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verdict(
    probe: Probe,
    method: Method,
    perturbation: String,
    perturbed: Option<&BallotProfile>,
    before: Value,
    after: Value,
    checks: Vec<Check>,
) -> ProbeVerdict {
    let outcome = checks.iter().fold(Outcome::PassStrong, |acc, c| acc.and(c.outcome));
    ProbeVerdict {
        probe,
        method,
        outcome,
        perturbation,
        perturbed_profile: perturbed.map(|p| p.to_string()),
        before,
        after,
        checks,
    }
}

fn not_applicable(probe: Probe, method: Method, perturbation: String, reason: &str) -> ProbeVerdict {
    verdict(
        probe,
        method,
        perturbation,
        None,
        Value::Null,
        Value::Null,
        vec![Check::new("applicability", Outcome::NotApplicable, reason)],
    )
}

fn check_budget(what: &str, count: u128, budget: u64) -> Result<()> {
    if count > budget as u128 {
        return Err(Error::too_large(what, count, budget));
    }
    Ok(())
}

/// Names `stem1, stem2, ...` not already used in the profile.
fn fresh_names(profile: &BallotProfile, stem: &str, count: usize) -> Vec<String> {
    (1..).map(|i| format!("{stem}{i}")).filter(|n| profile.index_of(n).is_none()).take(count).collect()
}

/// Whether `candidate` is in every winning committee, and in some.
fn membership(t: &TiedCommittees, candidate: usize) -> (bool, bool) {
    let class = t.classes.iter().position(|cl| cl.contains(candidate)).unwrap();
    let size = t.classes[class].len();
    (t.patterns.iter().all(|p| p[class] == size), t.patterns.iter().any(|p| p[class] > 0))
}

fn committee_label(c: &Committee) -> String {
    c.iter().cloned().collect::<Vec<_>>().join(",")
}

/// Adds an approval of `candidate` to ballot `ballot` and compares outputs.
///
/// Committee methods get two sub-verdicts. The score check compares every
/// `k`-committee containing the candidate before and after: all strictly
/// better passes strongly, some unchanged passes weakly and any worse
/// fails; committees that were already maximally bad are exempt. The
/// output check fails if the candidate was in every winning committee and
/// no longer is, or was in some and is now in none. Weight and lottery
/// methods compare the candidate's weight or inclusion probability, exempt
/// when that is already 0 or 1.
pub fn monotonicity_probe(
    method: Method,
    profile: &BallotProfile,
    ballot: usize,
    candidate: usize,
    k: usize,
    opts: &RunOptions,
) -> Result<ProbeVerdict> {
    let b = profile.ballots().get(ballot).ok_or(Error::BallotOutOfRange(ballot))?;
    if candidate >= profile.num_candidates() {
        return Err(Error::InvalidArgument(format!("candidate index {candidate} out of range")));
    }
    if b.approved.contains(candidate) {
        return Err(Error::AlreadyApproved { ballot, candidate: profile.name(candidate).to_string() });
    }
    let mut ballots = profile.ballots().to_vec();
    ballots[ballot] = ApprovalBallot::new(b.weight.clone(), b.approved.with(candidate));
    let perturbed = BallotProfile::new(profile.candidates().to_vec(), ballots)?;
    let name = profile.name(candidate).to_string();
    let perturbation = format!("ballot {ballot} also approves {name}");

    let before = Run::new(method, profile.clone(), k, opts)?;
    let after = Run::new(method, perturbed.clone(), k, opts)?;
    let mut checks = Vec::new();

    if let Some(direction) = method.direction() {
        let others: Vec<usize> = (0..profile.num_candidates()).filter(|&c| c != candidate).collect();
        check_budget("committees containing the candidate", binomial(others.len(), k.saturating_sub(1)), opts.budget)?;
        let (mut better, mut equal, mut worse, mut exempt) = (0usize, 0usize, 0usize, 0usize);
        let mut first_bad = None;
        for rest in k_subsets(&others, k.saturating_sub(1)) {
            let w = rest.with(candidate);
            let s0 = committee_score(method, profile, w, opts)?;
            if s0 == Score::Worst {
                exempt += 1;
                continue;
            }
            let s1 = committee_score(method, &perturbed, w, opts)?;
            match s1.compare(&s0, direction) {
                Ordering::Greater => better += 1,
                Ordering::Equal => {
                    equal += 1;
                    first_bad.get_or_insert(w);
                }
                Ordering::Less => {
                    worse += 1;
                    first_bad = Some(w);
                }
            }
        }
        let outcome = if worse > 0 {
            Outcome::Fail
        } else if equal > 0 {
            Outcome::PassWeak
        } else {
            Outcome::PassStrong
        };
        let mut detail = format!("{better} improved, {equal} unchanged, {worse} worse, {exempt} exempt");
        if let Some(w) = first_bad.filter(|_| outcome != Outcome::PassStrong) {
            detail.push_str(&format!("; e.g. {}", profile.names_of(w).join(",")));
        }
        checks.push(Check::new("score", outcome, detail));

        let (t0, t1) = (tied(&before.output).unwrap(), tied(&after.output).unwrap());
        let in_all = |t: &TiedCommittees| membership(t, candidate).0;
        let in_some = |t: &TiedCommittees| membership(t, candidate).1;
        let outcome = if (in_all(t0) && !in_all(t1)) || (in_some(t0) && !in_some(t1)) {
            Outcome::Fail
        } else {
            Outcome::PassStrong
        };
        let state = |t: &TiedCommittees| {
            if in_all(t) {
                "every winning committee"
            } else if in_some(t) {
                "some winning committees"
            } else {
                "no winning committee"
            }
        };
        checks.push(Check::new("output", outcome, format!("{name} in {} before, {} after", state(t0), state(t1))));
    } else {
        let (x0, x1) = (before.share(candidate).unwrap(), after.share(candidate).unwrap());
        let tol = if method == Method::OptPav { APPROX_WEIGHT_TOLERANCE } else { 0.0 };
        let exact = match (&before.output, &after.output) {
            (MethodOutput::Weights(a), MethodOutput::Weights(b)) => {
                Some((a.get(candidate).clone(), b.get(candidate).clone()))
            }
            (MethodOutput::Distribution(a), MethodOutput::Distribution(b)) => {
                Some((a.inclusion(candidate), b.inclusion(candidate)))
            }
            _ => None,
        };
        let (order, saturated) = match &exact {
            Some((a, b)) => (b.cmp(a), a.is_zero() || a.is_one()),
            None => {
                let o = if (x1 - x0).abs() <= tol { Ordering::Equal } else { x1.total_cmp(&x0) };
                (o, x0 <= tol || x0 >= 1.0 - tol)
            }
        };
        let outcome = match order {
            Ordering::Greater => Outcome::PassStrong,
            Ordering::Equal if saturated => Outcome::PassStrong,
            Ordering::Equal => Outcome::PassWeak,
            Ordering::Less => Outcome::Fail,
        };
        let detail = match &exact {
            Some((a, b)) => format!("{name}: {} -> {}", format_rational(a), format_rational(b)),
            None => format!("{name}: {x0} -> {x1}"),
        };
        let label = if method == Method::CowpeaLottery { "inclusion probability" } else { "weight" };
        checks.push(Check::new(label, outcome, detail));
    }
    Ok(verdict(Probe::Monotonicity, method, perturbation, Some(&perturbed), before.json(), after.json(), checks))
}

fn compare_outputs(method: Method, before: &Run, after: &Run) -> Result<Check> {
    let (a, b) =
        (canonical(method, &before.profile, &before.output)?, canonical(method, &after.profile, &after.output)?);
    Ok(if a.same(&b) {
        Check::new("output", Outcome::PassStrong, "unchanged")
    } else {
        Check::new("output", Outcome::Fail, describe_change(&a, &b))
    })
}

fn describe_change(a: &Canonical, b: &Canonical) -> String {
    match (a.committee_sets(), b.committee_sets()) {
        (Some(x), Some(y)) => {
            let show = |s: &std::collections::BTreeSet<Committee>| {
                let parts: Vec<String> = s.iter().take(6).map(committee_label).collect();
                let more = if s.len() > 6 { format!(" (+{} more)", s.len() - 6) } else { String::new() };
                format!("{{{}}}{more}", parts.join(" | "))
            };
            format!("winners {} -> {}", show(&x), show(&y))
        }
        _ => "output changed".to_string(),
    }
}

/// Adds a ballot approving every candidate (`Full`) or nobody (`Empty`) with
/// weight `weight`; the output must not change.
pub fn iib_probe(
    method: Method,
    profile: &BallotProfile,
    kind: SyntheticBallot,
    weight: Rational,
    k: usize,
    opts: &RunOptions,
) -> Result<ProbeVerdict> {
    if !weight.is_positive() {
        return Err(Error::InvalidArgument("added weight must be positive".into()));
    }
    let label = match kind {
        SyntheticBallot::Empty => "empty",
        SyntheticBallot::Full => "full",
        SyntheticBallot::Custom(_) => {
            return Err(Error::InvalidArgument("IIB uses full or empty ballots".into()));
        }
    };
    let perturbed = add_synthetic_ballots(profile, kind, weight.clone())?;
    let perturbation = format!("add {label} ballot of weight {}", format_rational(&weight));
    let before = Run::new(method, profile.clone(), k, opts)?;
    let after = Run::new(method, perturbed.clone(), k, opts)?;
    let checks = vec![compare_outputs(method, &before, &after)?];
    Ok(verdict(Probe::Iib, method, perturbation, Some(&perturbed), before.json(), after.json(), checks))
}

/// Adds `count` candidates approved on every ballot (empty ones included)
/// and `count` seats. They must all be elected and the rest of the result
/// must match the original election; for the lottery, the distribution of
/// the remaining seats must match exactly.
pub fn iuac_probe(
    method: Method,
    profile: &BallotProfile,
    count: usize,
    k: usize,
    opts: &RunOptions,
) -> Result<ProbeVerdict> {
    if count == 0 {
        return Err(Error::InvalidArgument("add at least one universally approved candidate".into()));
    }
    let names = fresh_names(profile, "U", count);
    let plural = if count == 1 { "" } else { "s" };
    let perturbation = format!("add universally approved {} and {count} seat{plural}", names.join(","));
    if matches!(method, Method::Cowpea | Method::OptPav) {
        return Ok(not_applicable(
            Probe::Iuac,
            method,
            perturbation,
            "universally approved candidates take all the weight",
        ));
    }
    let perturbed = profile.with_new_candidates(&names, |_, _| true)?;
    let before = Run::new(method, profile.clone(), k, opts)?;
    let after = Run::new(method, perturbed.clone(), k + count, opts)?;
    let universal: Committee = names.iter().cloned().collect();
    let a = canonical(method, &before.profile, &before.output)?;
    let b = canonical(method, &after.profile, &after.output)?;

    let mut checks = Vec::new();
    match (a, b) {
        (Canonical::Distribution(d0), Canonical::Distribution(d1)) => {
            let mut missing = Rational::zero();
            let mut restricted: BTreeMap<Committee, Rational> = BTreeMap::new();
            for (w, p) in d1 {
                if universal.is_subset(&w) {
                    *restricted.entry(w.difference(&universal).cloned().collect()).or_insert_with(Rational::zero) += p;
                } else {
                    missing += p;
                }
            }
            checks.push(if missing.is_zero() {
                Check::new("universal elected", Outcome::PassStrong, "with probability 1")
            } else {
                Check::new(
                    "universal elected",
                    Outcome::Fail,
                    format!("missed with probability {}", format_rational(&missing)),
                )
            });
            checks.push(if restricted == d0 {
                Check::new("remaining seats", Outcome::PassStrong, "conditional distribution unchanged")
            } else {
                Check::new("remaining seats", Outcome::Fail, "conditional distribution changed")
            });
        }
        (a, b) => {
            let (x, y) = (a.committee_sets().unwrap(), b.committee_sets().unwrap());
            let all_u = y.iter().all(|w| universal.is_subset(w));
            checks.push(Check::new(
                "universal elected",
                if all_u { Outcome::PassStrong } else { Outcome::Fail },
                if all_u { "in every winning committee" } else { "missing from some winning committee" },
            ));
            let rest: std::collections::BTreeSet<Committee> =
                y.iter().map(|w| w.difference(&universal).cloned().collect()).collect();
            let same = all_u && rest == x;
            checks.push(Check::new(
                "remaining seats",
                if same { Outcome::PassStrong } else { Outcome::Fail },
                describe_change(&Canonical::Committees(x), &Canonical::Committees(rest)),
            ));
        }
    }
    Ok(verdict(Probe::Iuac, method, perturbation, Some(&perturbed), before.json(), after.json(), checks))
}

/// Removes a candidate that was not elected; the output must not change.
/// Not applicable when the candidate was elected (or has positive weight
/// or election probability).
pub fn iia_probe(
    method: Method,
    profile: &BallotProfile,
    candidate: usize,
    k: usize,
    opts: &RunOptions,
) -> Result<ProbeVerdict> {
    if candidate >= profile.num_candidates() {
        return Err(Error::InvalidArgument(format!("candidate index {candidate} out of range")));
    }
    let name = profile.name(candidate).to_string();
    let perturbation = format!("remove unelected {name}");
    let before = Run::new(method, profile.clone(), k, opts)?;
    let elected = match &before.output {
        MethodOutput::Weights(w) => !w.get(candidate).is_zero(),
        MethodOutput::ApproxWeights(r) => r.weights[candidate] > 0.0,
        MethodOutput::Distribution(d) => !d.inclusion(candidate).is_zero(),
        other => membership(tied(other).unwrap(), candidate).1,
    };
    if elected {
        return Ok(not_applicable(Probe::Iia, method, perturbation, "the candidate is elected"));
    }
    let perturbed = profile.without_candidate(candidate)?;
    let after = Run::new(method, perturbed.clone(), k, opts)?;
    let checks = vec![compare_outputs(method, &before, &after)?];
    Ok(verdict(Probe::Iia, method, perturbation, Some(&perturbed), before.json(), after.json(), checks))
}

/// Runs the method on two profiles over the same candidates; when they
/// agree, the combined profile must give the same result.
pub fn consistency_probe(
    method: Method,
    a: &BallotProfile,
    b: &BallotProfile,
    k: usize,
    opts: &RunOptions,
) -> Result<ProbeVerdict> {
    let mut names_a: Vec<&str> = a.candidates().iter().map(|c| c.as_str()).collect();
    let mut names_b: Vec<&str> = b.candidates().iter().map(|c| c.as_str()).collect();
    names_a.sort_unstable();
    names_b.sort_unstable();
    if names_a != names_b {
        return Err(Error::CandidateMismatch);
    }
    let union = a.union(b)?;
    let perturbation = "combine both ballot sets".to_string();
    let ra = Run::new(method, a.clone(), k, opts)?;
    let rb = Run::new(method, b.clone(), k, opts)?;
    let (ca, cb) = (canonical(method, a, &ra.output)?, canonical(method, b, &rb.output)?);
    if !ca.same(&cb) {
        let mut v = not_applicable(Probe::Consistency, method, perturbation, "the two elections disagree");
        v.before = serde_json::json!([ra.json(), rb.json()]);
        return Ok(v);
    }
    let ru = Run::new(method, union.clone(), k, opts)?;
    let cu = canonical(method, &union, &ru.output)?;
    let check = if cu.same(&ca) {
        Check::new("combined", Outcome::PassStrong, "same result")
    } else {
        Check::new("combined", Outcome::Fail, describe_change(&ca, &cu))
    };
    Ok(verdict(
        Probe::Consistency,
        method,
        perturbation,
        Some(&union),
        serde_json::json!([ra.json(), rb.json()]),
        ru.json(),
        vec![check],
    ))
}

/// Candidates approved on exactly the same positive-weight ballots as `candidate`.
fn clone_class_of(profile: &BallotProfile, candidate: usize) -> CandidateSet {
    clone_classes(profile).into_iter().find(|s| s.contains(candidate)).unwrap()
}

/// Distribution of `min(|W ∩ class|, cap)` over winning committees, with
/// ties spread uniformly over the concrete committees.
fn count_distribution(output: &MethodOutput, class: CandidateSet, cap: usize) -> Result<BTreeMap<usize, Rational>> {
    let mut out = BTreeMap::new();
    match output {
        MethodOutput::Distribution(d) => {
            for (w, p) in &d.probabilities {
                *out.entry(w.intersection(class).len().min(cap)).or_insert_with(Rational::zero) += p;
            }
        }
        other => {
            let t = tied(other).unwrap();
            let total = Rational::from_integer(t.count().into());
            for p in &t.patterns {
                let ways: u128 = t.classes.iter().zip(p).map(|(c, &m)| binomial(c.len(), m)).product();
                // classes are maximal, so `class` is a union of whole classes
                let hits: usize = t.classes.iter().zip(p).filter(|(c, _)| c.is_subset(class)).map(|(_, &m)| m).sum();
                *out.entry(hits.min(cap)).or_insert_with(Rational::zero) +=
                    Rational::from_integer(ways.into()) / &total;
            }
        }
    }
    Ok(out)
}

/// Adds `count` clones of `candidate` (approved on exactly the same
/// ballots). Weight methods must keep the clone set's total weight;
/// splitting it equally is reported separately. Committee methods and the
/// lottery must keep the distribution of the clone set's seat count,
/// capped at its original size.
pub fn clone_probe(
    method: Method,
    profile: &BallotProfile,
    candidate: usize,
    count: usize,
    k: usize,
    opts: &RunOptions,
) -> Result<ProbeVerdict> {
    if count == 0 {
        return Err(Error::InvalidArgument("add at least one clone".into()));
    }
    if candidate >= profile.num_candidates() {
        return Err(Error::InvalidArgument(format!("candidate index {candidate} out of range")));
    }
    let name = profile.name(candidate).to_string();
    let names = fresh_names(profile, &format!("{name}'"), count);
    let perturbed = profile.with_new_candidates(&names, |_, b| b.approved.contains(candidate))?;
    let perturbation = format!("clone {name} as {}", names.join(","));
    let before = Run::new(method, profile.clone(), k, opts)?;
    let after = Run::new(method, perturbed.clone(), k, opts)?;
    let class0 = clone_class_of(profile, candidate);
    let class1 = clone_class_of(&perturbed, candidate);

    let mut checks = Vec::new();
    match (&before.output, &after.output) {
        (MethodOutput::Weights(w0), MethodOutput::Weights(w1)) => {
            let total =
                |w: &crate::cowpea::WeightVector, s: CandidateSet| s.iter().map(|c| w.get(c).clone()).sum::<Rational>();
            let (t0, t1) = (total(w0, class0), total(w1, class1));
            checks.push(Check::new(
                "clone set weight",
                if t0 == t1 { Outcome::PassStrong } else { Outcome::Fail },
                format!("{} -> {}", format_rational(&t0), format_rational(&t1)),
            ));
            let first = w1.get(candidate);
            let equal = class1.iter().all(|c| w1.get(c) == first);
            checks.push(Check::new(
                "equal split",
                if equal { Outcome::PassStrong } else { Outcome::PassWeak },
                if equal { "clones share equally" } else { "clones share unequally" },
            ));
        }
        (MethodOutput::ApproxWeights(r0), MethodOutput::ApproxWeights(r1)) => {
            let t0: f64 = class0.iter().map(|c| r0.weights[c]).sum();
            let t1: f64 = class1.iter().map(|c| r1.weights[c]).sum();
            let ok = (t0 - t1).abs() <= APPROX_WEIGHT_TOLERANCE;
            checks.push(Check::new(
                "clone set weight",
                if ok { Outcome::PassStrong } else { Outcome::Fail },
                format!("{t0} -> {t1}"),
            ));
            let first = r1.weights[candidate];
            let equal = class1.iter().all(|c| (r1.weights[c] - first).abs() <= APPROX_WEIGHT_TOLERANCE);
            checks.push(Check::new(
                "equal split",
                if equal { Outcome::PassStrong } else { Outcome::PassWeak },
                if equal { "clones share equally" } else { "clones share unequally" },
            ));
        }
        (o0, o1) => {
            let cap = class0.len();
            let (d0, d1) = (count_distribution(o0, class0, cap)?, count_distribution(o1, class1, cap)?);
            let show = |d: &BTreeMap<usize, Rational>| {
                d.iter().map(|(m, p)| format!("{m}:{}", format_rational(p))).collect::<Vec<_>>().join(" ")
            };
            checks.push(Check::new(
                "clone set seats",
                if d0 == d1 { Outcome::PassStrong } else { Outcome::Fail },
                format!("[{}] -> [{}]", show(&d0), show(&d1)),
            ));
        }
    }
    Ok(verdict(Probe::Clone, method, perturbation, Some(&perturbed), before.json(), after.json(), checks))
}

/// Every positive-weight ballot approves at least as many members of `x`
/// as of `y`, and some approves more.
pub fn pareto_dominates(profile: &BallotProfile, x: CandidateSet, y: CandidateSet) -> bool {
    let mut strict = false;
    for b in profile.ballots().iter().filter(|b| !b.weight.is_zero()) {
        let (cx, cy) = (b.approved.intersection(x).len(), b.approved.intersection(y).len());
        if cx < cy {
            return false;
        }
        strict |= cx > cy;
    }
    strict
}

/// Weighted version of [`pareto_dominates`]: each ballot's approved weight
/// under `x` is at least that under `y`, strictly more for some ballot.
/// Differences within `tolerance` count as equal.
pub fn weighted_pareto_dominates(profile: &BallotProfile, x: &[f64], y: &[f64], tolerance: f64) -> bool {
    let mut strict = false;
    for b in profile.ballots().iter().filter(|b| !b.weight.is_zero()) {
        let sx: f64 = b.approved.iter().map(|c| x[c]).sum();
        let sy: f64 = b.approved.iter().map(|c| y[c]).sum();
        if sx < sy - tolerance {
            return false;
        }
        strict |= sx > sy + tolerance;
    }
    strict
}

/// Tolerance for weighted dominance comparisons.
const DOMINANCE_TOLERANCE: f64 = 1e-9;

/// Looks for committees that Pareto dominate the result.
///
/// Committee methods pass strongly when no winning committee is dominated
/// by another `k`-committee, weakly when some are, and fail when all are.
/// The lottery fails when any committee it can elect is dominated. Weight
/// methods fail when an equal-weight distribution over some candidate
/// subset dominates the weights.
pub fn pareto_probe(method: Method, profile: &BallotProfile, k: usize, opts: &RunOptions) -> Result<ProbeVerdict> {
    let n = profile.num_candidates();
    let all: Vec<usize> = (0..n).collect();
    let run = Run::new(method, profile.clone(), k, opts)?;
    let perturbation = "none".to_string();
    let find_dominator = |w: CandidateSet| -> Option<CandidateSet> {
        k_subsets(&all, w.len()).into_iter().find(|&x| pareto_dominates(profile, x, w))
    };
    let check = match &run.output {
        MethodOutput::Weights(_) | MethodOutput::ApproxWeights(_) => {
            check_budget("candidate subsets", 1u128 << n.min(127), opts.budget)?;
            let y: Vec<f64> = (0..n).map(|c| run.share(c).unwrap()).collect();
            let found = (1u128..(1u128 << n)).map(CandidateSet::from_bits).find(|s| {
                let share = 1.0 / s.len() as f64;
                let x: Vec<f64> = (0..n).map(|c| if s.contains(c) { share } else { 0.0 }).collect();
                weighted_pareto_dominates(profile, &x, &y, DOMINANCE_TOLERANCE)
            });
            match found {
                Some(s) => Check::new(
                    "weights",
                    Outcome::Fail,
                    format!("equal weights on {} dominate", profile.names_of(s).join(",")),
                ),
                None => Check::new("weights", Outcome::PassStrong, "no equal-weight subset dominates"),
            }
        }
        MethodOutput::Distribution(d) => {
            check_budget("committees", binomial(n, k) * d.probabilities.len() as u128, opts.budget)?;
            let bad = d.probabilities.keys().find_map(|&w| find_dominator(w).map(|x| (w, x)));
            match bad {
                Some((w, x)) => Check::new(
                    "committees",
                    Outcome::Fail,
                    format!(
                        "{} (probability {}) is dominated by {}",
                        profile.names_of(w).join(","),
                        format_rational(&d.probability(w)),
                        profile.names_of(x).join(",")
                    ),
                ),
                None => Check::new("committees", Outcome::PassStrong, "no electable committee is dominated"),
            }
        }
        other => {
            let winners = tied(other).unwrap().concrete(super::COMPARISON_LIMIT)?;
            check_budget("committees", binomial(n, k) * winners.len() as u128, opts.budget)?;
            let dominated: Vec<(CandidateSet, CandidateSet)> =
                winners.iter().filter_map(|&w| find_dominator(w).map(|x| (w, x))).collect();
            let outcome = if dominated.is_empty() {
                Outcome::PassStrong
            } else if dominated.len() < winners.len() {
                Outcome::PassWeak
            } else {
                Outcome::Fail
            };
            let detail = match dominated.first() {
                None => "no winning committee is dominated".to_string(),
                Some((w, x)) => format!(
                    "{} of {} winning committees dominated, e.g. {} by {}",
                    dominated.len(),
                    winners.len(),
                    profile.names_of(*w).join(","),
                    profile.names_of(*x).join(",")
                ),
            };
            Check::new("committees", outcome, detail)
        }
    };
    Ok(verdict(Probe::Pareto, method, perturbation, None, run.json(), Value::Null, vec![check]))
}
