//! Load-based methods: max-Phragmén, var-Phragmén and Ebert's method.
//!
//! Every elected candidate carries a load of 1 spread over the ballots
//! approving it; ballot `i` holds a per-voter load `f(c,i)` from candidate `c`
//! with `sum_i w_i f(c,i) = 1`, and its voter load is `l_i = sum_c f(c,i)`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::Score;
use crate::ballots::BallotProfile;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::set::CandidateSet;

/// Committee members grouped by identical approver lists: (count, approving ballots).
fn member_groups(profile: &BallotProfile, committee: CandidateSet) -> Vec<(usize, Vec<usize>)> {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for c in committee.iter() {
        let approvers = profile.approvers(c);
        match groups.iter_mut().find(|(_, a)| *a == approvers) {
            Some((m, _)) => *m += 1,
            None => groups.push((1, approvers)),
        }
    }
    groups
}

fn unapproved_member(profile: &BallotProfile, committee: CandidateSet) -> bool {
    super::has_unapproved(profile, committee)
}

/// Smallest achievable maximum voter load: the largest `|T| / N(T)` over
/// non-empty `T` within the committee, `N(T)` being the weight of ballots
/// approving some member of `T`.
pub fn maxphragmen_score(profile: &BallotProfile, committee: CandidateSet) -> Score {
    if committee.is_empty() {
        return Score::Exact(Rational::zero());
    }
    if unapproved_member(profile, committee) {
        return Score::Worst;
    }
    let groups = member_groups(profile, committee);
    let ballots = profile.ballots();
    let mut best = Rational::zero();
    for mask in 1u64..(1u64 << groups.len()) {
        let mut size = 0;
        let mut covered = vec![false; ballots.len()];
        for (g, (m, approvers)) in groups.iter().enumerate() {
            if mask >> g & 1 == 1 {
                size += m;
                for &i in approvers {
                    covered[i] = true;
                }
            }
        }
        let weight: Rational = ballots.iter().zip(&covered).filter(|(_, &c)| c).map(|(b, _)| &b.weight).sum();
        let ratio = Rational::from_integer((size as i64).into()) / weight;
        if ratio > best {
            best = ratio;
        }
    }
    Score::Exact(best)
}

/// The unique voter-load vector that is lexicographically smallest when
/// sorted in decreasing order; it also minimizes `sum_i w_i l_i^2`.
///
/// Built layer by layer: the densest remaining member set `T` (largest
/// `|T| / N(T)`, taking the union of all maximizers) loads its remaining
/// approvers evenly, then both are removed. Returns `None` if a member has
/// no approvers.
pub fn balanced_loads(profile: &BallotProfile, committee: CandidateSet) -> Option<Vec<Rational>> {
    if unapproved_member(profile, committee) {
        return None;
    }
    let ballots = profile.ballots();
    let mut loads = vec![Rational::zero(); ballots.len()];
    let mut open = vec![true; ballots.len()];
    let mut groups = member_groups(profile, committee);
    while !groups.is_empty() {
        let mut best: Option<Rational> = None;
        let mut union_mask = 0u64;
        for mask in 1u64..(1u64 << groups.len()) {
            let (mut size, mut covered) = (0usize, vec![false; ballots.len()]);
            for (g, (m, approvers)) in groups.iter().enumerate() {
                if mask >> g & 1 == 1 {
                    size += m;
                    for &i in approvers {
                        covered[i] |= open[i];
                    }
                }
            }
            let weight: Rational = ballots.iter().zip(&covered).filter(|(_, &c)| c).map(|(b, _)| &b.weight).sum();
            let ratio = Rational::from_integer((size as i64).into()) / weight;
            match &best {
                Some(b) if ratio < *b => {}
                Some(b) if ratio == *b => union_mask |= mask,
                _ => {
                    best = Some(ratio);
                    union_mask = mask;
                }
            }
        }
        let rho = best.unwrap();
        let mut rest = Vec::new();
        for (g, group) in groups.into_iter().enumerate() {
            if union_mask >> g & 1 == 1 {
                for &i in &group.1 {
                    if open[i] {
                        open[i] = false;
                        loads[i] = rho.clone();
                    }
                }
            } else {
                rest.push(group);
            }
        }
        groups = rest;
    }
    Some(loads)
}

/// Compares two committees by their balanced load vectors, sorted in
/// decreasing order with each ballot counted by its weight. `Less` means
/// `a` has the smaller (preferred) vector; a committee with an unapproved
/// member is worse than any other.
pub fn leximax_cmp(profile: &BallotProfile, a: CandidateSet, b: CandidateSet) -> Ordering {
    let (la, lb) = match (balanced_loads(profile, a), balanced_loads(profile, b)) {
        (None, None) => return Ordering::Equal,
        (None, Some(_)) => return Ordering::Greater,
        (Some(_), None) => return Ordering::Less,
        (Some(x), Some(y)) => (x, y),
    };
    let steps = |loads: Vec<Rational>| {
        let mut v: Vec<(Rational, Rational)> = loads
            .into_iter()
            .zip(profile.ballots())
            .map(|(l, b)| (l, b.weight.clone()))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        v.sort_by(|x, y| y.0.cmp(&x.0));
        v
    };
    let (sa, sb) = (steps(la), steps(lb));
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (Rational::zero(), Rational::zero());
    loop {
        if ra.is_zero() && i < sa.len() {
            ra = sa[i].1.clone();
        }
        if rb.is_zero() && j < sb.len() {
            rb = sb[j].1.clone();
        }
        if i >= sa.len() || j >= sb.len() {
            return Ordering::Equal;
        }
        match sa[i].0.cmp(&sb[j].0) {
            Ordering::Equal => {}
            other => return other,
        }
        let step = (&ra).min(&rb).clone();
        ra -= &step;
        rb -= &step;
        if ra.is_zero() {
            i += 1;
        }
        if rb.is_zero() {
            j += 1;
        }
    }
}

/// Optimal load spread found by block-coordinate descent.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadDistribution {
    pub members: Vec<usize>,
    /// `shares[m][i]`: per-voter load on ballot `i` from `members[m]`.
    pub shares: Vec<Vec<f64>>,
    pub voter_loads: Vec<f64>,
    pub sweeps: usize,
}

impl LoadDistribution {
    pub fn objective(&self, profile: &BallotProfile) -> f64 {
        profile.ballots().iter().zip(&self.voter_loads).map(|(b, l)| to_f64(&b.weight) * l * l).sum()
    }
}

const MAX_SWEEPS: usize = 100_000;

/// Water level `t` with `sum_i w_i max(0, t - r_i) = 1`.
fn water_level(residual: &[(f64, f64)]) -> f64 {
    let mut sorted: Vec<(f64, f64)> = residual.to_vec();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let (mut wsum, mut wr) = (0.0, 0.0);
    let mut level = 0.0;
    for (idx, &(r, w)) in sorted.iter().enumerate() {
        wsum += w;
        wr += w * r;
        level = (1.0 + wr) / wsum;
        if idx + 1 == sorted.len() || level <= sorted[idx + 1].0 {
            break;
        }
    }
    level
}

/// Minimizes `sum_i w_i l_i^2`. Each sweep visits members in index order and
/// re-spreads that member's unit load by water-filling against the loads the
/// other members leave on its approvers. Starts from even spreads and stops
/// once a sweep improves the objective by at most `tolerance` (relative).
pub fn varphragmen_score(
    profile: &BallotProfile,
    committee: CandidateSet,
    tolerance: f64,
) -> Result<(Score, Option<LoadDistribution>)> {
    if unapproved_member(profile, committee) {
        return Ok((Score::Worst, None));
    }
    let ballots = profile.ballots();
    let weights: Vec<f64> = ballots.iter().map(|b| to_f64(&b.weight)).collect();
    let members: Vec<usize> = committee.iter().collect();
    let approvers: Vec<Vec<usize>> = members.iter().map(|&c| profile.approvers(c)).collect();
    let mut shares = vec![vec![0.0; ballots.len()]; members.len()];
    let mut loads = vec![0.0; ballots.len()];
    for (m, a) in approvers.iter().enumerate() {
        let total: f64 = a.iter().map(|&i| weights[i]).sum();
        for &i in a {
            shares[m][i] = 1.0 / total;
            loads[i] += 1.0 / total;
        }
    }
    let objective = |loads: &[f64]| -> f64 { weights.iter().zip(loads).map(|(w, l)| w * l * l).sum() };
    let mut previous = objective(&loads);
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        for (m, a) in approvers.iter().enumerate() {
            let residual: Vec<(f64, f64)> = a.iter().map(|&i| (loads[i] - shares[m][i], weights[i])).collect();
            let level = water_level(&residual);
            for (&i, &(r, _)) in a.iter().zip(&residual) {
                let f = (level - r).max(0.0);
                loads[i] = r + f;
                shares[m][i] = f;
            }
        }
        let current = objective(&loads);
        if previous - current <= tolerance * current.max(f64::MIN_POSITIVE) {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence { iterations: sweeps, residual: previous - current });
        }
        previous = current;
    }
    // renormalize each member's spread to exactly one unit
    for (m, a) in approvers.iter().enumerate() {
        let total: f64 = a.iter().map(|&i| weights[i] * shares[m][i]).sum();
        for &i in a {
            shares[m][i] /= total;
        }
    }
    let mut voter_loads = vec![0.0; ballots.len()];
    for row in &shares {
        for (i, f) in row.iter().enumerate() {
            voter_loads[i] += f;
        }
    }
    let witness = LoadDistribution { members, shares, voter_loads, sweeps };
    Ok((Score::Approx(witness.objective(profile)), Some(witness)))
}

/// Ebert's method: each member spreads its load evenly over its approvers.
pub fn ebert_score(profile: &BallotProfile, committee: CandidateSet) -> Score {
    if unapproved_member(profile, committee) {
        return Score::Worst;
    }
    let per_voter: Vec<(usize, Rational)> =
        committee.iter().map(|c| (c, Rational::one() / profile.approval_weight(c))).collect();
    let mut total = Rational::zero();
    for b in profile.ballots() {
        let load: Rational = per_voter.iter().filter(|(c, _)| b.approved.contains(*c)).map(|(_, l)| l).sum();
        total += &b.weight * &load * &load;
    }
    Score::Exact(total)
}
