//! Reference multiwinner methods, each elected as an optimal committee by
//! exhaustive search.
//!
//! Candidates approved on exactly the same ballots are interchangeable for
//! every score here, so the search runs over *patterns*: how many members a
//! committee takes from each such class. Ties are kept, never broken.

pub mod cc;
pub mod monroe;
pub mod optpav;
pub mod pav;
pub mod phragmen;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ballots::BallotProfile;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::set::{binomial, k_subsets, CandidateSet};

pub use cc::{cc_elect, cc_score, cc_weights, CcResult, CcWeights};
pub use monroe::monroe_score;
pub use optpav::{harmonic_oracle, optimised_pav_weights, OptPavResult};
pub use pav::{harmonic, pav_score};
pub use phragmen::{balanced_loads, ebert_score, leximax_cmp, maxphragmen_score, varphragmen_score, LoadDistribution};

/// Default cap on the number of committee patterns scored by one election.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Relative tolerance under which two floating-point scores count as tied.
pub const APPROX_TIE_TOLERANCE: f64 = 1e-9;

/// An objective value. `Worst` is the "maximally bad" score of committees
/// containing a candidate nobody approves.
#[derive(Debug, Clone, PartialEq)]
pub enum Score {
    Exact(Rational),
    Approx(f64),
    Worst,
}

impl Score {
    pub fn to_f64(&self, direction: Direction) -> f64 {
        match self {
            Score::Exact(r) => to_f64(r),
            Score::Approx(x) => *x,
            Score::Worst => match direction {
                Direction::Maximize => f64::NEG_INFINITY,
                Direction::Minimize => f64::INFINITY,
            },
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Score::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// Orders scores so that `Greater` means better under `direction`.
    /// Approximate scores within [`APPROX_TIE_TOLERANCE`] compare equal.
    pub fn compare(&self, other: &Score, direction: Direction) -> Ordering {
        let raw = match (self, other) {
            (Score::Worst, Score::Worst) => return Ordering::Equal,
            (Score::Worst, _) => return Ordering::Less,
            (_, Score::Worst) => return Ordering::Greater,
            (Score::Exact(a), Score::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(direction), other.to_f64(direction));
                if a == b || (a - b).abs() <= APPROX_TIE_TOLERANCE * a.abs().max(b.abs()) {
                    Ordering::Equal
                } else {
                    a.partial_cmp(&b).unwrap()
                }
            }
        };
        match direction {
            Direction::Maximize => raw,
            Direction::Minimize => raw.reverse(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// Candidates grouped by approver set (positive-weight ballots only), in
/// order of their lowest member.
pub fn clone_classes(profile: &BallotProfile) -> Vec<CandidateSet> {
    let mut groups: BTreeMap<Vec<usize>, CandidateSet> = BTreeMap::new();
    for c in 0..profile.num_candidates() {
        groups.entry(profile.approvers(c)).or_default().insert(c);
    }
    let mut classes: Vec<CandidateSet> = groups.into_values().collect();
    classes.sort_by_key(|s| s.first());
    classes
}

/// All optimal committees of one election, as patterns over clone classes.
#[derive(Debug, Clone, PartialEq)]
pub struct TiedCommittees {
    pub classes: Vec<CandidateSet>,
    /// Members taken from each class; one entry per optimal pattern.
    pub patterns: Vec<Vec<usize>>,
    pub score: Score,
}

impl TiedCommittees {
    /// Members taken from each clone class.
    pub fn pattern_of(&self, committee: CandidateSet) -> Vec<usize> {
        self.classes.iter().map(|c| c.intersection(committee).len()).collect()
    }

    /// The lowest-indexed committee of each optimal pattern.
    pub fn representatives(&self) -> Vec<CandidateSet> {
        self.patterns.iter().map(|p| representative(&self.classes, p)).collect()
    }

    pub fn contains(&self, committee: CandidateSet) -> bool {
        let p = self.pattern_of(committee);
        self.patterns.contains(&p)
    }

    /// Number of distinct optimal committees.
    pub fn count(&self) -> u128 {
        self.patterns
            .iter()
            .map(|p| self.classes.iter().zip(p).map(|(c, &m)| binomial(c.len(), m)).product::<u128>())
            .sum()
    }

    pub fn is_unique(&self) -> bool {
        self.count() == 1
    }

    /// Every optimal committee, sorted, refusing to expand past `limit`.
    pub fn concrete(&self, limit: usize) -> Result<Vec<CandidateSet>> {
        let count = self.count();
        if count > limit as u128 {
            return Err(Error::too_large("tied committee expansion", count, limit));
        }
        let mut out = Vec::new();
        for p in &self.patterns {
            let mut partial = vec![CandidateSet::EMPTY];
            for (class, &m) in self.classes.iter().zip(p) {
                let members: Vec<usize> = class.iter().collect();
                let picks = k_subsets(&members, m);
                partial = partial.iter().flat_map(|a| picks.iter().map(move |b| a.union(*b))).collect();
            }
            out.extend(partial);
        }
        out.sort();
        Ok(out)
    }
}

fn representative(classes: &[CandidateSet], pattern: &[usize]) -> CandidateSet {
    classes.iter().zip(pattern).flat_map(|(c, &m)| c.iter().take(m)).collect()
}

/// Count vectors with `0 <= m_j <= sizes[j]` summing to `k`, in lexicographic
/// order (largest first), or `None` once more than `budget` exist.
fn patterns(sizes: &[usize], k: usize, budget: u64) -> Option<Vec<Vec<usize>>> {
    // ways[j][r]: number of completions using classes j.. with r seats left
    let n = sizes.len();
    let mut ways = vec![vec![0u64; k + 1]; n + 1];
    ways[n][0] = 1;
    for j in (0..n).rev() {
        for r in 0..=k {
            let mut total = 0u64;
            for m in 0..=sizes[j].min(r) {
                total = total.saturating_add(ways[j + 1][r - m]);
            }
            ways[j][r] = total;
        }
    }
    if ways[0][k] > budget {
        return None;
    }
    let mut out = Vec::with_capacity(ways[0][k] as usize);
    let mut current = vec![0usize; n];
    fn walk(
        j: usize,
        left: usize,
        sizes: &[usize],
        ways: &[Vec<u64>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == sizes.len() {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        for m in (0..=sizes[j].min(left)).rev() {
            if ways[j + 1][left - m] == 0 {
                continue;
            }
            current[j] = m;
            walk(j + 1, left - m, sizes, ways, current, out);
        }
        current[j] = 0;
    }
    walk(0, k, sizes, &ways, &mut current, &mut out);
    Some(out)
}

/// Scores every committee pattern with `scorer` (applied to a representative
/// committee) and keeps all optimal ones.
pub fn elect_by_score(
    profile: &BallotProfile,
    k: usize,
    direction: Direction,
    budget: u64,
    mut scorer: impl FnMut(CandidateSet) -> Score,
) -> Result<TiedCommittees> {
    let n = profile.num_candidates();
    if k > n {
        return Err(Error::TooManySeats { seats: k, candidates: n });
    }
    let classes = clone_classes(profile);
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let all = patterns(&sizes, k, budget)
        .ok_or_else(|| Error::too_large("committee enumeration", format!("more than {budget} patterns"), budget))?;
    let mut best: Option<Score> = None;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    for p in all {
        let score = scorer(representative(&classes, &p));
        let ord = match &best {
            None => Ordering::Greater,
            Some(b) => score.compare(b, direction),
        };
        match ord {
            Ordering::Greater => {
                best = Some(score);
                winners = vec![p];
            }
            Ordering::Equal => winners.push(p),
            Ordering::Less => {}
        }
    }
    Ok(TiedCommittees { classes, patterns: winners, score: best.expect("at least one pattern") })
}

/// True if some member has no approval weight.
pub(crate) fn has_unapproved(profile: &BallotProfile, committee: CandidateSet) -> bool {
    committee.iter().any(|c| profile.approval_weight(c).is_zero())
}

#[cfg(test)]
mod tests;
