//! Ballot data model, the canonical profile text format, score ballots and
//! the Kotze-Pereira transformation.
//!
//! Profile text is line oriented:
//!
//! ```text
//! # comment
//! candidates: A B C
//! 2: A B
//! 1/2: C
//! 1:
//! ```
//!
//! Score profiles add a `maxgrade: <s>` line after the header and write ballots
//! as `<weight>: A=3 B=1`; ungraded candidates get grade 0. A file is either
//! all-approval or all-score.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::set::{CandidateSet, MAX_CANDIDATES};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateId(String);

impl CandidateId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        let bad = id.is_empty() || id.starts_with('#') || id.chars().any(|c| c.is_whitespace() || c == ':' || c == '=');
        if bad {
            return Err(Error::InvalidCandidateId(id));
        }
        Ok(CandidateId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApprovalBallot {
    pub weight: Rational,
    pub approved: CandidateSet,
}

impl ApprovalBallot {
    pub fn new(weight: Rational, approved: CandidateSet) -> Self {
        ApprovalBallot { weight, approved }
    }
}

/// Candidates plus weighted approval ballots.
///
/// Candidate order is only a reporting order. Ballot weights are exact
/// non-negative rationals and their sum is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct BallotProfile {
    candidates: Vec<CandidateId>,
    ballots: Vec<ApprovalBallot>,
}

fn check_candidates(candidates: &[CandidateId]) -> Result<()> {
    if candidates.len() > MAX_CANDIDATES {
        return Err(Error::TooManyCandidates(candidates.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for c in candidates {
        if !seen.insert(c) {
            return Err(Error::DuplicateCandidate(c.to_string()));
        }
    }
    Ok(())
}

impl BallotProfile {
    pub fn new(candidates: Vec<CandidateId>, ballots: Vec<ApprovalBallot>) -> Result<Self> {
        check_candidates(&candidates)?;
        let all = CandidateSet::full(candidates.len());
        let mut total = Rational::zero();
        for (i, b) in ballots.iter().enumerate() {
            if b.weight.is_negative() {
                return Err(Error::MalformedWeight { line: i + 1, text: format_rational(&b.weight) });
            }
            if !b.approved.is_subset(all) {
                let stray = b.approved.difference(all).first().unwrap_or(0);
                return Err(Error::UnknownCandidate { line: i + 1, id: format!("#{stray}") });
            }
            total += &b.weight;
        }
        if total.is_zero() {
            return Err(Error::EmptyProfile);
        }
        Ok(BallotProfile { candidates, ballots })
    }

    /// Builds a profile from candidate names and `(weight, approved names)` pairs.
    pub fn from_names(candidates: &[&str], ballots: &[(Rational, &[&str])]) -> Result<Self> {
        let ids = candidates.iter().map(|c| CandidateId::new(*c)).collect::<Result<Vec<_>>>()?;
        check_candidates(&ids)?;
        let index: HashMap<&str, usize> = candidates.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut out = Vec::with_capacity(ballots.len());
        for (line, (w, names)) in ballots.iter().enumerate() {
            let mut set = CandidateSet::EMPTY;
            for n in names.iter() {
                let i = *index.get(n).ok_or_else(|| Error::UnknownCandidate { line: line + 1, id: n.to_string() })?;
                set.insert(i);
            }
            out.push(ApprovalBallot::new(w.clone(), set));
        }
        BallotProfile::new(ids, out)
    }

    pub fn candidates(&self) -> &[CandidateId] {
        &self.candidates
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn all_candidates(&self) -> CandidateSet {
        CandidateSet::full(self.candidates.len())
    }

    pub fn ballots(&self) -> &[ApprovalBallot] {
        &self.ballots
    }

    pub fn name(&self, candidate: usize) -> &str {
        self.candidates[candidate].as_str()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c.as_str() == name)
    }

    /// Parses a whitespace separated list of candidate names into a set.
    pub fn set_of(&self, names: &str) -> Result<CandidateSet> {
        names
            .split_whitespace()
            .map(|n| self.index_of(n).ok_or_else(|| Error::UnknownCandidate { line: 0, id: n.to_string() }))
            .collect()
    }

    pub fn names_of(&self, set: CandidateSet) -> Vec<String> {
        set.iter().map(|i| self.name(i).to_string()).collect()
    }

    /// Total weight `v`.
    pub fn total_weight(&self) -> Rational {
        self.ballots.iter().map(|b| &b.weight).sum()
    }

    /// Total weight of ballots approving `candidate`.
    pub fn approval_weight(&self, candidate: usize) -> Rational {
        self.ballots.iter().filter(|b| b.approved.contains(candidate)).map(|b| &b.weight).sum()
    }

    /// Total weight of ballots approving at least one member of `set`.
    pub fn coverage_weight(&self, set: CandidateSet) -> Rational {
        self.ballots.iter().filter(|b| b.approved.intersects(set)).map(|b| &b.weight).sum()
    }

    /// Indices of positive-weight ballots approving `candidate`.
    pub fn approvers(&self, candidate: usize) -> Vec<usize> {
        (0..self.ballots.len())
            .filter(|&i| self.ballots[i].approved.contains(candidate) && !self.ballots[i].weight.is_zero())
            .collect()
    }

    /// Multiplies every ballot weight by `factor` (which must be positive).
    pub fn scaled(&self, factor: &Rational) -> BallotProfile {
        assert!(factor.is_positive(), "scale factor must be positive");
        BallotProfile {
            candidates: self.candidates.clone(),
            ballots: self.ballots.iter().map(|b| ApprovalBallot::new(&b.weight * factor, b.approved)).collect(),
        }
    }

    pub fn with_ballot(&self, ballot: ApprovalBallot) -> Result<BallotProfile> {
        let mut ballots = self.ballots.clone();
        ballots.push(ballot);
        BallotProfile::new(self.candidates.clone(), ballots)
    }

    /// Appends new candidates; `approved_on(ballot index)` says whether each
    /// existing ballot approves all of them.
    pub fn with_new_candidates(
        &self,
        names: &[String],
        approved_on: impl Fn(usize, &ApprovalBallot) -> bool,
    ) -> Result<BallotProfile> {
        let mut candidates = self.candidates.clone();
        for n in names {
            candidates.push(CandidateId::new(n.clone())?);
        }
        check_candidates(&candidates)?;
        let start = self.candidates.len();
        let added: CandidateSet = (start..candidates.len()).collect();
        let ballots = self
            .ballots
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let approved = if approved_on(i, b) { b.approved.union(added) } else { b.approved };
                ApprovalBallot::new(b.weight.clone(), approved)
            })
            .collect();
        BallotProfile::new(candidates, ballots)
    }

    /// Drops one candidate, renumbering the others and removing it from every ballot.
    pub fn without_candidate(&self, candidate: usize) -> Result<BallotProfile> {
        let candidates: Vec<_> =
            self.candidates.iter().enumerate().filter(|&(i, _)| i != candidate).map(|(_, c)| c.clone()).collect();
        let ballots = self
            .ballots
            .iter()
            .map(|b| {
                let low = b.approved.bits() & ((1u128 << candidate) - 1);
                let high = b.approved.bits().checked_shr(candidate as u32 + 1).unwrap_or(0) << candidate;
                ApprovalBallot::new(b.weight.clone(), CandidateSet::from_bits(low | high))
            })
            .collect();
        BallotProfile::new(candidates, ballots)
    }

    /// Reorders candidates to `order` (a permutation of this profile's names).
    pub fn reindexed(&self, order: &[CandidateId]) -> Result<BallotProfile> {
        if order.len() != self.candidates.len() {
            return Err(Error::CandidateMismatch);
        }
        let map: Vec<usize> = self
            .candidates
            .iter()
            .map(|c| order.iter().position(|o| o == c).ok_or(Error::CandidateMismatch))
            .collect::<Result<_>>()?;
        let ballots = self
            .ballots
            .iter()
            .map(|b| ApprovalBallot::new(b.weight.clone(), b.approved.iter().map(|i| map[i]).collect()))
            .collect();
        BallotProfile::new(order.to_vec(), ballots)
    }

    /// Ballots of both profiles in one election (candidate sets must match).
    pub fn union(&self, other: &BallotProfile) -> Result<BallotProfile> {
        let other = other.reindexed(&self.candidates)?;
        let mut ballots = self.ballots.clone();
        ballots.extend(other.ballots);
        BallotProfile::new(self.candidates.clone(), ballots)
    }
}

impl fmt::Display for BallotProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "candidates:")?;
        for c in &self.candidates {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for b in &self.ballots {
            write!(f, "{}:", format_rational(&b.weight))?;
            for i in b.approved.iter() {
                write!(f, " {}", self.candidates[i])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Merges ballots with identical approval sets (first-occurrence order) and
/// drops zero-weight ballots.
pub fn group_identical(profile: &BallotProfile) -> BallotProfile {
    let mut order: Vec<CandidateSet> = Vec::new();
    let mut sums: HashMap<CandidateSet, Rational> = HashMap::new();
    for b in &profile.ballots {
        if b.weight.is_zero() {
            continue;
        }
        match sums.get_mut(&b.approved) {
            Some(w) => *w += &b.weight,
            None => {
                order.push(b.approved);
                sums.insert(b.approved, b.weight.clone());
            }
        }
    }
    let ballots = order.into_iter().map(|s| ApprovalBallot::new(sums.remove(&s).unwrap(), s)).collect();
    BallotProfile { candidates: profile.candidates.clone(), ballots }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntheticBallot {
    /// Approves nobody.
    Empty,
    /// Approves every candidate.
    Full,
    Custom(CandidateSet),
}

pub fn add_synthetic_ballots(
    profile: &BallotProfile,
    kind: SyntheticBallot,
    weight: Rational,
) -> Result<BallotProfile> {
    let approved = match kind {
        SyntheticBallot::Empty => CandidateSet::EMPTY,
        SyntheticBallot::Full => profile.all_candidates(),
        SyntheticBallot::Custom(s) => s,
    };
    profile.with_ballot(ApprovalBallot::new(weight, approved))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBallot {
    pub weight: Rational,
    /// One grade per profile candidate, 0 when ungraded.
    pub grades: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreProfile {
    candidates: Vec<CandidateId>,
    ballots: Vec<ScoreBallot>,
    max_grade: u32,
}

impl ScoreProfile {
    pub fn new(candidates: Vec<CandidateId>, ballots: Vec<ScoreBallot>, max_grade: u32) -> Result<Self> {
        check_candidates(&candidates)?;
        if max_grade == 0 {
            return Err(Error::Syntax { line: 0, message: "maxgrade must be at least 1".into() });
        }
        let mut total = Rational::zero();
        for (i, b) in ballots.iter().enumerate() {
            if b.weight.is_negative() {
                return Err(Error::MalformedWeight { line: i + 1, text: format_rational(&b.weight) });
            }
            if b.grades.len() != candidates.len() {
                return Err(Error::Syntax { line: i + 1, message: "grade vector length mismatch".into() });
            }
            if let Some(&g) = b.grades.iter().find(|&&g| g > max_grade) {
                return Err(Error::GradeOutOfRange { line: i + 1, grade: g, max: max_grade });
            }
            total += &b.weight;
        }
        if total.is_zero() {
            return Err(Error::EmptyProfile);
        }
        Ok(ScoreProfile { candidates, ballots, max_grade })
    }

    pub fn candidates(&self) -> &[CandidateId] {
        &self.candidates
    }

    pub fn ballots(&self) -> &[ScoreBallot] {
        &self.ballots
    }

    pub fn max_grade(&self) -> u32 {
        self.max_grade
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn total_weight(&self) -> Rational {
        self.ballots.iter().map(|b| &b.weight).sum()
    }
}

impl fmt::Display for ScoreProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "candidates:")?;
        for c in &self.candidates {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        writeln!(f, "maxgrade: {}", self.max_grade)?;
        for b in &self.ballots {
            write!(f, "{}:", format_rational(&b.weight))?;
            for (c, g) in self.candidates.iter().zip(&b.grades) {
                if *g > 0 {
                    write!(f, " {c}={g}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Letter grades `A`..`E` map to 5..1.
pub fn grade_from_letter(letter: char) -> Option<u32> {
    match letter.to_ascii_uppercase() {
        c @ 'A'..='E' => Some(5 - (c as u32 - 'A' as u32)),
        _ => None,
    }
}

/// Splits each score ballot of weight `w` into `s` approval ballots of weight
/// `w/s`; part `n` approves every candidate graded `n` or higher.
pub fn kp_transform(sp: &ScoreProfile) -> BallotProfile {
    let s = sp.max_grade;
    let parts = Rational::from_integer(s.into());
    let mut ballots = Vec::with_capacity(sp.ballots.len() * s as usize);
    for b in &sp.ballots {
        let w = &b.weight / &parts;
        for n in 1..=s {
            let approved = b.grades.iter().enumerate().filter(|(_, &g)| g >= n).map(|(i, _)| i).collect();
            ballots.push(ApprovalBallot::new(w.clone(), approved));
        }
    }
    BallotProfile { candidates: sp.candidates.clone(), ballots }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Approval(BallotProfile),
    Score(ScoreProfile),
}

impl Profile {
    pub fn into_approval(self) -> Result<BallotProfile> {
        match self {
            Profile::Approval(p) => Ok(p),
            Profile::Score(_) => Err(Error::Syntax { line: 0, message: "expected an approval profile".into() }),
        }
    }
}

pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::EmptyProfile)?;
    let names = header
        .strip_prefix("candidates:")
        .ok_or_else(|| Error::Syntax { line: hline, message: "expected `candidates:` header".into() })?;
    let candidates = names.split_whitespace().map(CandidateId::new).collect::<Result<Vec<_>>>()?;
    check_candidates(&candidates)?;
    let index: HashMap<&str, usize> = candidates.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();

    let mut rest = lines.peekable();
    let mut max_grade = None;
    if let Some((line, l)) = rest.peek().copied() {
        if let Some(s) = l.strip_prefix("maxgrade:") {
            let s: u32 = s
                .trim()
                .parse()
                .map_err(|_| Error::Syntax { line, message: format!("bad maxgrade `{}`", s.trim()) })?;
            max_grade = Some(s);
            rest.next();
        }
    }

    let mut approval = Vec::new();
    let mut score = Vec::new();
    for (line, l) in rest {
        let (w, body) =
            l.split_once(':').ok_or_else(|| Error::Syntax { line, message: "expected `<weight>: ...`".into() })?;
        let weight =
            parse_rational(w.trim()).ok_or_else(|| Error::MalformedWeight { line, text: w.trim().to_string() })?;
        let lookup =
            |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownCandidate { line, id: id.to_string() });
        match max_grade {
            None => {
                let mut set = CandidateSet::EMPTY;
                for tok in body.split_whitespace() {
                    if tok.contains('=') {
                        return Err(Error::Syntax { line, message: "graded entry in an approval profile".into() });
                    }
                    set.insert(lookup(tok)?);
                }
                approval.push(ApprovalBallot::new(weight, set));
            }
            Some(s) => {
                let mut grades = vec![0; candidates.len()];
                for tok in body.split_whitespace() {
                    let (id, g) = tok
                        .split_once('=')
                        .ok_or_else(|| Error::Syntax { line, message: format!("expected `id=grade`, got `{tok}`") })?;
                    let g: u32 = g.parse().map_err(|_| Error::Syntax { line, message: format!("bad grade `{g}`") })?;
                    if g > s {
                        return Err(Error::GradeOutOfRange { line, grade: g, max: s });
                    }
                    grades[lookup(id)?] = g;
                }
                score.push(ScoreBallot { weight, grades });
            }
        }
    }
    match max_grade {
        None => BallotProfile::new(candidates, approval).map(Profile::Approval),
        Some(s) => ScoreProfile::new(candidates, score, s).map(Profile::Score),
    }
}

pub fn parse_approval_profile(text: &str) -> Result<BallotProfile> {
    parse_profile(text)?.into_approval()
}
