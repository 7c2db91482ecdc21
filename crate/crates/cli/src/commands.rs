use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use cowpea_core::ballots::{kp_transform, parse_profile, ScoreBallot, SyntheticBallot};
use cowpea_core::cowpea::{
    graded_exact_distribution, graded_lottery, graded_sampler, graded_weights, lottery_inclusion_counts,
    DEFAULT_WEIGHT_LIMIT,
};
use cowpea_core::criteria::{self, pril_convergence, Probe, ProbeVerdict};
use cowpea_core::rational::{parse_rational, round_sig12, ExactValue};
use cowpea_core::{
    cowpea_lottery, cowpea_weights, lottery_exact_distribution, run_method, BallotProfile, CandidateSet, Error,
    LotteryRng, Method, Profile, RunOptions, ScoreProfile, SeatDistribution,
};
use serde_json::{json, Value};

use crate::render;
use crate::{
    BallotKind, Cli, Command, Failure, Format, ProbeArgs, RunConfig, EXIT_MISMATCH, EXIT_OK, EXIT_UNKNOWN_NAME,
};

enum Loaded {
    Approval(BallotProfile),
    Graded(ScoreProfile),
}

impl Loaded {
    fn names(&self) -> Vec<String> {
        let ids = match self {
            Loaded::Approval(p) => p.candidates(),
            Loaded::Graded(sp) => sp.candidates(),
        };
        ids.iter().map(|c| c.to_string()).collect()
    }

    fn approval(self) -> Result<BallotProfile, Failure> {
        match self {
            Loaded::Approval(p) => Ok(p),
            Loaded::Graded(_) => {
                Err(Failure::input("this command needs approval ballots; pass --kp to convert grades"))
            }
        }
    }
}

fn parse_weight(text: &str, what: &str) -> Result<cowpea_core::Rational, Failure> {
    parse_rational(text)
        .filter(|r| *r > cowpea_core::rational::zero())
        .ok_or_else(|| Failure::input(format!("{what} must be a positive integer or fraction, got `{text}`")))
}

fn load(path: &Path, cfg: &RunConfig) -> Result<Loaded, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_profile(&text).map_err(|e| Failure::from(e).prefixed(path))?;
    let mut loaded = match parsed {
        Profile::Approval(p) => Loaded::Approval(p),
        Profile::Score(sp) if cfg.kp => Loaded::Approval(kp_transform(&sp)),
        Profile::Score(sp) => Loaded::Graded(sp),
    };
    if let Some(s) = &cfg.scale {
        let factor = parse_weight(s, "--scale")?;
        loaded = match loaded {
            Loaded::Approval(p) => Loaded::Approval(p.scaled(&factor)),
            Loaded::Graded(sp) => {
                let ballots = sp
                    .ballots()
                    .iter()
                    .map(|b| ScoreBallot { weight: &b.weight * &factor, grades: b.grades.clone() })
                    .collect();
                Loaded::Graded(ScoreProfile::new(sp.candidates().to_vec(), ballots, sp.max_grade())?)
            }
        };
    }
    Ok(loaded)
}

impl Failure {
    fn prefixed(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

fn seats(cfg: &RunConfig) -> Result<usize, Failure> {
    cfg.seats.ok_or_else(|| Failure::input("--seats is required for this command"))
}

fn options(cfg: &RunConfig, method: Method) -> RunOptions {
    let mut opts = RunOptions { budget: cfg.budget, ..RunOptions::default() };
    if let Some(t) = cfg.tolerance {
        match method {
            Method::VarPhragmen => opts.varphragmen_tolerance = t,
            Method::OptPav => opts.optpav_tolerance = t,
            _ => {}
        }
    }
    opts
}

fn method_named(name: &str) -> Result<Method, Failure> {
    Method::from_str(name).map_err(|e| Failure::new(EXIT_UNKNOWN_NAME, e.to_string()))
}

fn candidate(profile: &BallotProfile, name: Option<&str>) -> Result<usize, Failure> {
    let name = name.ok_or_else(|| Failure::input("--candidate is required for this probe"))?;
    profile.index_of(name).ok_or_else(|| Failure::input(format!("unknown candidate `{name}`")))
}

fn emit(out: &mut dyn Write, cfg: &RunConfig, text: String, value: Value) -> Result<(), Failure> {
    let body = match cfg.format() {
        Format::Text => text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
    };
    out.write_all(body.as_bytes()).map_err(|e| Failure::input(format!("cannot write output: {e}")))
}

fn weights_json(names: &[String], weights: &[cowpea_core::Rational]) -> Value {
    let map: serde_json::Map<String, Value> =
        names.iter().zip(weights).map(|(n, w)| (n.clone(), json!(ExactValue(w.clone())))).collect();
    Value::Object(map)
}

fn distribution_json(names: &[String], d: &SeatDistribution) -> Value {
    let entries: Vec<Value> = d
        .probabilities
        .iter()
        .map(|(s, p)| json!({ "elected": render::names_of(names, *s), "probability": ExactValue(p.clone()) }))
        .collect();
    let inclusion: Vec<cowpea_core::Rational> = (0..names.len()).map(|c| d.inclusion(c)).collect();
    json!({ "seats": d.seats, "distribution": entries, "inclusion": weights_json(names, &inclusion) })
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Weights { profile } => {
            let loaded = load(profile, cfg)?;
            let names = loaded.names();
            let result = match &loaded {
                Loaded::Approval(p) => cowpea_weights(p),
                Loaded::Graded(sp) => graded_weights(sp),
            };
            let w = result.map_err(|e| {
                let guard = matches!(e, Error::InstanceTooLarge { .. });
                let mut f = Failure::from(e);
                if guard {
                    f.message.push_str(&format!(
                        "; exact weights are limited to {DEFAULT_WEIGHT_LIMIT} candidates, \
                         estimate them with `cowpea lottery --seats 1 --trials N` instead"
                    ));
                }
                f
            })?;
            let value = json!({ "command": "weights", "weights": weights_json(&names, &w.weights) });
            emit(out, cfg, render::weights(&names, &w.weights), value)?;
        }
        Command::Lottery { profile } => {
            let k = seats(cfg)?;
            let loaded = load(profile, cfg)?;
            let names = loaded.names();
            if cfg.trials <= 1 {
                let elected = match &loaded {
                    Loaded::Approval(p) => cowpea_lottery(p, k, cfg.seed)?,
                    Loaded::Graded(sp) => graded_lottery(sp, k, cfg.seed)?,
                };
                let value = json!({
                    "command": "lottery",
                    "seats": k,
                    "seed": cfg.seed,
                    "elected": elected.0.iter().map(|&c| names[c].clone()).collect::<Vec<_>>(),
                });
                emit(out, cfg, render::sequence(&names, &elected.0), value)?;
            } else {
                let counts = match &loaded {
                    Loaded::Approval(p) => lottery_inclusion_counts(p, k, cfg.trials, cfg.seed)?,
                    Loaded::Graded(sp) => {
                        let sampler = graded_sampler(sp);
                        let mut counts = vec![0u64; names.len()];
                        for t in 0..cfg.trials {
                            let mut rng = LotteryRng::for_trial(cfg.seed, t);
                            for c in sampler.elect(CandidateSet::full(names.len()), k, &mut rng)? {
                                counts[c] += 1;
                            }
                        }
                        counts
                    }
                };
                let map: serde_json::Map<String, Value> =
                    names.iter().zip(&counts).map(|(n, c)| (n.clone(), json!(c))).collect();
                let value = json!({
                    "command": "lottery",
                    "seats": k,
                    "seed": cfg.seed,
                    "trials": cfg.trials,
                    "counts": map,
                });
                emit(out, cfg, render::counts(&names, &counts, cfg.trials), value)?;
            }
        }
        Command::ExactLottery { profile } => {
            let k = seats(cfg)?;
            let loaded = load(profile, cfg)?;
            let names = loaded.names();
            let d = match &loaded {
                Loaded::Approval(p) => lottery_exact_distribution(p, k)?,
                Loaded::Graded(sp) => graded_exact_distribution(sp, k)?,
            };
            let value = json!({ "command": "exact-lottery", "result": distribution_json(&names, &d) });
            emit(out, cfg, render::distribution(&names, &d), value)?;
        }
        Command::Method { name, profile } => {
            let method = method_named(name)?;
            let k = if method.ignores_seats() { cfg.seats.unwrap_or(0) } else { seats(cfg)? };
            let p = load(profile, cfg)?.approval()?;
            let output = run_method(method, &p, k, &options(cfg, method))?;
            let value = json!({
                "command": "method",
                "method": method.name(),
                "seats": k,
                "result": output.to_json(&p),
            });
            emit(out, cfg, render::method_output(&p, &output), value)?;
        }
        Command::Criteria { probe, method, profile, probe_args } => {
            let probe = Probe::from_str(probe).map_err(|e| Failure::new(EXIT_UNKNOWN_NAME, e.to_string()))?;
            let method = method_named(method)?;
            let p = load(profile, cfg)?.approval()?;
            let verdict = run_probe(probe, method, &p, probe_args, cfg)?;
            let value = json!({ "command": "criteria", "verdict": verdict.to_json() });
            emit(out, cfg, render::verdict(&verdict), value)?;
        }
        Command::Pril { profile, seat_counts } => {
            let p = load(profile, cfg)?.approval()?;
            let points = pril_convergence(&p, seat_counts, cfg.trials.max(1), cfg.seed)?;
            let value = json!({
                "command": "pril",
                "seed": cfg.seed,
                "trials": cfg.trials.max(1),
                "points": points.iter().map(|pt| json!({
                    "seats": pt.seats,
                    "meanMisrepresentation": round_sig12(pt.mean_misrepresentation),
                })).collect::<Vec<_>>(),
            });
            emit(out, cfg, render::pril(&points), value)?;
        }
        Command::VerifyPaper { golden } => {
            let text = match golden {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?,
                None => crate::golden::BUILTIN.to_string(),
            };
            let reports = crate::golden::verify(&text)?;
            let passed = reports.iter().filter(|r| r.ok()).count();
            let value = json!({
                "command": "verify-paper",
                "passed": passed,
                "total": reports.len(),
                "notes": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            emit(out, cfg, render::golden(&reports), value)?;
            if passed < reports.len() {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_probe(
    probe: Probe,
    method: Method,
    p: &BallotProfile,
    args: &ProbeArgs,
    cfg: &RunConfig,
) -> Result<ProbeVerdict, Failure> {
    let opts = options(cfg, method);
    let k = if method.ignores_seats() { cfg.seats.unwrap_or(0) } else { seats(cfg)? };
    let verdict = match probe {
        Probe::Monotonicity => {
            let ballot = args.ballot.ok_or_else(|| Failure::input("--ballot is required for this probe"))?;
            let c = candidate(p, args.candidate.as_deref())?;
            criteria::monotonicity_probe(method, p, ballot, c, k, &opts)?
        }
        Probe::Iib => {
            let kind = match args.kind {
                BallotKind::Full => SyntheticBallot::Full,
                BallotKind::Empty => SyntheticBallot::Empty,
            };
            criteria::iib_probe(method, p, kind, parse_weight(&args.weight, "--weight")?, k, &opts)?
        }
        Probe::Iuac => criteria::iuac_probe(method, p, args.count, k, &opts)?,
        Probe::Iia => criteria::iia_probe(method, p, candidate(p, args.candidate.as_deref())?, k, &opts)?,
        Probe::Consistency => {
            let other = args.other.as_ref().ok_or_else(|| Failure::input("--other is required for this probe"))?;
            let q = load(other, cfg)?.approval()?;
            criteria::consistency_probe(method, p, &q, k, &opts)?
        }
        Probe::Clone => {
            criteria::clone_probe(method, p, candidate(p, args.candidate.as_deref())?, args.count, k, &opts)?
        }
        Probe::Pareto => criteria::pareto_probe(method, p, k, &opts)?,
    };
    Ok(verdict)
}
