//! Command-line front end: parse JSON game descriptions, dispatch analyses,
//! emit deterministic reports.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 analysis refusal (a cap
//! was exceeded), 3 internal solver failure.

pub mod file;
pub mod report;

use crate::coalition::Coalition;
use crate::core::{
    check_core_membership_capped, convex_core_construction_capped, core_brute_force_capped,
    core_typed_capped, core_via_veto_capped, find_veto_agents_capped, CoreResult, CoreVerdict,
    Membership, PayoffVector, DEFAULT_BRUTE_FORCE_CAP, DEFAULT_CONVEX_CONSTRUCTION_CAP,
    DEFAULT_MEMBERSHIP_CAP, DEFAULT_TYPED_PROFILE_CAP,
};
use crate::error::{Error, Result};
use crate::games::typed::DEFAULT_EXPANSION_CAP;
use crate::games::{SimpleGame, DEFAULT_MONOTONE_CAP};
use crate::reliability::DEFAULT_ENUMERATION_CAP;
use crate::shapley::{
    estimate_all, exact_shapley_capped, plan_samples, SamplingMode, DEFAULT_EXACT_SHAPLEY_CAP,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use file::{load_game_file, resolve_coalition, BaseLoad, LoadedGame};
use report::{AgentPayoff, AgentValue, CheckReport, CoreReport, Report, ShapleyReport, VetoReport};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "reliagame",
    version,
    about = "Analyze reliability extensions of cooperative games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(flatten)]
    pub caps: CapOverrides,
}

/// Per-analysis agent caps; every exact algorithm refuses above its cap.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct CapOverrides {
    /// Coalition-size cap for exact value enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub cap_enumeration: Option<usize>,
    /// Agent cap for exact Shapley computation.
    #[arg(long, global = true, value_name = "N")]
    pub cap_exact_shapley: Option<usize>,
    /// Agent cap for the brute-force core LP.
    #[arg(long, global = true, value_name = "N")]
    pub cap_brute_force: Option<usize>,
    /// Agent cap for core membership scans.
    #[arg(long, global = true, value_name = "N")]
    pub cap_membership: Option<usize>,
    /// Agent cap for the convex-game core construction.
    #[arg(long, global = true, value_name = "N")]
    pub cap_convex: Option<usize>,
    /// Agent cap for typed-game expansion.
    #[arg(long, global = true, value_name = "N")]
    pub cap_expansion: Option<usize>,
    /// Profile-count cap for the typed core LP.
    #[arg(long, global = true, value_name = "N")]
    pub cap_typed_profiles: Option<usize>,
    /// Agent cap for exhaustive monotonicity checks.
    #[arg(long, global = true, value_name = "N")]
    pub cap_monotone: Option<usize>,
}

impl CapOverrides {
    fn enumeration(&self) -> usize {
        self.cap_enumeration.unwrap_or(DEFAULT_ENUMERATION_CAP)
    }
    fn exact_shapley(&self) -> usize {
        self.cap_exact_shapley.unwrap_or(DEFAULT_EXACT_SHAPLEY_CAP)
    }
    fn brute_force(&self) -> usize {
        self.cap_brute_force.unwrap_or(DEFAULT_BRUTE_FORCE_CAP)
    }
    fn membership(&self) -> usize {
        self.cap_membership.unwrap_or(DEFAULT_MEMBERSHIP_CAP)
    }
    fn convex(&self) -> usize {
        self.cap_convex.unwrap_or(DEFAULT_CONVEX_CONSTRUCTION_CAP)
    }
    fn expansion(&self) -> usize {
        self.cap_expansion.unwrap_or(DEFAULT_EXPANSION_CAP)
    }
    fn typed_profiles(&self) -> usize {
        self.cap_typed_profiles.unwrap_or(DEFAULT_TYPED_PROFILE_CAP)
    }
    fn monotone(&self) -> usize {
        self.cap_monotone.unwrap_or(DEFAULT_MONOTONE_CAP)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Independent permutations and survival draws per agent.
    Independent,
    /// One permutation and survival draw per sample, reused for all agents.
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Veto,
    Typed,
    Brute,
    Convex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact reliability value of a coalition given by agent labels.
    Value {
        file: PathBuf,
        /// Comma-separated agent labels; empty for the empty coalition.
        #[arg(default_value = "")]
        coalition: String,
    },
    /// Exact or sampled Shapley values with Hoeffding confidence intervals.
    Shapley {
        file: PathBuf,
        /// Compute exact values (refused above the exact-Shapley cap).
        #[arg(long, conflicts_with_all = ["epsilon", "samples"])]
        exact: bool,
        /// Target accuracy; the sample count comes from the Hoeffding bound.
        #[arg(long, conflicts_with = "samples")]
        epsilon: Option<f64>,
        /// Fixed sample count per agent.
        #[arg(long)]
        samples: Option<u64>,
        /// Confidence parameter for intervals and sample planning.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// RNG seed; identical seeds give byte-identical reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for sampling (default: all cores). Results do not
        /// depend on this.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Independent)]
        mode: ModeArg,
    },
    /// Core verdict and, when non-empty, a core imputation.
    Core {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Veto agents of the base game and of its reliability extension.
    Veto { file: PathBuf },
    /// Check whether a payoff vector lies in the core.
    Check {
        file: PathBuf,
        /// Comma-separated nonnegative payoffs, one per agent.
        #[arg(long)]
        imputation: String,
    },
}

/// Parse arguments, run the command, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(report) => {
            print!("{}", report.render(json));
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } | Error::LpTooLarge { .. } => 2,
        Error::SolverFailure(_) => 3,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> Result<Report> {
    let caps = cli.caps;
    match cli.command {
        Command::Value { file, coalition } => {
            let loaded = load(&file)?;
            cmd_value(&loaded, &coalition, &caps)
        }
        Command::Shapley {
            file,
            exact,
            epsilon,
            samples,
            delta,
            seed,
            workers,
            mode,
        } => {
            let loaded = load(&file)?;
            cmd_shapley(
                &loaded, exact, epsilon, samples, delta, seed, workers, mode, &caps,
            )
        }
        Command::Core { file, method } => {
            let loaded = load(&file)?;
            cmd_core(&loaded, method, &caps)
        }
        Command::Veto { file } => {
            let loaded = load(&file)?;
            cmd_veto(&loaded, &caps)
        }
        Command::Check { file, imputation } => {
            let loaded = load(&file)?;
            cmd_check(&loaded, &imputation, &caps)
        }
    }
}

fn load(path: &std::path::Path) -> Result<LoadedGame> {
    let loaded = load_game_file(path)?;
    for warning in loaded.warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(loaded)
}

fn cmd_value(loaded: &LoadedGame, coalition: &str, caps: &CapOverrides) -> Result<Report> {
    let base = loaded.to_base(caps.expansion())?;
    let c = resolve_coalition(&base.labels, coalition)?;
    let reliability_value = base.game.exact_value_capped(c, caps.enumeration())?;
    Ok(Report::Value(report::ValueReport {
        coalition: c.members().map(|i| base.labels[i].clone()).collect(),
        base_value: base.game.base().value(c),
        reliability_value,
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_shapley(
    loaded: &LoadedGame,
    exact: bool,
    epsilon: Option<f64>,
    samples: Option<u64>,
    delta: f64,
    seed: u64,
    workers: Option<usize>,
    mode: ModeArg,
    caps: &CapOverrides,
) -> Result<Report> {
    let base = loaded.to_base(caps.expansion())?;
    let n = base.game.num_agents();

    if exact {
        let phi = exact_shapley_capped(&base.game, caps.exact_shapley())?;
        let total = phi.iter().sum();
        return Ok(Report::Shapley(ShapleyReport {
            agents: n,
            method: "exact".into(),
            mode: None,
            samples: None,
            delta: None,
            epsilon: None,
            seed: None,
            values: phi
                .iter()
                .enumerate()
                .map(|(i, &value)| AgentValue {
                    agent: base.labels[i].clone(),
                    value,
                    ci_low: None,
                    ci_high: None,
                })
                .collect(),
            total: Some(total),
        }));
    }

    let k = match (epsilon, samples) {
        (Some(eps), None) => plan_samples(eps, delta)?,
        (None, Some(k)) => k,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "provide --epsilon or --samples (or use --exact)".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let sampling_mode = match mode {
        ModeArg::Independent => SamplingMode::Independent,
        ModeArg::Shared => SamplingMode::Shared,
    };
    let estimates = match workers {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?;
            pool.install(|| estimate_all(&base.game, k, seed, delta, sampling_mode))?
        }
        None => estimate_all(&base.game, k, seed, delta, sampling_mode)?,
    };
    let epsilon_out = estimates.first().map(|e| e.epsilon);
    Ok(Report::Shapley(ShapleyReport {
        agents: n,
        method: "sampled".into(),
        mode: Some(
            match sampling_mode {
                SamplingMode::Independent => "independent",
                SamplingMode::Shared => "shared",
            }
            .into(),
        ),
        samples: Some(k),
        delta: Some(delta),
        epsilon: epsilon_out,
        seed: Some(seed),
        values: estimates
            .iter()
            .map(|e| {
                let (lo, hi) = e.interval();
                AgentValue {
                    agent: base.labels[e.agent].clone(),
                    value: e.point,
                    ci_low: Some(lo),
                    ci_high: Some(hi),
                }
            })
            .collect(),
        total: None,
    }))
}

fn core_report(result: CoreResult, labels: &[String]) -> Report {
    let (verdict, reason, imputation) = match result.verdict {
        CoreVerdict::NonEmpty(p) => (
            "non-empty".to_string(),
            None,
            Some(
                p.as_slice()
                    .iter()
                    .enumerate()
                    .map(|(i, &payoff)| AgentPayoff {
                        agent: labels[i].clone(),
                        payoff,
                    })
                    .collect(),
            ),
        ),
        CoreVerdict::Empty => ("empty".to_string(), None, None),
        CoreVerdict::Unknown { reason } => ("unknown".to_string(), Some(reason), None),
    };
    Report::Core(CoreReport {
        method: result.method.name().to_string(),
        verdict,
        reason,
        imputation,
    })
}

fn cmd_core(loaded: &LoadedGame, method: MethodArg, caps: &CapOverrides) -> Result<Report> {
    match method {
        MethodArg::Veto => {
            let base = loaded.to_base(caps.expansion())?;
            Ok(core_report(
                core_via_veto_capped(&base.game, caps.monotone())?,
                &base.labels,
            ))
        }
        MethodArg::Brute => {
            let base = loaded.to_base(caps.expansion())?;
            Ok(core_report(
                core_brute_force_capped(&base.game, caps.brute_force())?,
                &base.labels,
            ))
        }
        MethodArg::Convex => {
            let base = loaded.to_base(caps.expansion())?;
            Ok(core_report(
                convex_core_construction_capped(&base.game, caps.convex())?,
                &base.labels,
            ))
        }
        MethodArg::Typed => {
            let typed = loaded.typed().ok_or_else(|| {
                Error::InvalidArgument("--method typed needs a typed game file".into())
            })?;
            let result = core_typed_capped(&typed.typed, caps.typed_profiles())?;
            // Expansion labels for the per-agent imputation.
            let base = loaded.to_base(caps.expansion());
            let labels = match &base {
                Ok(b) => b.labels.clone(),
                // Expansion over the cap: fall back to type-indexed labels.
                Err(_) => typed
                    .typed
                    .counts()
                    .iter()
                    .enumerate()
                    .flat_map(|(j, &c)| {
                        let name = typed.type_names[j].clone();
                        (1..=c).map(move |ordinal| format!("{name}.{ordinal}"))
                    })
                    .collect(),
            };
            Ok(core_report(result, &labels))
        }
        MethodArg::Auto => cmd_core_auto(loaded, caps),
    }
}

/// Try veto first, then the typed LP for typed games, then brute force,
/// skipping a method when its caps refuse and aggregating the reasons when
/// nothing decides.
fn cmd_core_auto(loaded: &LoadedGame, caps: &CapOverrides) -> Result<Report> {
    let mut reasons: Vec<String> = Vec::new();

    let base = match loaded.to_base(caps.expansion()) {
        Ok(b) => Some(b),
        Err(e @ Error::CapExceeded { .. }) => {
            reasons.push(format!("expansion: {e}"));
            None
        }
        Err(e) => return Err(e),
    };

    if let Some(base) = &base {
        match core_via_veto_capped(&base.game, caps.monotone()) {
            Ok(CoreResult {
                verdict: CoreVerdict::Unknown { reason },
                ..
            }) => reasons.push(format!("veto: {reason}")),
            Ok(decisive) => return Ok(core_report(decisive, &base.labels)),
            Err(e @ (Error::CapExceeded { .. } | Error::NonMonotone(_))) => {
                reasons.push(format!("veto: {e}"))
            }
            Err(e) => return Err(e),
        }
    }

    if let Some(typed) = loaded.typed() {
        match core_typed_capped(&typed.typed, caps.typed_profiles()) {
            Ok(result) => {
                let labels = match &base {
                    Some(b) => b.labels.clone(),
                    None => typed
                        .typed
                        .counts()
                        .iter()
                        .enumerate()
                        .flat_map(|(j, &c)| {
                            let name = typed.type_names[j].clone();
                            (1..=c).map(move |ordinal| format!("{name}.{ordinal}"))
                        })
                        .collect(),
                };
                return Ok(core_report(result, &labels));
            }
            Err(e @ (Error::CapExceeded { .. } | Error::LpTooLarge { .. })) => {
                reasons.push(format!("typed: {e}"))
            }
            Err(e) => return Err(e),
        }
    }

    if let Some(base) = &base {
        match core_brute_force_capped(&base.game, caps.brute_force()) {
            Ok(result) => return Ok(core_report(result, &base.labels)),
            Err(e @ (Error::CapExceeded { .. } | Error::LpTooLarge { .. })) => {
                reasons.push(format!("brute: {e}"))
            }
            Err(e) => return Err(e),
        }
    }

    Ok(Report::Core(CoreReport {
        method: "auto".into(),
        verdict: "unknown".into(),
        reason: Some(reasons.join("; ")),
        imputation: None,
    }))
}

fn cmd_veto(loaded: &LoadedGame, caps: &CapOverrides) -> Result<Report> {
    let base = loaded.to_base(caps.expansion())?;
    let veto = find_veto_agents_capped(base.game.base(), caps.monotone())?;
    let extension_veto = extension_veto_agents(&base, caps)?;
    Ok(Report::Veto(VetoReport {
        base_veto: veto.into_iter().map(|i| base.labels[i].clone()).collect(),
        extension_veto,
    }))
}

/// Veto agents of the extension: agents whose absence forces the extension
/// value of the rest to exactly zero (the base was already checked
/// monotone, and the extension inherits monotonicity).
fn extension_veto_agents(base: &BaseLoad, caps: &CapOverrides) -> Result<Vec<String>> {
    let n = base.game.num_agents();
    let grand = Coalition::grand(n);
    let mut out = Vec::new();
    for i in 0..n {
        let rest = grand.without(i);
        if base.game.exact_value_capped(rest, caps.enumeration())? == 0.0 {
            out.push(base.labels[i].clone());
        }
    }
    Ok(out)
}

fn cmd_check(loaded: &LoadedGame, imputation: &str, caps: &CapOverrides) -> Result<Report> {
    let base = loaded.to_base(caps.expansion())?;
    let n = base.game.num_agents();
    let payoffs: Vec<f64> = imputation
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad payoff entry {tok:?}")))
        })
        .collect::<Result<_>>()?;
    if payoffs.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} payoffs given for {n} agents",
            payoffs.len()
        )));
    }
    let payoff = PayoffVector::new(payoffs)?;
    match check_core_membership_capped(&base.game, &payoff, caps.membership())? {
        Membership::InCore => Ok(Report::Check(CheckReport {
            verdict: "in core".into(),
            blocking_coalition: None,
            coalition_payoff: None,
            coalition_value: None,
        })),
        Membership::Blocked {
            coalition,
            payoff,
            value,
        } => Ok(Report::Check(CheckReport {
            verdict: "blocked".into(),
            blocking_coalition: Some(
                coalition
                    .members()
                    .map(|i| base.labels[i].clone())
                    .collect(),
            ),
            coalition_payoff: Some(payoff),
            coalition_value: Some(value),
        })),
    }
}
