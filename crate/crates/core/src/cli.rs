//! Command-line front end: argument parsing, dispatch, and text or JSON reports.
//!
//! Exit codes: 0 success, 1 a checked predicate failed (unstable network,
//! lemma violation, certified non-tree equilibrium above the tree threshold),
//! 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{tree_threshold, BoundsTable};
use crate::error::{Error, Result};
use crate::game::{Game, Mode, Schedule, DEFAULT_EXACT_CAP};
use crate::graph::{biconnected_components, centroids, parse_network, serialize_network, DistanceMatrix, OwnedNetwork};
use crate::harness::{
    counterexample_search, find_equilibria, verify_lemma, EnumerationSpec, LemmaId, LemmaOptions, Space,
};
use crate::rational::{format_rational, Alpha};
use crate::structure::{critical_pairs, find_chordless_four_cycle, find_triangle, min_cycles};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;
/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "NCG_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "ncg", version, about = "Exact analysis of the sum-distance network creation game")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    SingleMove,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::SingleMove => Mode::SingleMove,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Profiles,
    GraphFirst,
    Trees,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Profiles => Space::ProfileSpace,
            SpaceArg::GraphFirst => Space::GraphFirst,
            SpaceArg::Trees => Space::Trees,
        }
    }
}

#[derive(Debug, Args)]
pub struct Workers {
    /// Worker threads; results do not depend on this.
    #[arg(long, env = WORKERS_ENV, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distances, cycles, critical pairs and centroids of a network file.
    Analyze {
        file: PathBuf,
        /// Also report costs and exact stability at this edge price.
        #[arg(long)]
        alpha: Option<Alpha>,
    },
    /// Certify whether a network is stable.
    CheckNe {
        file: PathBuf,
        #[arg(long)]
        alpha: Alpha,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Best response of one agent.
    BestResponse {
        file: PathBuf,
        #[arg(long)]
        alpha: Alpha,
        #[arg(long)]
        agent: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Run response dynamics from a network file.
    Dynamics {
        file: PathBuf,
        #[arg(long)]
        alpha: Alpha,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        /// Shuffle the agent order every round from this seed instead of round robin.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the final network here in the text format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every stable network on `n` agents.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Edge prices; repeat the flag for several.
        #[arg(long, required = true)]
        alpha: Vec<Alpha>,
        #[arg(long, value_enum, default_value_t = SpaceArg::GraphFirst)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Profile space only: skip disconnected profiles.
        #[arg(long)]
        connected_only: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Check a structural claim on every stable network above its threshold.
    VerifyLemma {
        /// One of L1 L2 L3 L5 L7 C1 T1 L9 L10 T2.
        lemma: LemmaId,
        #[arg(long)]
        n: usize,
        /// Edge prices; defaults to a grid above the threshold.
        #[arg(long)]
        alpha: Vec<Alpha>,
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Also run the lemma's deviation oracle on this many sampled instances.
        #[arg(long, default_value_t = 0)]
        oracle_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write every violating network here in the text format.
        #[arg(long)]
        repro_dir: Option<PathBuf>,
        #[command(flatten)]
        workers: Workers,
    },
    /// Randomized search for stable networks that are not trees.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Alpha,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::SingleMove)]
        mode: ModeArg,
        #[command(flatten)]
        workers: Workers,
    },
    /// Thresholds and price-of-anarchy bounds at a point.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Alpha,
    },
}

/// Exit status and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: message }
    }
}

pub fn parse_network_file(path: &Path) -> Result<OwnedNetwork> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_network(&text)
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome { code: 0, stdout: text, stderr: String::new() } };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Json => {
                    let doc = json!({ "schema": SCHEMA, "command": r.command, "report": r.json });
                    serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
                }
            };
            Outcome { code: if r.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

struct Report {
    command: &'static str,
    ok: bool,
    json: Value,
    text: String,
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Analyze { file, alpha } => analyze(&parse_network_file(file)?, *alpha),
        Command::CheckNe { file, alpha, mode } => {
            let net = parse_network_file(file)?;
            let cert = Game::new(*alpha).is_equilibrium(&net, (*mode).into())?;
            let mut text = format!("{} under {:?} at alpha {alpha}\n", if cert.is_stable() { "stable" } else { "not stable" }, cert.mode);
            if let Some(w) = &cert.witness {
                text.push_str(&format!(
                    "agent {} {:?}: removes {:?}, adds {:?}, cost {} -> {} (gain {})\n",
                    w.deviation.agent, w.deviation.kind, w.deviation.removed, w.deviation.added, w.current_cost, w.new_cost, w.improvement
                ));
            }
            Ok(Report { command: "check-ne", ok: cert.is_stable(), json: to_value(&cert), text })
        }
        Command::BestResponse { file, alpha, agent, mode } => {
            let net = parse_network_file(file)?;
            let br = Game::new(*alpha).best_response(&net, *agent, (*mode).into())?;
            let text = format!(
                "agent {}: best strategy {:?}, cost {} (current {}), {}\n",
                br.agent,
                br.strategy,
                br.cost,
                br.current_cost,
                if br.improves() { "improves" } else { "no improvement" }
            );
            Ok(Report { command: "best-response", ok: true, json: to_value(&br), text })
        }
        Command::Dynamics { file, alpha, mode, max_rounds, seed, out } => {
            let net = parse_network_file(file)?;
            let schedule = seed.map_or(Schedule::RoundRobin, Schedule::SeededRandom);
            let game = Game::new(*alpha);
            let t = game.dynamics_with_mode(&net, schedule, *max_rounds, (*mode).into())?;
            if let Some(path) = out {
                fs::write(path, serialize_network(&t.final_network))?;
            }
            let mut text = String::new();
            for s in &t.steps {
                text.push_str(&format!(
                    "round {:>3}  agent {:>2} {:?}  removes {:?} adds {:?}  agent cost {}  social cost {}\n",
                    s.round, s.deviation.agent, s.deviation.kind, s.deviation.removed, s.deviation.added, s.agent_cost, s.social_cost
                ));
            }
            text.push_str(&format!(
                "{} after {} rounds, {} moves\n{}",
                if t.converged { "converged" } else { "no convergence" },
                t.rounds,
                t.steps.len(),
                serialize_network(&t.final_network)
            ));
            let mut json = to_value(&t);
            json["final_network"] = to_value(&t.final_network);
            json["final_social_cost"] = to_value(&game.social_cost(&t.final_network));
            Ok(Report { command: "dynamics", ok: true, json, text })
        }
        Command::Enumerate { n, alpha, space, mode, connected_only, workers } => {
            let spec = EnumerationSpec::new(*n, (*space).into())
                .with_mode((*mode).into())
                .with_workers(workers.workers as usize)
                .connected_only(*connected_only);
            let mut reports = Vec::new();
            let mut text = String::new();
            for a in alpha {
                let r = find_equilibria(&spec, *a)?;
                text.push_str(&format!(
                    "n = {}, alpha = {a}, {:?}, {:?}: {} profiles, {} equilibria, {} non-trees\n",
                    r.n,
                    r.space,
                    r.mode,
                    r.profiles_examined,
                    r.equilibria.len(),
                    r.non_trees
                ));
                for e in &r.equilibria {
                    text.push_str(&format!(
                        "  {} social cost {:>10}  {:?}\n",
                        if e.is_tree { "tree    " } else { "non-tree" },
                        e.social_cost.to_string(),
                        e.network.bought_edges()
                    ));
                }
                reports.push(r);
            }
            Ok(Report { command: "enumerate", ok: true, json: to_value(&reports), text })
        }
        Command::VerifyLemma { lemma, n, alpha, space, mode, oracle_samples, seed, repro_dir, workers } => {
            let options = LemmaOptions {
                alphas: alpha.clone(),
                space: space.map(Into::into),
                mode: mode.map(Into::into),
                workers: workers.workers as usize,
                oracle_samples: *oracle_samples,
                seed: *seed,
            };
            let report = verify_lemma(*lemma, *n, &options)?;
            if let Some(dir) = repro_dir {
                write_repros(dir, &report)?;
            }
            Ok(Report { command: "verify-lemma", ok: report.passed(), json: to_value(&report), text: report.to_text() })
        }
        Command::Search { n, alpha, budget, seed, mode, workers } => {
            let r = counterexample_search(*n, *alpha, *budget, *seed, (*mode).into(), workers.workers as usize)?;
            let above = tree_threshold(*n).is_ok_and(|t| alpha.value() > t);
            let refuted = above && r.candidates.iter().any(|c| c.exact_stable == Some(true));
            let mut text = format!(
                "n = {}, alpha = {}, {:?}, seed {}: {} of {} starts converged, {} to trees, {} non-tree candidates\n",
                r.n,
                r.alpha,
                r.mode,
                r.seed,
                r.converged,
                r.budget,
                r.converged_trees,
                r.candidates.len()
            );
            for c in &r.candidates {
                let exact = match c.exact_stable {
                    Some(true) => "exactly stable",
                    Some(false) => "not exactly stable",
                    None => "exact check skipped",
                };
                text.push_str(&format!(
                    "  hits {:>4}  social cost {:>10}  {exact}  {:?}\n",
                    c.hits,
                    c.social_cost.to_string(),
                    c.network.bought_edges()
                ));
            }
            Ok(Report { command: "search", ok: !refuted, json: to_value(&r), text })
        }
        Command::Bounds { n, alpha } => {
            let table = BoundsTable::new(*n, *alpha);
            Ok(Report { command: "bounds", ok: true, json: to_value(&table), text: table.to_text() })
        }
    }
}

fn write_repros(dir: &Path, report: &crate::harness::LemmaReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    for run in &report.runs {
        for (i, v) in run.violations.iter().enumerate() {
            let alpha = format_rational(&run.alpha.value()).replace('/', "_");
            let name = format!("{}_n{}_alpha{}_{}.net", report.lemma, report.n, alpha, i);
            let body = format!("# {}\n{}", v.messages.join("; "), serialize_network(&v.network));
            fs::write(dir.join(name), body)?;
        }
    }
    Ok(())
}

fn analyze(net: &OwnedNetwork, alpha: Option<Alpha>) -> Result<Report> {
    let dm = DistanceMatrix::new(net);
    let distcosts: Vec<_> = (0..net.n()).map(|u| dm.distcost(u)).collect();
    let bcc = biconnected_components(net);
    let cycles = min_cycles(net);
    let pairs = critical_pairs(net);
    let cent = if net.is_tree() { Some(centroids(net)?) } else { None };
    let mut json = json!({
        "n": net.n(),
        "network": net,
        "connected": net.is_connected(),
        "tree": net.is_tree(),
        "distcosts": distcosts,
        "biconnected_components": bcc,
        "min_cycles": cycles,
        "triangle": find_triangle(net),
        "chordless_four_cycle": find_chordless_four_cycle(net),
        "critical_pairs": pairs,
        "centroids": cent,
    });
    let mut text = format!(
        "n = {}, {} edges, {}{}\n",
        net.n(),
        net.edge_count(),
        if net.is_connected() { "connected" } else { "disconnected" },
        if net.is_tree() { ", tree" } else { "" }
    );
    text.push_str(&format!("distcosts {}\n", distcosts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")));
    for h in &bcc {
        text.push_str(&format!("component {:?}{}\n", h.vertices, if h.is_cycle() { " (cycle)" } else { "" }));
    }
    for c in &cycles {
        text.push_str(&format!(
            "min cycle {:?}{}\n",
            c.vertices,
            if c.is_directed { " directed" } else { "" }
        ));
    }
    for p in &pairs {
        text.push_str(&format!(
            "critical pair <{}, {}> v1 {} v2 {} u' {}{}\n",
            p.v,
            p.u,
            p.v1,
            p.v2,
            p.u_prime,
            if p.strong { " strong" } else { "" }
        ));
    }
    if let Some(c) = &cent {
        text.push_str(&format!("centroids {:?}\n", c.centroids));
    }
    if let Some(a) = alpha {
        let game = Game::new(a);
        let costs: Vec<_> = (0..net.n()).map(|u| game.agent_cost(net, u)).collect();
        let social = game.social_cost(net);
        let stable = if net.n() <= DEFAULT_EXACT_CAP { Some(game.is_stable(net, Mode::Exact)?) } else { None };
        json["alpha"] = to_value(&a);
        json["agent_costs"] = to_value(&costs);
        json["social_cost"] = to_value(&social);
        json["exact_stable"] = to_value(&stable);
        text.push_str(&format!("alpha {a}: social cost {social}"));
        match stable {
            Some(s) => text.push_str(if s { ", stable\n" } else { ", not stable\n" }),
            None => text.push('\n'),
        }
    }
    Ok(Report { command: "analyze", ok: true, json, text })
}
