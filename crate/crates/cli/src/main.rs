//! `subcount`: command-line driver for the verification toolkit.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;
use subcount::exact::{parse_rational, Level};
use subcount::groups::{
    check_pair, parse_corpus, parse_group_file, parse_permutation, run_corpus, PairOptions, SubgroupSet,
    DEFAULT_CORPUS, DEFAULT_NODE_CAP, DEFAULT_ORDER_CAP,
};
use subcount::qfunc::{alpha_constant, cap_c, gauss_binom, small_c, sub_ceiling, sub_ceiling_exact};
use subcount::verify::{
    alpha_optimum, check_lemma0, check_table1, finite_rows, published_rows, sweep_prop34, sweep_target, ExceptionKind,
    SweepTarget, Verdict, VerificationReport,
};
use subcount::Error;

use output::{render, Format, Outcome};

/// Exit status for malformed flags, arguments or input files.
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "subcount", version, about = "Certified checks of subgroup-counting bounds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Precision cap: the highest refinement level a decision may reach.
    #[arg(long, global = true, env = "SUBCOUNT_PRECISION", default_value_t = Level::DEFAULT_CAP.0,
          value_parser = clap::value_parser!(u32).range(1..=24))]
    precision: u32,
    /// Worker threads for sweeps and corpus runs.
    #[arg(long, global = true, env = "SUBCOUNT_WORKERS", default_value_t = default_workers(),
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    workers: u64,
    #[command(subcommand)]
    command: Command,
}

fn default_workers() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gaussian binomial coefficient [m choose r]_p.
    Qbinom { m: u32, r: u32, p: u64 },
    /// The subgroup ceiling S(p, a).
    Sbound { p: u64, a: u32 },
    /// The product constant C(p) and c(p) = 2.129 C(p).
    Capc { p: u64 },
    /// Recompute the exception table and compare with the published rows.
    Table1,
    /// Certify the proposition on every multiple of p^c up to --max.
    ///
    /// Without arguments, sweeps every finite row of the exception table.
    Sweep {
        p: Option<u64>,
        c: Option<u32>,
        /// Largest value swept; defaults to the row's published threshold.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Check S(p, c) <= 7.3722 p^(c log2(rt) / 4) at one multiple rt of p^c.
    Lemma0 { p: u64, c: u32, rt: u64 },
    /// Search the exponent constant over all admissible configurations.
    Alpha {
        /// Threshold to certify against (decimal or fraction).
        #[arg(long)]
        threshold: Option<String>,
        /// Print every configuration with its enclosure.
        #[arg(long)]
        list_all: bool,
    },
    /// Run every check on a group file.
    VerifyGroup {
        file: PathBuf,
        /// Generators of T (cycles or element indices, `;`-separated),
        /// replacing the file's subgroup section.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Run every check over a corpus file (the built-in corpus by default).
    Corpus {
        file: Option<PathBuf>,
        /// Skip block-system counting above this coset-action degree.
        #[arg(long)]
        block_degree_limit: Option<usize>,
        /// Include every per-pair report in json and csv output.
        #[arg(long)]
        full: bool,
    },
    /// Observed exponents log|sub(G,T)| / log[G:T] - lambda([G:T]) over a corpus.
    ConjectureProbe { file: Option<PathBuf> },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OrderCapExceeded { .. } | Error::NodeCapExceeded { .. } => Failure::Run(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn single(statement_id: &str, inputs: serde_json::Value, witness: serde_json::Value) -> VerificationReport {
    VerificationReport::new(statement_id, inputs)
        .with_witness(witness)
        .finish(Verdict::Verified, Level::ZERO)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_corpus(file: &Option<PathBuf>) -> Result<Vec<subcount::groups::CorpusGroup>, Failure> {
    let text = match file {
        Some(path) => read(path)?,
        None => DEFAULT_CORPUS.to_string(),
    };
    Ok(parse_corpus(&text)?.groups(DEFAULT_ORDER_CAP)?)
}

fn parse_subgroup(spec: &str, g: &subcount::groups::FiniteGroup) -> Result<SubgroupSet, Failure> {
    let mut seeds = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if part.starts_with('(') {
            let degree = g
                .permutations()
                .ok_or_else(|| Failure::Usage("cycle notation needs a permutation group".into()))?
                .degree;
            let perm = parse_permutation(part, degree)?;
            let x = g
                .find_permutation(&perm)
                .ok_or_else(|| Failure::Usage(format!("{part} is not in the group")))?;
            seeds.push(x);
        } else {
            for w in part.split_whitespace() {
                seeds.push(w.parse().map_err(|_| Failure::Usage(format!("bad element index {w:?}")))?);
            }
        }
    }
    Ok(SubgroupSet::closure(g, &seeds)?)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let level = Level(cli.precision);
    let workers = cli.workers as usize;
    Ok(match &cli.command {
        Command::Qbinom { m, r, p } => {
            if r > m {
                return Err(Failure::Usage(format!("need r <= m, got r = {r}, m = {m}")));
            }
            let v = gauss_binom(*m, *r, *p)?;
            let report = single("qbinom", json!({ "m": m, "r": r, "p": p }), json!({ "value": v.to_string() }));
            Outcome::reports("qbinom", vec![report]).with_human(vec![v.to_string()])
        }
        Command::Sbound { p, a } => {
            let s = sub_ceiling(*p, *a, level)?;
            let mut w = json!({ "value": s.value });
            if let Some(exact) = sub_ceiling_exact(*p, *a) {
                w["exact"] = json!(exact.to_string());
            }
            let line = match sub_ceiling_exact(*p, *a) {
                Some(exact) => format!("S({p}, {a}) = {exact}"),
                None => format!("S({p}, {a}) in {}", s.value),
            };
            Outcome::reports("sbound", vec![single("sbound", json!({ "p": p, "a": a }), w)]).with_human(vec![line])
        }
        Command::Capc { p } => {
            let big = cap_c(*p, level)?;
            let small = small_c(*p, level)?;
            let lines = vec![format!("C({p}) in {big}"), format!("c({p}) in {small}")];
            let report = single("capc", json!({ "p": p }), json!({ "C": big, "c": small }));
            Outcome::reports("capc", vec![report]).with_human(lines)
        }
        Command::Table1 => Outcome::reports("table1", check_table1(level)?),
        Command::Sweep { p, c, max } => {
            let reports = match (p, c) {
                (None, None) => {
                    if max.is_some() {
                        return Err(Failure::Usage("--max needs p and c".into()));
                    }
                    finite_rows()
                        .iter()
                        .map(|t| sweep_target(t, workers, level))
                        .collect::<Result<Vec<_>, _>>()?
                }
                (Some(p), Some(c)) => vec![sweep_one(*p, *c, *max, workers, level)?],
                _ => return Err(Failure::Usage("give both p and c, or neither".into())),
            };
            Outcome::reports("sweep", reports)
        }
        Command::Lemma0 { p, c, rt } => Outcome::reports("lemma0", vec![check_lemma0(*p, *c, *rt, level)?]),
        Command::Alpha { threshold, list_all } => {
            let limit: BigRational = match threshold {
                Some(t) => parse_rational(t)?,
                None => alpha_constant(),
            };
            let search = alpha_optimum(&limit, level)?;
            let mut reports = vec![search.report.clone()];
            let mut lines = Vec::new();
            let best = search.best();
            lines.push(format!("maximizer {} objective {}", best.label(), best.objective));
            lines.push(format!("{} against threshold {}", search.report.verdict.label(), limit));
            if *list_all {
                lines.push(String::new());
                for c in &search.configs {
                    lines.push(format!("{:<24} {}", c.label(), c.objective));
                }
                let all = search
                    .configs
                    .iter()
                    .map(|c| json!({ "config": c.label(), "objective": c.objective }));
                reports.push(
                    VerificationReport::new("alpha.configurations", json!({ "count": search.configs.len() }))
                        .with_witnesses(all)
                        .finish(Verdict::Verified, search.report.precision_used),
                );
            }
            Outcome::reports("alpha", reports).with_human(lines)
        }
        Command::VerifyGroup { file, subgroup, node_cap, order_cap } => {
            let text = read(file)?;
            let input = parse_group_file(&text, *order_cap)?;
            let t = match subgroup {
                Some(spec) => parse_subgroup(spec, &input.group)?,
                None => input.subgroup,
            };
            let opts = PairOptions {
                max_level: level,
                node_cap: *node_cap,
                ..PairOptions::default()
            };
            let label = file.display().to_string();
            let outcome = check_pair(&input.group, &t, &label, opts)?;
            let mut lines = vec![format!(
                "|G| = {}, |T| = {}, [G:T] = {}, |sub(G,T)| = {}",
                input.group.order(),
                t.order(),
                outcome.index,
                outcome.subgroups
            )];
            let per: Vec<String> = outcome.per_index.iter().map(|(i, n)| format!("{i}:{n}")).collect();
            lines.push(format!("overgroups by index: {}", per.join(" ")));
            let mut body = Vec::new();
            output::render(
                &Outcome::reports("verify-group", outcome.reports.clone()),
                Format::Human,
                &mut body,
            )
            .map_err(|e| Failure::Run(e.to_string()))?;
            lines.extend(String::from_utf8_lossy(&body).lines().map(str::to_string));
            Outcome::reports("verify-group", outcome.reports).with_human(lines)
        }
        Command::Corpus { file, block_degree_limit, full } => {
            let groups = load_corpus(file)?;
            let opts = PairOptions {
                max_level: level,
                block_degree_limit: block_degree_limit.unwrap_or(usize::MAX),
                ..PairOptions::default()
            };
            let run = run_corpus(&groups, opts, workers)?;
            let mut lines = vec![format!("{} groups, {} pairs", groups.len(), run.outcomes.len())];
            lines.push(format!("{:<14} {:>8} {:>12} {:>6}  verdict", "check", "reports", "min margin", "tight"));
            if let Some(rows) = run.summary.witnesses[0]["checks"].as_array() {
                for row in rows {
                    let margin = row["min_margin"].as_f64().map_or("-".to_string(), |m| format!("{m:.4}"));
                    lines.push(format!(
                        "{:<14} {:>8} {:>12} {:>6}  {}",
                        row["statement_id"].as_str().unwrap_or(""),
                        row["reports"].to_string(),
                        margin,
                        row["tight"].to_string(),
                        row["verdict"].as_str().unwrap_or(""),
                    ));
                }
            }
            for o in run.outcomes.iter().filter(|o| o.verdict() != Verdict::Verified) {
                lines.push(format!("{} {}", o.verdict().label(), o.label));
            }
            lines.push(format!("probe: {}", output::compact(&run.probe.witnesses[0])));
            lines.push(format!("overall: {}", run.summary.verdict.label()));
            let mut reports = vec![run.summary.clone(), run.probe.clone()];
            if *full {
                reports.extend(run.reports().cloned());
            }
            Outcome::reports("corpus", reports).with_human(lines)
        }
        Command::ConjectureProbe { file } => {
            let groups = load_corpus(file)?;
            let opts = PairOptions {
                max_level: level,
                block_degree_limit: 0,
                ..PairOptions::default()
            };
            let run = run_corpus(&groups, opts, workers)?;
            Outcome::reports("conjecture-probe", vec![run.probe])
        }
    })
}

fn sweep_one(p: u64, c: u32, max: Option<u64>, workers: usize, level: Level) -> Result<VerificationReport, Failure> {
    if let Some(rt_max) = max {
        return Ok(sweep_prop34(p, c, rt_max, workers, level)?);
    }
    let row = published_rows()
        .into_iter()
        .find(|r| r.covers(p, c))
        .ok_or_else(|| Failure::Usage(format!("no published row for p = {p}, c = {c}; pass --max")))?;
    let target = match row.kind {
        ExceptionKind::Threshold { max_rt } => SweepTarget::Multiples { p, c, rt_max: max_rt },
        ExceptionKind::FiniteSet { values } => SweepTarget::Values { p, c_min: c, values },
        ExceptionKind::Any => {
            return Err(Failure::Usage(format!("row p = {p}, c = {c} is unbounded; pass --max")));
        }
    };
    Ok(sweep_target(&target, workers, level)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            if let Err(e) = render(&outcome, cli.format, &mut stdout.lock()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("subcount: {e}");
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("subcount: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("subcount: {msg}");
            ExitCode::from(1)
        }
    }
}
