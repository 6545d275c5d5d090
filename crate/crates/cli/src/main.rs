use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use topomodal::algebra::{table, table_meta_check, BaseRelation, Kind};
use topomodal::geometry::rel_intervals;
use topomodal::logic::{check_named, parse, valid_in, LogicError};
use topomodal::reductions::{
    domino_ready_violations, domready_witness, loeb, model_from_tiling, parse_s53, phi_d, phi_d_fin,
    phi_d_recurring, s53_reduction, tile_triangle, tm_to_domino, triangle_size, DominoSystem,
    ReductionError, TuringMachine,
};
use topomodal::solver::{
    ec_k, realize, satisfiable_rs, ConstraintNetwork, NetworkJson, Realized, Satisfiability,
    SolverError,
};
use topomodal::structures::{validate, ModelJson, RegionModel, StructureError, StructureJson};
use topomodal::suite::{
    run_all_concurrent, summary, table_fidelity, Level, SuiteConfig, DEFAULT_SEED,
};
use topomodal::translate::{
    fo2_to_modal, modal_to_fl4, modal_to_fo, parse_fo2, succinctness_formula, TranslateError,
};

#[derive(Debug, Parser)]
#[command(name = "topomodal", version, about = "Region connection calculi and their modal logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a constraint network over general region structures.
    Solve {
        /// Network JSON.
        file: PathBuf,
        /// Also print the atomic refinement.
        #[arg(long)]
        refine: bool,
    },
    /// Realize a satisfiable network by interval unions of the real line.
    Realize {
        /// Network JSON.
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a formula in a model.
    Check(CheckArgs),
    /// Translate between modal, two-variable and interval-endpoint languages.
    Translate(TranslateArgs),
    /// Produce reduction formulas, networks, witnesses and models.
    Generate(GenerateArgs),
    /// Check a structure or the embedded composition tables.
    Validate(ValidateArgs),
    /// Run the acceptance criteria.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
        seed: u64,
        #[arg(long, default_value_t = Level::Full)]
        level: Level,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("formula_src").required(true).args(["formula", "formula_file"])))]
#[command(group(ArgGroup::new("mode").required(true).args(["at", "valid"])))]
struct CheckArgs {
    /// Model JSON: a structure and a valuation.
    model: PathBuf,
    /// Formula text in the alphabet of the model.
    formula: Option<String>,
    #[arg(long)]
    formula_file: Option<PathBuf>,
    /// Region name to evaluate at.
    #[arg(long)]
    at: Option<String>,
    /// Whether the formula holds at every region.
    #[arg(long)]
    valid: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("direction").required(true).args(["fo2_to_modal", "modal_to_fo", "modal_to_fl4"])))]
#[command(group(ArgGroup::new("input").required(true).args(["text", "phi_n"])))]
struct TranslateArgs {
    /// Two-variable s-expression to a modal formula.
    #[arg(long)]
    fo2_to_modal: bool,
    /// Modal formula to a two-variable s-expression.
    #[arg(long)]
    modal_to_fo: bool,
    /// Modal formula to an endpoint sentence over boxes of this dimension.
    #[arg(long, value_name = "N")]
    modal_to_fl4: Option<usize>,
    /// Input formula.
    text: Option<String>,
    /// Use the n-th succinctness formula as two-variable input.
    #[arg(long, value_name = "N")]
    phi_n: Option<usize>,
    #[arg(long, default_value = "rcc8")]
    alphabet: Kind,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("artifact").required(true).args([
    "phi_d", "phi_d_fin", "phi_d_recurring", "s53", "domready", "ec_k", "loeb", "tm_to_domino",
    "tiling_model",
])))]
struct GenerateArgs {
    /// Reduction formula of a domino system with a start and a final tile.
    #[arg(long, value_name = "FILE")]
    phi_d: Option<PathBuf>,
    /// Reduction formula for finite tilings.
    #[arg(long, value_name = "FILE")]
    phi_d_fin: Option<PathBuf>,
    /// Reduction formula for recurring tilings.
    #[arg(long, value_name = "FILE")]
    phi_d_recurring: Option<PathBuf>,
    /// RCC5 formula equisatisfiable with an S5 cube formula.
    #[arg(long, value_name = "TEXT")]
    s53: Option<String>,
    /// Interval witness with this many positions.
    #[arg(long, value_name = "N")]
    domready: Option<usize>,
    /// Network of k pairwise externally connected regions.
    #[arg(long, value_name = "K")]
    ec_k: Option<usize>,
    /// The Löb formula.
    #[arg(long)]
    loeb: bool,
    /// Domino system simulating a Turing machine.
    #[arg(long, value_name = "FILE")]
    tm_to_domino: Option<PathBuf>,
    /// Model of the smallest triangle tiling of a domino system; region
    /// `r1` stands for the origin.
    #[arg(long, value_name = "FILE")]
    tiling_model: Option<PathBuf>,
    /// Largest triangle side tried by --tiling-model.
    #[arg(long, default_value_t = 6)]
    max_k: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["structure", "tables"])))]
struct ValidateArgs {
    /// Structure JSON.
    #[arg(long, value_name = "FILE")]
    structure: Option<PathBuf>,
    /// Audit the composition tables.
    #[arg(long)]
    tables: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("malformed JSON in {}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Positive or negative answer, mapped to exit codes 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Prints a line to stdout. A closed stdout is not an error worth failing on.
fn say(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

/// Writes `text` and a newline to `output`, or to stdout.
fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            say(text);
            Ok(())
        }
    }
}

fn load_network(path: &Path) -> Result<ConstraintNetwork, CliError> {
    let j: NetworkJson = read_json(path)?;
    Ok(ConstraintNetwork::from_json(&j)?)
}

fn load_domino(path: &Path) -> Result<DominoSystem, CliError> {
    Ok(DominoSystem::from_json(&read(path)?)?)
}

fn solve(file: &Path, refine: bool) -> Result<Verdict, CliError> {
    let net = load_network(file)?;
    match satisfiable_rs(&net) {
        Satisfiability::Unsat => {
            say("UNSAT");
            Ok(Verdict::No)
        }
        Satisfiability::Sat(sol) => {
            say("SAT");
            if refine {
                let names = sol.structure.regions();
                let region_of: serde_json::Map<String, Value> = net
                    .vars()
                    .iter()
                    .zip(&sol.region_of)
                    .map(|(v, &r)| (v.clone(), Value::String(names[r].clone())))
                    .collect();
                let out = json!({
                    "structure": sol.structure.to_json(),
                    "region_of": region_of,
                });
                say(&pretty(&out));
            }
            Ok(Verdict::Yes)
        }
    }
}

fn realize_cmd(file: &Path, output: Option<&Path>) -> Result<Verdict, CliError> {
    let net = load_network(file)?;
    let r = match realize(&net)? {
        Realized::Unsat => {
            say("UNSAT");
            return Ok(Verdict::No);
        }
        Realized::Model(r) => r,
    };
    // Recomputed from the intervals, independently of the refinement.
    let regions = r.by_variable();
    let vars = net.vars();
    let mut failures = Vec::new();
    for (i, j, allowed) in net.constraints() {
        let got = rel_intervals(regions[i], regions[j]);
        if !allowed.contains(got) {
            failures.push(format!("{} {got} {} not in {allowed}", vars[i], vars[j]));
        }
    }
    let verification = if failures.is_empty() {
        Value::String("ok".into())
    } else {
        json!(failures)
    };
    let out = json!({
        "realization": r.to_json(&net),
        "verification": verification,
    });
    emit(output, &pretty(&out))?;
    Ok(failures.is_empty().into())
}

fn check_cmd(a: &CheckArgs) -> Result<Verdict, CliError> {
    let j: ModelJson = read_json(&a.model)?;
    let m = RegionModel::from_json(&j)?;
    let text = match (&a.formula, &a.formula_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => unreachable!("clap requires a formula source"),
    };
    let f = parse(&text, m.structure.kind())?;
    let holds = match &a.at {
        Some(region) => check_named(&m.structure, &m.valuation, region, &f)?,
        None => valid_in(&m.structure, &m.valuation, &f)?,
    };
    say(&holds.to_string());
    Ok(holds.into())
}

fn translate_cmd(a: &TranslateArgs) -> Result<Verdict, CliError> {
    let kind = a.alphabet;
    let text = if a.fo2_to_modal {
        let fo = match (a.phi_n, &a.text) {
            (Some(n), _) => succinctness_formula(n),
            (None, Some(t)) => parse_fo2(t, kind)?,
            (None, None) => unreachable!("clap requires an input"),
        };
        fo2_to_modal(&fo, kind)?.to_string()
    } else {
        let Some(t) = &a.text else {
            return Err(CliError::Usage(
                "--phi-n gives a two-variable formula and needs --fo2-to-modal".into(),
            ));
        };
        let f = parse(t, kind)?;
        match a.modal_to_fl4 {
            Some(dims) => modal_to_fl4(&f, dims)?.to_sexp(),
            None => modal_to_fo(&f, kind)?.to_string(),
        }
    };
    emit(a.output.as_deref(), &text)?;
    Ok(Verdict::Yes)
}

fn generate_cmd(a: &GenerateArgs) -> Result<Verdict, CliError> {
    let out = a.output.as_deref();
    if let Some(path) = &a.phi_d {
        emit(out, &phi_d(&load_domino(path)?).to_string())?;
    } else if let Some(path) = &a.phi_d_fin {
        emit(out, &phi_d_fin(&load_domino(path)?)?.to_string())?;
    } else if let Some(path) = &a.phi_d_recurring {
        emit(out, &phi_d_recurring(&load_domino(path)?)?.to_string())?;
    } else if let Some(text) = &a.s53 {
        emit(out, &s53_reduction(&parse_s53(text)?)?.to_string())?;
    } else if let Some(n) = a.domready {
        let w = domready_witness(n)?;
        let pieces = |regions: &[topomodal::geometry::IntervalUnion]| -> Vec<Value> {
            regions
                .iter()
                .map(|r| {
                    r.pieces()
                        .iter()
                        .map(|(lo, hi)| json!([lo.to_string(), hi.to_string()]))
                        .collect()
                })
                .collect()
        };
        let violations = domino_ready_violations(&w)?;
        let ok = violations.is_empty();
        let doc = json!({ "x": pieces(&w.x), "y": pieces(&w.y), "violations": violations });
        emit(out, &pretty(&doc))?;
        return Ok(ok.into());
    } else if let Some(k) = a.ec_k {
        emit(out, &pretty(&ec_k(k).to_json()))?;
    } else if a.loeb {
        emit(out, &loeb().to_string())?;
    } else if let Some(path) = &a.tm_to_domino {
        let m = TuringMachine::from_json(&read(path)?)?;
        emit(out, &tm_to_domino(&m)?.to_json())?;
    } else if let Some(path) = &a.tiling_model {
        let d = load_domino(path)?;
        for k in 1..=a.max_k {
            if let Some(t) = tile_triangle(&d, k)? {
                let m = model_from_tiling(&t, triangle_size(k))?;
                emit(out, &pretty(&m.model.to_json()))?;
                return Ok(Verdict::Yes);
            }
        }
        eprintln!("no triangle tiling with side at most {}", a.max_k);
        return Ok(Verdict::No);
    }
    Ok(Verdict::Yes)
}

fn validate_cmd(a: &ValidateArgs) -> Result<Verdict, CliError> {
    if let Some(path) = &a.structure {
        let j: StructureJson = read_json(path)?;
        let matrix = j
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<BaseRelation>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        if j.regions.len() != matrix.len() {
            return Err(CliError::Usage(format!(
                "{} region names for a matrix of {} rows",
                j.regions.len(),
                matrix.len()
            )));
        }
        let violations = validate(j.kind, &matrix);
        if violations.is_empty() {
            say("ok");
        }
        for v in &violations {
            say(&v.to_string());
        }
        return Ok(violations.is_empty().into());
    }
    let mut clean = true;
    for kind in [Kind::Rcc8, Kind::Rcc5] {
        let v = table_meta_check(kind);
        say(&format!("{kind}\t{} violations", v.len()));
        for x in &v {
            say(&format!("{kind}\t{x}"));
        }
        clean &= v.is_empty();
    }
    let fidelity = table_fidelity(table(Kind::Rcc8), table(Kind::Rcc5));
    say(&fidelity.tsv());
    Ok((clean && fidelity.passed).into())
}

fn suite_cmd(seed: u64, level: Level) -> Result<Verdict, CliError> {
    let cfg = SuiteConfig { seed, level };
    let reports = run_all_concurrent(&cfg);
    for r in &reports {
        say(&r.tsv());
    }
    say(&summary(&reports));
    Ok(reports.iter().all(|r| r.passed).into())
}

fn run(cli: &Cli) -> Result<Verdict, CliError> {
    match &cli.command {
        Command::Solve { file, refine } => solve(file, *refine),
        Command::Realize { file, output } => realize_cmd(file, output.as_deref()),
        Command::Check(a) => check_cmd(a),
        Command::Translate(a) => translate_cmd(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Validate(a) => validate_cmd(a),
        Command::Suite { seed, level } => suite_cmd(*seed, *level),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
