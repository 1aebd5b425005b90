use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use contractdom::claims;
use contractdom::generators::{
    exhaustive_connected, exhaustive_connected_gated, named, Family, GeneratorKind, GeneratorSpec,
    RNG_ALGORITHM,
};
use contractdom::graph::Graph;
use contractdom::io::{format_edge_list, graph_digest, parse_edge_list};
use contractdom::oracle;
use contractdom::polyalgo::{self, PolyError};
use contractdom::report::{CrosscheckSummary, Disagreement, RunReport};
use contractdom::structure::{find_induced, is_free, PatternSpec};
use contractdom::domination;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "contractdom", version, about = "Decide whether one edge contraction reduces the domination number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the domination number and one minimum dominating set.
    Gamma(GammaArgs),
    /// Decide the contraction question with one method.
    Decide(DecideArgs),
    /// Run several deciders over a generated corpus and compare answers.
    Crosscheck(CorpusArgs),
    /// Evaluate the structural claim suite over a generated corpus.
    CheckClaims(CorpusArgs),
    /// Emit a corpus as a JSONL manifest.
    Generate(CorpusArgs),
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Characterization,
    Structural,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "oracle")]
    method: MethodArg,
    /// Class parameter for the structural method (G must be P3+kP2-free).
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Skip the freeness verification before the structural method.
    #[arg(long)]
    skip_free_check: bool,
    /// Recover a concrete witness edge for structural yes answers.
    #[arg(long)]
    verify_witness: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct CorpusArgs {
    #[arg(long, value_enum, default_value = "exhaustive")]
    gen: GenArg,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Lift the n = 7 gate on exhaustive enumeration.
    #[arg(long)]
    allow_n7: bool,
    /// Comma-separated deciders to run (crosscheck only).
    #[arg(long, default_value = "oracle,characterization")]
    methods: String,
    /// Directory for disagreement fixtures.
    #[arg(long, default_value = ".")]
    dump_dir: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GenArg {
    Named,
    Exhaustive,
    RandomGnp,
    RandomFree,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Path,
    Cycle,
    Complete,
    Star,
    CompleteBipartite,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Path => Family::Path,
            FamilyArg::Cycle => Family::Cycle,
            FamilyArg::Complete => Family::Complete,
            FamilyArg::Star => Family::Star,
            FamilyArg::CompleteBipartite => Family::CompleteBipartite,
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("CONTRACTDOM_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.command {
        Command::Gamma(args) => cmd_gamma(&args),
        Command::Decide(args) => cmd_decide(&args),
        Command::Crosscheck(args) => cmd_crosscheck(&args),
        Command::CheckClaims(args) => cmd_check_claims(&args),
        Command::Generate(args) => cmd_generate(&args),
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    ExitCode::from(code)
}

fn fail(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_ERROR
}

fn load_connected(path: &PathBuf) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let g = parse_edge_list(&text).map_err(|e| e.to_string())?;
    if !g.is_connected() {
        return Err("input graph is disconnected".to_string());
    }
    Ok(g)
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.render_text());
    }
}

fn cmd_gamma(args: &GammaArgs) -> u8 {
    let g = match load_connected(&args.input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let result = match domination::gamma(&g, None) {
        Ok(r) => r.expect("uncapped gamma always resolves"),
        Err(e) => return fail(e),
    };
    let mut report = RunReport::new("gamma");
    report.input_digest = Some(graph_digest(&g));
    report.gamma = Some(result.gamma);
    report.witness_set = Some(result.witness.to_vec());
    report.exit_status = EXIT_YES as i32;
    emit(&report, args.json);
    EXIT_YES
}

fn cmd_decide(args: &DecideArgs) -> u8 {
    let g = match load_connected(&args.input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let decision = match args.method {
        MethodArg::Oracle => oracle::decide_bruteforce(&g).map_err(|e| e.to_string()),
        MethodArg::Characterization => {
            oracle::decide_characterization(&g).map_err(|e| e.to_string())
        }
        MethodArg::Structural => decide_structural_cli(&g, args),
    };
    let decision = match decision {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let decision = if args.verify_witness {
        match polyalgo::recover_witness(&g, decision) {
            Ok(d) => d,
            Err(e) => return fail(e),
        }
    } else {
        decision
    };
    let exit = if decision.answer { EXIT_YES } else { EXIT_NO };
    let mut report = RunReport::new("decide").with_decision(&decision);
    report.input_digest = Some(graph_digest(&g));
    report.exit_status = exit as i32;
    emit(&report, args.json);
    exit
}

fn decide_structural_cli(g: &Graph, args: &DecideArgs) -> Result<oracle::Decision, String> {
    if args.skip_free_check {
        // Trust the caller on freeness; still pick the largest applicable j.
        if is_free(g, PatternSpec::p3_plus(0)) {
            return polyalgo::decide_driver(g, args.k).map_err(|e| e.to_string());
        }
        let j = (1..=args.k)
            .rev()
            .find(|&j| find_induced(g, PatternSpec::p3_plus(j - 1)).is_some())
            .ok_or("no applicable parameter")?;
        return polyalgo::decide_structural(g, j).map_err(|e| e.to_string());
    }
    polyalgo::decide_driver(g, args.k).map_err(|e| match e {
        PolyError::NotFree { pattern, witness } => format!(
            "input is not P3+{}P2-free: induced pattern on vertices {:?}",
            pattern.p2_count,
            witness.to_vec()
        ),
        other => other.to_string(),
    })
}

fn build_spec(args: &CorpusArgs) -> GeneratorSpec {
    let kind = match args.gen {
        GenArg::Named => GeneratorKind::Named,
        GenArg::Exhaustive => GeneratorKind::Exhaustive,
        GenArg::RandomGnp => GeneratorKind::RandomGnp,
        GenArg::RandomFree => GeneratorKind::RandomFree,
    };
    GeneratorSpec {
        kind,
        family: args.family.map(Family::from),
        n: args.n,
        p: Some(args.p),
        k: Some(args.k),
        seed: Some(args.seed),
        count: Some(args.samples),
        rng: RNG_ALGORITHM.to_string(),
    }
}

fn generate_corpus(args: &CorpusArgs) -> Result<Vec<Graph>, String> {
    match args.gen {
        GenArg::Named => {
            let family = args.family.map(Family::from).unwrap_or(Family::Path);
            Ok(vec![named(family, args.n).map_err(|e| e.to_string())?])
        }
        GenArg::Exhaustive => {
            let stream = if args.allow_n7 {
                exhaustive_connected_gated(args.n)
            } else {
                exhaustive_connected(args.n)
            };
            Ok(stream.map_err(|e| e.to_string())?.collect())
        }
        _ => build_spec(args).generate().map_err(|e| e.to_string()),
    }
}

fn parse_methods(s: &str) -> Result<Vec<MethodArg>, String> {
    s.split(',')
        .map(|m| match m.trim() {
            "oracle" => Ok(MethodArg::Oracle),
            "characterization" => Ok(MethodArg::Characterization),
            "structural" => Ok(MethodArg::Structural),
            other => Err(format!("unknown method {other:?}")),
        })
        .collect()
}

fn cmd_crosscheck(args: &CorpusArgs) -> u8 {
    use rayon::prelude::*;

    let methods = match parse_methods(&args.methods) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let corpus = match generate_corpus(args) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    // Per-instance answers, computed in parallel, aggregated in order.
    let results: Vec<Vec<(String, Result<bool, String>)>> = corpus
        .par_iter()
        .map(|g| {
            methods
                .iter()
                .map(|m| {
                    let answer = match m {
                        MethodArg::Oracle => {
                            oracle::decide_bruteforce(g).map(|d| d.answer).map_err(|e| e.to_string())
                        }
                        MethodArg::Characterization => oracle::decide_characterization(g)
                            .map(|d| d.answer)
                            .map_err(|e| e.to_string()),
                        MethodArg::Structural => polyalgo::decide_driver(g, args.k)
                            .map(|d| d.answer)
                            .map_err(|e| e.to_string()),
                    };
                    (format!("{m:?}").to_lowercase(), answer)
                })
                .collect()
        })
        .collect();

    let mut summary = CrosscheckSummary { corpus_size: corpus.len(), ..Default::default() };
    for (index, per_method) in results.iter().enumerate() {
        let answers: Vec<(String, bool)> = per_method
            .iter()
            .filter_map(|(m, r)| r.as_ref().ok().map(|&a| (m.clone(), a)))
            .collect();
        if answers.len() < per_method.len() {
            summary.skipped += 1;
        }
        let Some(first) = answers.first() else { continue };
        if first.1 {
            summary.yes_count += 1;
        } else {
            summary.no_count += 1;
        }
        if answers.iter().all(|(_, a)| *a == first.1) {
            summary.agreements += 1;
        } else {
            let fixture = args.dump_dir.join(format!("disagreement_{index}.edgelist"));
            if let Err(e) = std::fs::write(&fixture, format_edge_list(&corpus[index])) {
                eprintln!("warning: could not write fixture: {e}");
            }
            summary.disagreements.push(Disagreement {
                index,
                answers: answers
                    .iter()
                    .map(|(m, a)| (m.clone(), if *a { "yes" } else { "no" }.to_string()))
                    .collect(),
                fixture: fixture.display().to_string(),
            });
        }
    }
    let exit = if summary.disagreements.is_empty() { EXIT_YES } else { EXIT_ERROR };
    let mut report = RunReport::new("crosscheck");
    report.crosscheck = Some(summary);
    report.exit_status = exit as i32;
    emit(&report, args.json);
    exit
}

fn cmd_check_claims(args: &CorpusArgs) -> u8 {
    let corpus = match generate_corpus(args) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let summary = match claims::check_corpus(corpus.iter(), args.k) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let exit = if summary.total_violations() == 0 { EXIT_YES } else { EXIT_ERROR };
    let mut report = RunReport::new("check-claims");
    report.claims = Some(summary);
    report.exit_status = exit as i32;
    emit(&report, args.json);
    exit
}

fn cmd_generate(args: &CorpusArgs) -> u8 {
    let corpus = match generate_corpus(args) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let spec = build_spec(args);
    let free_checked = args.gen == GenArg::RandomFree;
    for (index, g) in corpus.iter().enumerate() {
        let record = serde_json::json!({
            "spec": spec,
            "index": index,
            "n": g.vertex_count(),
            "m": g.edge_count(),
            "edges": g.edges(),
            "free_checked": free_checked,
        });
        println!("{record}");
    }
    EXIT_YES
}
