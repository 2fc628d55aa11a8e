use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mpcover::construct::{best_effort_cover, multipartite_cover, GroupingStrategy};
use mpcover::cover::{verify_cover, Cover};
use mpcover::families::FamilyId;
use mpcover::harness::{classify, fuzz, FuzzMode, RunConfig};
use mpcover::io::{self, ColoringFile};
use mpcover::par::Parallelism;
use mpcover::ryser::{equivalence_report, hypergraph_report, Caps, Hypergraph, InequalityCheck};
use mpcover::search::{compute_d, cover_exists, gk_survey, PruneConfig, SearchConfig, SearchResult};
use mpcover::Error;

/// Exit status: 0 when the claim checked out, 1 when it was refuted, 2 for
/// bad input, configuration or caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Verified = 0,
    Refuted = 1,
    Config = 2,
}

#[derive(Parser)]
#[command(name = "mpcover", version, about = "Monochromatic low-diameter covers of 2-colored complete multipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named coloring as JSON.
    Gen {
        /// thm31:k=K, fig4 or fig3.
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify a two-subgraph cover.
    Cover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value = "balanced")]
        grouping: String,
        /// Where to write forensics when every candidate fails.
        #[arg(long, default_value = "mpcover-forensics.json")]
        forensics: PathBuf,
    },
    /// Check a cover against a coloring.
    Verify {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        t: usize,
    },
    /// Decide whether a cover with at most t subgraphs of diameter at most d exists.
    Exists {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        d: u32,
    },
    /// Exact D for a shape by exhaustive search over coloring classes.
    ComputeD {
        /// Part sizes, e.g. 4,3,2.
        #[arg(long)]
        parts: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 4)]
        d_max: u32,
        /// 0 = all cores, 1 = sequential.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Enumerate every coloring instead of one per class.
        #[arg(long)]
        no_symmetry: bool,
        /// Skip the clone-pair certificates.
        #[arg(long)]
        no_clone_prune: bool,
        /// Stop after this many codes (resume later from the checkpoint).
        #[arg(long)]
        max_codes: Option<u64>,
        #[arg(long)]
        cap_edges: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Leave wall-clock time out of the report.
        #[arg(long)]
        omit_timing: bool,
    },
    /// Closed-form D for a three-part shape.
    Classify {
        #[arg(long)]
        parts: String,
    },
    /// Exact D for k parts of size two, with survivor statistics.
    Gk {
        #[arg(long)]
        k: usize,
        /// Defaults to gk<K>.checkpoint.json.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        max_codes: Option<u64>,
        #[arg(long)]
        cap_edges: Option<usize>,
        #[arg(long)]
        omit_timing: bool,
    },
    /// Check the inequalities linking component covers and hypergraph covers.
    Ryser {
        #[arg(long, conflicts_with = "hypergraph", required_unless_present = "hypergraph")]
        coloring: Option<PathBuf>,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
    },
    /// Seeded property checks.
    Fuzz {
        /// construct, tc2, prune or equivalence.
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Iterations.
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value = "fuzz-repro")]
        dump_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let status = match e.downcast_ref::<Error>() {
                Some(Error::InequalityViolated(_)) | Some(Error::ConstructionExhausted(_)) => Status::Refuted,
                _ => Status::Config,
            };
            ExitCode::from(status as u8)
        }
    }
}

fn emit(value: &serde_json::Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = io::to_json(value);
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_coloring(path: &Path) -> anyhow::Result<mpcover::graph::EdgeColoring> {
    io::read_coloring(path).with_context(|| format!("reading coloring {}", path.display()))
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Verified
    } else {
        Status::Refuted
    }
}

fn run(command: Command) -> anyhow::Result<Status> {
    match command {
        Command::Gen { family, out } => {
            let id: FamilyId = family.parse()?;
            let fam = id.generate()?;
            let file = ColoringFile::from_coloring(&fam.coloring).with_labels(&fam.labels);
            emit(&serde_json::to_value(file)?, out.as_deref())?;
            Ok(Status::Verified)
        }
        Command::Cover { input, d, grouping, forensics } => {
            let chi = read_coloring(&input)?;
            let strategy: GroupingStrategy = grouping.parse()?;
            let config = RunConfig { command: "cover".into(), input: Some(input), d: Some(d), t: Some(2), ..Default::default() };
            let construction = if chi.shape().k() >= 3 {
                match multipartite_cover(&chi, strategy) {
                    Ok(c) => Some(c),
                    Err(Error::ConstructionExhausted(ex)) => {
                        let dump = json!({
                            "config": config,
                            "coloring": ColoringFile::from_coloring(&ex.coloring),
                            "trace": ex.trace,
                        });
                        emit(&dump, Some(&forensics))?;
                        eprintln!("construction exhausted; forensics in {}", forensics.display());
                        return Ok(Status::Refuted);
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                eprintln!(
                    "warning: the diameter-3 guarantee needs at least three parts; this shape has {}, trying best effort",
                    chi.shape().k()
                );
                best_effort_cover(&chi, d)?
            };
            let Some(c) = construction else {
                emit(&json!({ "config": config, "cover": null, "verified": false }), None)?;
                return Ok(Status::Refuted);
            };
            let verdict = verify_cover(&chi, &c.cover, d, 2)?;
            emit(
                &json!({
                    "config": config,
                    "cover": c.cover,
                    "trace": c.trace,
                    "diameter": c.diameter,
                    "final_case": c.final_case,
                    "verified": verdict.is_ok(),
                    "violation": verdict.as_ref().err().map(ToString::to_string),
                }),
                None,
            )?;
            Ok(status_of(verdict.is_ok()))
        }
        Command::Verify { coloring, cover, d, t } => {
            let chi = read_coloring(&coloring)?;
            let cov: Cover = io::read_json(&cover).with_context(|| format!("reading cover {}", cover.display()))?;
            let verdict = verify_cover(&chi, &cov, d, t)?;
            emit(&json!({ "ok": verdict.is_ok(), "violation": verdict.as_ref().err() }), None)?;
            Ok(status_of(verdict.is_ok()))
        }
        Command::Exists { coloring, t, d } => {
            let chi = read_coloring(&coloring)?;
            let found = cover_exists(&chi, t, d)?;
            emit(&json!({ "t": t, "d": d, "exists": found.is_some(), "cover": found }), None)?;
            Ok(status_of(found.is_some()))
        }
        Command::ComputeD {
            parts,
            t,
            d_max,
            threads,
            checkpoint,
            no_symmetry,
            no_clone_prune,
            max_codes,
            cap_edges,
            format,
            omit_timing,
        } => {
            let sizes = io::parse_parts(&parts)?;
            let shape = mpcover::graph::build_shape(&sizes)?;
            let prune = PruneConfig { stars: true, clones: !no_clone_prune };
            let config = SearchConfig {
                t,
                d_max,
                symmetry: !no_symmetry,
                prune,
                parallelism: Parallelism::from_threads(threads),
                cap_edges,
                checkpoint: checkpoint.clone(),
                max_codes,
                ..Default::default()
            };
            let run = RunConfig {
                command: "compute-d".into(),
                parts: Some(shape.part_sizes().to_vec()),
                t: Some(t),
                d_max: Some(d_max),
                threads: Some(threads),
                prune: Some(prune),
                checkpoint,
                format: Some(match format {
                    Format::Json => "json".into(),
                    Format::Tsv => "tsv".into(),
                }),
                cap_edges,
                ..Default::default()
            };
            let result = compute_d(&shape, &config)?;
            report_search(&run, &result, format, !omit_timing)?;
            Ok(status_of(result.outcome.finished && !result.outcome.exceeds_d_max))
        }
        Command::Classify { parts } => {
            let sizes = io::parse_parts(&parts)?;
            let d = classify(&sizes)?;
            emit(&json!({ "parts": sizes, "d": d }), None)?;
            Ok(Status::Verified)
        }
        Command::Gk { k, checkpoint, threads, max_codes, cap_edges, omit_timing } => {
            let checkpoint = checkpoint.unwrap_or_else(|| PathBuf::from(format!("gk{k}.checkpoint.json")));
            let config = SearchConfig {
                parallelism: Parallelism::from_threads(threads),
                checkpoint: Some(checkpoint.clone()),
                max_codes,
                cap_edges,
                ..Default::default()
            };
            let run = RunConfig {
                command: "gk".into(),
                parts: Some(vec![2; k]),
                t: Some(2),
                d_max: Some(config.d_max),
                threads: Some(threads),
                prune: Some(config.prune),
                checkpoint: Some(checkpoint),
                cap_edges,
                ..Default::default()
            };
            let result = gk_survey(k, &config)?;
            report_search(&run, &result, Format::Json, !omit_timing)?;
            let clean = result.outcome.counts.survey.property_violations == 0;
            Ok(status_of(result.outcome.finished && clean && !result.outcome.exceeds_d_max))
        }
        Command::Ryser { coloring, hypergraph } => {
            let report: Vec<InequalityCheck> = match (coloring, hypergraph) {
                (Some(path), _) => equivalence_report(&read_coloring(&path)?, Caps::default())?,
                (None, Some(path)) => {
                    let raw: Hypergraph = io::read_json(&path)?;
                    let h = Hypergraph::new(raw.classes, raw.edges)?;
                    hypergraph_report(&h, Caps::default())?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let ok = report.iter().all(|c| c.ok);
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(status_of(ok))
        }
        Command::Fuzz { mode, seed, n, dump_dir, threads } => {
            let mode: FuzzMode = mode.parse()?;
            let report = fuzz(mode, seed, n, Some(&dump_dir), Parallelism::from_threads(threads))?;
            let run = RunConfig { command: "fuzz".into(), seed: Some(seed), threads: Some(threads), ..Default::default() };
            emit(&json!({ "config": run, "report": report }), None)?;
            Ok(status_of(report.passed()))
        }
    }
}

fn report_search(run: &RunConfig, result: &SearchResult, format: Format, timing: bool) -> anyhow::Result<()> {
    match format {
        Format::Tsv => {
            println!("{}", io::TSV_HEADER);
            println!("{}", io::tsv_row(result, timing));
        }
        Format::Json => {
            let mut value = json!({ "config": run, "result": result.outcome });
            if timing {
                value["elapsed_secs"] = json!(result.elapsed_secs);
            }
            emit(&value, None)?;
        }
    }
    Ok(())
}
