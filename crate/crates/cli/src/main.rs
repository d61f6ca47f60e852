use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eulerfam::analysis::{audit_lovasz, AuditConfig, AuditMode, DEFAULT_SAMPLES};
use eulerfam::covering::{solve_l_covering, CoveringSolution, Strategy};
use eulerfam::factor::solve_even_two_factor;
use eulerfam::hypercore::{parse, CoveringGuard, Hypergraph};
use eulerfam::tooling::{default_corpus, run_corpus, CorpusSpec, GeneratorSpec};
use eulerfam::trails::{
    euler_tour_exact, extract_family, parse_family, verify_family, EulerFamily, TourOutcome, DEFAULT_TOUR_BUDGET,
};

const EXIT_USAGE: u8 = 64;
const EXIT_ERROR: u8 = 4;

#[derive(Parser)]
#[command(name = "eulerfam", version, about = "Euler families and tours in hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    Complete,
    GreedyCover,
    RandomCover,
    Named,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report; exit 0 iff every requested predicate holds.
    Check {
        file: PathBuf,
        /// Require l-covering.
        #[arg(long)]
        l: Option<usize>,
        /// Require k-uniformity.
        #[arg(long)]
        k: Option<usize>,
        /// Require a connected hypergraph.
        #[arg(long)]
        connected: bool,
        /// Require that no edge is a cut edge.
        #[arg(long)]
        no_cut_edges: bool,
    },
    /// Find an Euler family; exit 0 found, 2 infeasible.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "direct")]
        strategy: Strategy,
        /// Covering parameter; inferred for the reduce strategy when omitted.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the factor selection (JSON) to this path.
        #[arg(long, value_name = "PATH")]
        emit_factor: Option<PathBuf>,
        /// Write the reduction trace (JSON) to this path.
        #[arg(long, value_name = "PATH")]
        emit_trace: Option<PathBuf>,
    },
    /// Exact Euler tour search; exit 0 found, 2 none, 3 budget exhausted.
    Tour {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOUR_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a family against a hypergraph; exit 0 accepted, 1 rejected.
    Verify {
        file: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Generate an instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Minimum of the Lovász functional as JSON.
    Audit {
        file: PathBuf,
        #[arg(long, default_value = "exhaustive_E")]
        mode: AuditMode,
        /// Loop multiplicity; defaults to 2(m+n)^2.
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a corpus (a JSON spec file, or `default`) and print the report.
    Corpus {
        spec: String,
        /// Print only the aggregate.
        #[arg(long)]
        summary: bool,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Hypergraph> {
    let text = read_input(path)?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn check(h: &Hypergraph, l: Option<usize>, k: Option<usize>, connected: bool, no_cut_edges: bool) -> Result<ExitCode> {
    let uniformity = h.uniformity();
    let components = h.component_count();
    let cut_edges = h.cut_edges();
    let mut ok = true;
    let mut report = json!({
        "vertices": h.order(),
        "edges": h.size(),
        "uniformity": uniformity,
        "components": components,
        "cut_edges": cut_edges,
    });
    if let Some(l) = l {
        let witness = h.uncovered_subset(l, CoveringGuard::default())?;
        ok &= witness.is_none();
        report["covering"] = json!({
            "l": l,
            "holds": witness.is_none(),
            "uncovered": witness.map(|w| w.iter().map(|&v| h.label(v)).collect::<Vec<_>>()),
        });
    }
    if let Some(k) = k {
        ok &= uniformity == Some(k);
    }
    if connected {
        ok &= components == 1;
    }
    if no_cut_edges {
        ok &= cut_edges.is_empty();
    }
    report["pass"] = json!(ok);
    println!("{}", pretty(&report));
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Largest `l < k` for which `h` is `l`-covering.
fn infer_covering(h: &Hypergraph) -> Result<usize> {
    let Some(k) = h.uniformity() else {
        bail!("the reduce strategy needs a uniform hypergraph");
    };
    for l in (2..k.min(h.order())).rev() {
        if h.is_l_covering(l)? {
            return Ok(l);
        }
    }
    bail!("hypergraph is not 2-covering; the reduce strategy does not apply")
}

fn solve(
    h: &Hypergraph,
    strategy: Strategy,
    l: Option<usize>,
    format: Format,
    emit_factor: Option<PathBuf>,
    emit_trace: Option<PathBuf>,
) -> Result<ExitCode> {
    let sol = match (l, strategy) {
        (Some(l), _) => solve_l_covering(h, l, strategy)?,
        (None, Strategy::Reduce) => solve_l_covering(h, infer_covering(h)?, strategy)?,
        (None, Strategy::Direct) => {
            let selection = solve_even_two_factor(h)?;
            let family = match &selection {
                Some(sel) => Some(extract_family(&h.incidence_graph(), h, sel)?),
                None => None,
            };
            CoveringSolution {
                family,
                selection,
                trace: None,
            }
        }
    };
    if let Some(path) = emit_factor {
        let text = sol.selection.as_ref().map_or("null".to_string(), |s| s.to_json());
        fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = emit_trace {
        let Some(trace) = &sol.trace else {
            bail!("--emit-trace needs the reduce strategy");
        };
        fs::write(&path, trace.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    match sol.family {
        Some(family) => {
            print_family(h, &family, format);
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!("no Euler family");
            Ok(ExitCode::from(2))
        }
    }
}

fn print_family(h: &Hypergraph, family: &EulerFamily, format: Format) {
    match format {
        Format::Text => print!("{}", family.to_text(h)),
        Format::Json => println!("{}", family.to_json()),
    }
}

fn gen(
    kind: Kind,
    n: Option<usize>,
    k: Option<usize>,
    l: Option<usize>,
    seed: Option<u64>,
    name: Option<String>,
) -> Result<GeneratorSpec> {
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--{flag} is required"));
    Ok(match kind {
        Kind::Complete => GeneratorSpec::Complete {
            n: need(n, "n")?,
            k: need(k, "k")?,
        },
        Kind::GreedyCover => GeneratorSpec::GreedyCover {
            n: need(n, "n")?,
            k: need(k, "k")?,
            l: need(l, "l")?,
        },
        Kind::RandomCover => GeneratorSpec::RandomCover {
            n: need(n, "n")?,
            k: need(k, "k")?,
            l: need(l, "l")?,
            seed: seed.context("--seed is required for random_cover")?,
        },
        Kind::Named => GeneratorSpec::Named {
            name: name.context("--name is required")?,
        },
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check {
            file,
            l,
            k,
            connected,
            no_cut_edges,
        } => check(&load(&file)?, l, k, connected, no_cut_edges),
        Command::Solve {
            file,
            strategy,
            l,
            format,
            emit_factor,
            emit_trace,
        } => solve(&load(&file)?, strategy, l, format, emit_factor, emit_trace),
        Command::Tour { file, budget, format } => {
            let h = load(&file)?;
            match euler_tour_exact(&h, budget) {
                TourOutcome::Found(t) => {
                    print_family(&h, &EulerFamily::new(vec![t]), format);
                    Ok(ExitCode::SUCCESS)
                }
                TourOutcome::NoTour => {
                    eprintln!("no Euler tour");
                    Ok(ExitCode::from(2))
                }
                TourOutcome::BudgetExceeded => {
                    eprintln!("budget of {budget} search nodes exhausted");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Verify { file, family } => {
            let h = load(&file)?;
            let fam = parse_family(&read_input(&family)?, &h)?;
            match verify_family(&h, &fam) {
                Ok(()) => {
                    println!("ok");
                    Ok(ExitCode::SUCCESS)
                }
                Err(r) => {
                    println!("rejected: {r}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Gen {
            kind,
            n,
            k,
            l,
            seed,
            name,
            format,
        } => {
            let h = gen(kind, n, k, l, seed, name)?.generate()?;
            match format {
                Format::Json => println!("{}", h.to_json()),
                Format::Text => print!("{}", h.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit {
            file,
            mode,
            r,
            samples,
            seed,
        } => {
            let h = load(&file)?;
            let report = audit_lovasz(
                &h,
                AuditConfig {
                    mode,
                    loops: r,
                    samples,
                    seed,
                },
            )?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { spec, summary } => {
            let spec = match spec.as_str() {
                "default" => default_corpus(),
                path => CorpusSpec::from_json(&read_input(Path::new(path))?).with_context(|| format!("parsing {path}"))?,
            };
            let report = run_corpus(&spec);
            if summary {
                println!("{}", serde_json::to_string_pretty(&report.aggregate)?);
            } else {
                println!("{}", report.to_json());
            }
            Ok(if report.aggregate.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
