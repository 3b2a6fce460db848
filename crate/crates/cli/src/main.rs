use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use mindeg::actions::{load_catalog, parse_catalog, resolve, ActionSpec, ActionView, CatalogEntry};
use mindeg::fixity::{view_profile, Verdict};
use mindeg::verify::{descent, parse_filter, run_corpus, to_csv, verify, CorpusOptions, ReportSet, VerifyOptions};
use mindeg::{Error, Limits, PermGroup, Permutation, Ratio};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "mindeg", version, about = "Fixed-point ratios and minimal degrees of permutation groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check hypotheses, replay the reduction and give a verdict for one action.
    Verify {
        /// Catalog name, group expression, or a file (catalog or one cycle string per line).
        #[arg(long)]
        group: String,
        /// natural | sylow2 | cosets:<subgroup-spec>
        #[arg(long, default_value = "natural")]
        action: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Extra catalog used to resolve names.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Hard budget in seconds.
        #[arg(long, default_value_t = 600)]
        timeout: u64,
    },
    /// Verify every action of every entry of a catalog.
    Corpus {
        /// Catalog file; the bundled corpus when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// k=v restrictions: name=, tag=, action=, degree<=N, degree>=N.
        #[arg(long = "filter", num_args = 1..)]
        filters: Vec<String>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include wall-clock timings (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Walk the block systems top-down, pruning classes at or below the threshold.
    Descent {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "1/3")]
        threshold: String,
        /// Base point, 1-based.
        #[arg(long, default_value_t = 1)]
        point: usize,
    },
    /// Minimal degree and fixity of an action.
    Mindeg {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "natural")]
        action: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn code_for(e: &Error) -> u8 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

/// A group given by name, expression, or file.
fn load_group(spec: &str, extra: &[CatalogEntry]) -> Result<(String, PermGroup), Error> {
    let path = Path::new(spec);
    if !path.is_file() {
        return Ok((spec.to_string(), resolve(spec, extra)?));
    }
    let text = std::fs::read_to_string(path)?;
    if let Ok(entries) = parse_catalog(&text) {
        if let [e] = entries.as_slice() {
            return Ok((e.name.clone(), mindeg::actions::realize(e)?));
        }
        if !entries.is_empty() {
            return Err(Error::Precondition("catalog file holds several groups; name one with --catalog".into()));
        }
    }
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let degree = lines
        .iter()
        .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(1);
    let gens = lines
        .iter()
        .map(|l| Permutation::parse_cycles(l, degree))
        .collect::<Result<Vec<_>, _>>()?;
    let name = path.file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, PermGroup::with_degree(degree, gens)?))
}

fn write_out(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(Error::from)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Verify {
            group,
            action,
            seed,
            report,
            catalog,
            timeout,
        } => {
            let extra = match catalog {
                Some(p) => load_catalog(p)?,
                None => Vec::new(),
            };
            let (name, g) = load_group(&group, &extra)?;
            let spec: ActionSpec = action.parse()?;
            let mut opts = VerifyOptions {
                hard_budget: Duration::from_secs(timeout),
                ..VerifyOptions::default()
            };
            if let Some(s) = seed {
                opts.seed = s;
            }
            let r = verify(&name, &g, &spec, &opts)?;
            let verdict = r.verdict.clone();
            let set = ReportSet::new(opts.seed, vec![r]);
            match report {
                Some(p) => {
                    write_out(&p, &set.to_json())?;
                    eprintln!("{name} {action}: {}", verdict.label());
                }
                None => println!("{}", set.to_json()),
            }
            Ok(match verdict {
                Verdict::Fail { .. } => EXIT_FAIL,
                Verdict::Timeout { .. } => EXIT_RESOURCE,
                _ => 0,
            })
        }
        Cmd::Corpus {
            catalog,
            filters,
            jobs,
            seed,
            csv,
            report,
            timings,
        } => {
            let entries = match catalog {
                Some(p) => load_catalog(p)?,
                None => mindeg::actions::bundled_catalog(),
            };
            let mut opts = CorpusOptions {
                filters: filters.iter().map(|f| parse_filter(f)).collect::<Result<_, _>>()?,
                jobs,
                verify: VerifyOptions::default(),
            };
            opts.verify.timings = timings;
            if let Some(s) = seed {
                opts.verify.seed = s;
            }
            let summary = run_corpus(&entries, &opts)?;
            for r in &summary.reports.entries {
                let detail = match &r.verdict {
                    Verdict::Fail { witness, .. } => format!(" witness {witness}"),
                    Verdict::Skip { reason } | Verdict::Timeout { reason } | Verdict::Error { reason } => {
                        format!(" ({reason})")
                    }
                    Verdict::Pass => String::new(),
                };
                eprintln!("{:<8} {} [{}] degree {}{}", r.verdict.label(), r.group.name, r.action, r.degree, detail);
            }
            eprintln!(
                "PASS {} FAIL {} SKIP {} TIMEOUT {} ERROR {}",
                summary.pass, summary.fail, summary.skip, summary.timeout, summary.error
            );
            if let Some(p) = csv {
                write_out(&p, &to_csv(&summary.reports.entries)?)?;
            }
            match report {
                Some(p) => write_out(&p, &summary.reports.to_json())?,
                None => println!("{}", summary.reports.to_json()),
            }
            Ok(if summary.has_fail() { EXIT_FAIL } else { 0 })
        }
        Cmd::Descent { group, threshold, point } => {
            let (_, g) = load_group(&group, &[])?;
            let t: Ratio = threshold.parse()?;
            if point == 0 {
                return Err(Error::Precondition("points are 1-based".into()));
            }
            let d = descent(&g, point - 1, t)?;
            println!("{}", serde_json::to_string_pretty(&d).expect("serialisable"));
            Ok(0)
        }
        Cmd::Mindeg { group, action, seed } => {
            let (name, g) = load_group(&group, &[])?;
            let spec: ActionSpec = action.parse()?;
            let limits = Limits::default();
            let view: ActionView =
                mindeg::verify::action_view(&g, &spec, seed.unwrap_or(mindeg::structure::DEFAULT_SEED), &limits)?;
            let p = view_profile(&view, &limits)?;
            println!("group     {name} (order {})", g.order());
            println!("action    {spec}");
            println!("degree    {}", p.degree);
            println!("mindeg    {}", p.mindeg);
            println!("fixity    {}", p.fixity);
            println!("max fpr   {}", p.max_fpr);
            println!("3·mindeg ≥ 2·degree: {}", p.meets_two_thirds());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code_for(&e))
        }
    }
}
