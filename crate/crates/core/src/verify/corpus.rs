use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;

use crate::actions::{realize, ActionSpec, CatalogEntry, SubgroupSpec};
use crate::error::{Error, Result};
use crate::fixity::Verdict;
use crate::group::PermGroup;
use crate::structure::two_part;

use super::{verify, GroupIdentity, ReportSet, VerificationReport, VerifyOptions};

/// One `k=v` restriction on corpus entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusFilter {
    /// Entry name contains the value.
    Name(String),
    Tag(String),
    /// Action spec equals the value (`natural`, `sylow2`, …).
    Action(String),
    MaxDegree(u128),
    MinDegree(u128),
}

/// Parses `name=…`, `tag=…`, `action=…`, `degree<=N` / `max_degree=N`,
/// `degree>=N` / `min_degree=N`.
pub fn parse_filter(s: &str) -> Result<CorpusFilter> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("bad filter `{s}`"),
    };
    let num = |v: &str| v.trim().parse::<u128>().map_err(|_| bad());
    if let Some(v) = s.strip_prefix("degree<=") {
        return Ok(CorpusFilter::MaxDegree(num(v)?));
    }
    if let Some(v) = s.strip_prefix("degree>=") {
        return Ok(CorpusFilter::MinDegree(num(v)?));
    }
    let (k, v) = s.split_once('=').ok_or_else(bad)?;
    match k.trim() {
        "name" => Ok(CorpusFilter::Name(v.trim().into())),
        "tag" => Ok(CorpusFilter::Tag(v.trim().into())),
        "action" => Ok(CorpusFilter::Action(v.trim().into())),
        "max_degree" => Ok(CorpusFilter::MaxDegree(num(v)?)),
        "min_degree" => Ok(CorpusFilter::MinDegree(num(v)?)),
        _ => Err(bad()),
    }
}

#[derive(Debug, Clone, Default)]
pub struct CorpusOptions {
    pub filters: Vec<CorpusFilter>,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub verify: VerifyOptions,
}

#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub reports: ReportSet,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub timeout: usize,
    pub error: usize,
}

impl CorpusSummary {
    pub fn has_fail(&self) -> bool {
        self.fail > 0
    }
}

/// Degree of the action without building it.
fn action_degree(g: &PermGroup, action: &ActionSpec) -> Result<u128> {
    Ok(match action {
        ActionSpec::Natural => g.degree() as u128,
        ActionSpec::Cosets(SubgroupSpec::Sylow2) => g.order() / two_part(g.order()),
        ActionSpec::Cosets(spec) => g.order() / spec.realize(g)?.order(),
    })
}

fn error_report(name: &str, g: Option<&PermGroup>, action: &str, reason: String, seed: u64) -> VerificationReport {
    VerificationReport {
        group: GroupIdentity {
            name: name.to_string(),
            degree: g.map_or(0, |g| g.degree()),
            order: g.map_or(0, |g| g.order()),
        },
        action: action.to_string(),
        degree: 0,
        hypothesis_checks: None,
        reduction_tree: None,
        fpr_table: None,
        verdict: Verdict::Error { reason },
        truncated: false,
        seed,
        elapsed_ms: None,
    }
}

fn run_entry(entry: &CatalogEntry, opts: &CorpusOptions) -> Vec<VerificationReport> {
    let seed = opts.verify.seed;
    let wanted: Vec<&String> = entry
        .actions
        .iter()
        .filter(|a| {
            opts.filters.iter().all(|f| match f {
                CorpusFilter::Action(x) => *a == x,
                _ => true,
            })
        })
        .collect();
    if wanted.is_empty() {
        return Vec::new();
    }
    let g = match realize(entry) {
        Ok(g) => g,
        Err(e) => {
            return wanted
                .iter()
                .map(|a| error_report(&entry.name, None, a, e.to_string(), seed))
                .collect()
        }
    };
    let mut out = Vec::new();
    for a in wanted {
        let one = || -> Result<Option<VerificationReport>> {
            let spec: ActionSpec = a.parse()?;
            let deg = action_degree(&g, &spec)?;
            let keep = opts.filters.iter().all(|f| match f {
                CorpusFilter::MaxDegree(n) => deg <= *n,
                CorpusFilter::MinDegree(n) => deg >= *n,
                _ => true,
            });
            if !keep {
                return Ok(None);
            }
            verify(&entry.name, &g, &spec, &opts.verify).map(Some)
        };
        match catch_unwind(AssertUnwindSafe(one)) {
            Ok(Ok(Some(r))) => out.push(r),
            Ok(Ok(None)) => {}
            Ok(Err(e)) => out.push(error_report(&entry.name, Some(&g), a, e.to_string(), seed)),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                out.push(error_report(&entry.name, Some(&g), a, format!("internal error: {msg}"), seed));
            }
        }
    }
    out
}

/// Verifies every selected (entry, action) pair. Entries run in parallel;
/// the result is sorted and independent of scheduling.
pub fn run_corpus(catalog: &[CatalogEntry], opts: &CorpusOptions) -> Result<CorpusSummary> {
    let selected: Vec<&CatalogEntry> = catalog
        .iter()
        .filter(|e| {
            opts.filters.iter().all(|f| match f {
                CorpusFilter::Name(n) => e.name.contains(n.as_str()),
                CorpusFilter::Tag(t) => e.has_tag(t),
                _ => true,
            })
        })
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.jobs > 0 {
        builder = builder.num_threads(opts.jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::resource(format!("thread pool: {e}")))?;
    let reports: Vec<VerificationReport> = pool.install(|| {
        selected
            .par_iter()
            .flat_map_iter(|e| run_entry(e, opts))
            .collect()
    });
    let count = |l: &str| reports.iter().filter(|r| r.verdict.label() == l).count();
    Ok(CorpusSummary {
        pass: count("PASS"),
        fail: count("FAIL"),
        skip: count("SKIP"),
        timeout: count("TIMEOUT"),
        error: count("ERROR"),
        reports: ReportSet::new(opts.verify.seed, reports),
    })
}

/// Flat CSV: one row per (entry, action, class).
pub fn to_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["group", "action", "class", "order", "fix", "fpr"]).map_err(io)?;
    for r in reports {
        let Some(p) = &r.fpr_table else { continue };
        for c in &p.classes {
            w.write_record([
                r.group.name.clone(),
                r.action.clone(),
                c.class.to_string(),
                c.element_order.to_string(),
                c.fix_count.to_string(),
                c.fpr.to_string(),
            ])
            .map_err(io)?;
        }
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
}
