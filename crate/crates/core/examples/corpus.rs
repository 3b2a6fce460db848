//! Verifying a whole catalog in parallel, with filters, JSON and CSV output.
//!
//!     cargo run --release --example corpus -- "degree<=100" "tag=psl2"

use mindeg::actions::bundled_catalog;
use mindeg::verify::{parse_filter, run_corpus, to_csv, CorpusOptions};
use mindeg::Result;

fn main() -> Result<()> {
    let filters = std::env::args()
        .skip(1)
        .map(|f| parse_filter(&f))
        .collect::<Result<Vec<_>>>()?;
    let opts = CorpusOptions {
        filters,
        ..CorpusOptions::default()
    };
    let s = run_corpus(&bundled_catalog(), &opts)?;
    for r in &s.reports.entries {
        println!("{:<8} {:<24} {:<36} degree {}", r.verdict.label(), r.group.name, r.action, r.degree);
    }
    println!("PASS {} FAIL {} SKIP {} TIMEOUT {} ERROR {}", s.pass, s.fail, s.skip, s.timeout, s.error);
    let csv = to_csv(&s.reports.entries)?;
    println!("{} CSV rows", csv.lines().count() - 1);
    Ok(())
}
