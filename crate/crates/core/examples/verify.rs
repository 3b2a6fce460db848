//! The full verification of one group action: hypotheses, the reduction
//! tree, the fixed-point table and a verdict, as a JSON report.
//!
//!     cargo run --example verify -- "Sym(5)" "cosets:(1,2)(3,4);(1,3)(2,4)"

use mindeg::actions::resolve;
use mindeg::verify::{verify, ReductionNode, ReportSet, VerifyOptions};
use mindeg::Result;

fn show(n: &ReductionNode, depth: usize) {
    let step = n.step.map_or("-".to_string(), |s| format!("{s:?}"));
    let ons = n.ons_type.map_or(String::new(), |t| format!(" {t:?}"));
    println!("{}degree {} order {}: {step}{ons}", "  ".repeat(depth), n.degree, n.order);
    for c in &n.children {
        show(c, depth + 1);
    }
}

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "Sym(5)".into());
    let action = args.next().unwrap_or_else(|| "cosets:(1,2)(3,4);(1,3)(2,4)".into());
    let g = resolve(&name, &[])?;
    let opts = VerifyOptions::default();
    let report = verify(&name, &g, &action.parse()?, &opts)?;
    eprintln!("{name} [{action}]: {}", report.verdict.label());
    if let Some(t) = &report.reduction_tree {
        show(t, 0);
    }
    println!("{}", ReportSet::new(opts.seed, vec![report]).to_json());
    Ok(())
}
