//! The verification pipeline: hypotheses, the reduction replay, the fixity
//! profile and a verdict, for one action or a whole catalog.

mod corpus;
mod descent;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::actions::{ActionSpec, ActionView};
use crate::error::{Error, Result};
use crate::fixity::{bound_verdict, check_hypotheses, view_profile, FixityProfile, Hypotheses, Verdict};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::serde_u128;
use crate::structure::{
    minimal_normal_subgroups_with, ons_type_on_cosets, sylow2_with, transitive_on_cosets, two_part, OnsTag,
};

pub use corpus::{parse_filter, run_corpus, to_csv, CorpusFilter, CorpusOptions, CorpusSummary};
pub use descent::{descent, DescentLevel, DescentResult};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest depth of the reduction replay.
const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub limits: Limits,
    /// After this much time the reduction replay is skipped and marked
    /// truncated; the verdict is still computed.
    pub soft_budget: Duration,
    /// Hard deadline for the whole entry; exceeding it gives TIMEOUT.
    pub hard_budget: Duration,
    /// Record wall-clock timings (makes reports non-reproducible).
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: crate::structure::DEFAULT_SEED,
            limits: Limits::default(),
            soft_budget: Duration::from_secs(60),
            hard_budget: Duration::from_secs(600),
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepKind {
    /// The point stabiliser is a proper subgroup of a Sylow 2-subgroup `P`;
    /// the blocks `{ω^P x}` give a quotient of smaller degree.
    SylowBlocks,
    /// A minimal normal subgroup `N` is intransitive: recurse on the action
    /// on `N`-orbits and on the action of a block stabiliser on its block.
    IntransitiveMinimalNormal,
    /// Every minimal normal subgroup is transitive: the type is recorded and
    /// the profile computed directly.
    Quasiprimitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionNode {
    pub degree: u128,
    #[serde(serialize_with = "serde_u128")]
    pub order: u128,
    pub hypotheses: Hypotheses,
    /// `None` when a hypothesis fails and the branch is not reduced further.
    pub step: Option<StepKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ons_type: Option<OnsTag>,
    pub justification: String,
    pub children: Vec<ReductionNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupIdentity {
    pub name: String,
    pub degree: usize,
    #[serde(serialize_with = "serde_u128")]
    pub order: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group: GroupIdentity,
    pub action: String,
    pub degree: u128,
    pub hypothesis_checks: Option<Hypotheses>,
    pub reduction_tree: Option<ReductionNode>,
    pub fpr_table: Option<FixityProfile>,
    pub verdict: Verdict,
    /// Set when part of the report was skipped for lack of time or space.
    pub truncated: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportSet {
    pub tool_version: &'static str,
    pub seed: u64,
    pub entries: Vec<VerificationReport>,
}

impl ReportSet {
    pub fn new(seed: u64, mut entries: Vec<VerificationReport>) -> ReportSet {
        entries.sort_by(|a, b| (&a.group.name, &a.action).cmp(&(&b.group.name, &b.action)));
        ReportSet {
            tool_version: TOOL_VERSION,
            seed,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }
}

fn timeout_reason(e: &Error) -> Option<String> {
    e.is_resource().then(|| e.to_string())
}

/// Builds the view of `g` under `action`.
pub fn action_view(g: &PermGroup, action: &ActionSpec, seed: u64, limits: &Limits) -> Result<ActionView> {
    match action {
        ActionSpec::Natural => Ok(ActionView::Explicit(g.clone())),
        ActionSpec::Cosets(spec) => {
            let h = spec.realize_with(g, seed, limits)?;
            ActionView::cosets(g, &h, limits)
        }
    }
}

/// Verifies one action of a named group. Errors other than resource
/// exhaustion are returned; resource exhaustion yields a TIMEOUT report.
pub fn verify(name: &str, g: &PermGroup, action: &ActionSpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut limits = opts.limits.clone();
    limits.deadline = Some(start + opts.hard_budget);
    let mut report = VerificationReport {
        group: GroupIdentity {
            name: name.to_string(),
            degree: g.degree(),
            order: g.order(),
        },
        action: action.to_string(),
        degree: 0,
        hypothesis_checks: None,
        reduction_tree: None,
        fpr_table: None,
        verdict: Verdict::Skip {
            reason: "not evaluated".into(),
        },
        truncated: false,
        seed: opts.seed,
        elapsed_ms: None,
    };
    let outcome = fill_report(&mut report, g, action, opts, &limits, start);
    if let Err(e) = outcome {
        match timeout_reason(&e) {
            Some(reason) => {
                report.truncated = true;
                report.verdict = Verdict::Timeout { reason };
            }
            None => return Err(e),
        }
    }
    if opts.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn fill_report(
    report: &mut VerificationReport,
    g: &PermGroup,
    action: &ActionSpec,
    opts: &VerifyOptions,
    limits: &Limits,
    start: Instant,
) -> Result<()> {
    let view = action_view(g, action, opts.seed, limits)?;
    report.degree = view.degree();
    let hyp = check_hypotheses(&view, limits)?;
    report.hypothesis_checks = Some(hyp);
    let profile = view_profile(&view, limits)?;
    report.verdict = match hyp.violated() {
        Some(reason) => Verdict::Skip { reason: reason.into() },
        None => bound_verdict(&profile),
    };
    report.fpr_table = Some(profile);
    if hyp.all() {
        if start.elapsed() > opts.soft_budget {
            report.truncated = true;
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            match replay(&view, hyp, &mut rng, limits, 0) {
                Ok(tree) => report.reduction_tree = Some(tree),
                Err(e) if e.is_resource() => report.truncated = true,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

/// Replays the reduction on an action satisfying the hypotheses.
pub fn reduction_tree(view: &ActionView, seed: u64, limits: &Limits) -> Result<ReductionNode> {
    let hyp = check_hypotheses(view, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    replay(view, hyp, &mut rng, limits, 0)
}

fn replay(
    view: &ActionView,
    hyp: Hypotheses,
    rng: &mut ChaCha8Rng,
    limits: &Limits,
    depth: usize,
) -> Result<ReductionNode> {
    limits.check_time()?;
    let g = view.group();
    let mut node = ReductionNode {
        degree: view.degree(),
        order: g.order(),
        hypotheses: hyp,
        step: None,
        ons_type: None,
        justification: String::new(),
        children: Vec::new(),
    };
    if let Some(reason) = hyp.violated() {
        node.justification = format!("not reduced: {reason}");
        return Ok(node);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::resource("reduction depth exceeded"));
    }
    let h = view.point_stabilizer();
    if h.order() < two_part(g.order()) {
        let p = sylow2_with(g, Some(&h), rng, limits)?;
        let child = ActionView::cosets(g, &p, limits)?;
        debug_assert!(child.degree() < node.degree);
        node.step = Some(StepKind::SylowBlocks);
        node.justification = format!(
            "stabiliser of order {} lies in a Sylow 2-subgroup of order {}; its orbit is a block, \
             and the action on the {} blocks is the quotient",
            h.order(),
            p.order(),
            child.degree()
        );
        node.children.push(sub_replay(&child, rng, limits, depth)?);
        return Ok(node);
    }
    let mins = minimal_normal_subgroups_with(g, limits)?;
    for n in &mins {
        let transitive = match view {
            ActionView::Explicit(_) => n.is_transitive(),
            ActionView::Cosets { group, sub } => transitive_on_cosets(group, sub, n)?,
        };
        if transitive {
            continue;
        }
        let nh = n.join(&h);
        let quotient = ActionView::cosets(g, &nh, limits)?;
        let block = ActionView::cosets(&nh, &h, limits)?;
        node.step = Some(StepKind::IntransitiveMinimalNormal);
        node.justification = format!(
            "minimal normal subgroup of order {} has orbits of length {}; recurse on the {} orbits \
             and on a block stabiliser acting on its orbit",
            n.order(),
            block.degree(),
            quotient.degree()
        );
        node.children.push(sub_replay(&quotient, rng, limits, depth)?);
        node.children.push(sub_replay(&block, rng, limits, depth)?);
        return Ok(node);
    }
    let ons = ons_type_on_cosets(g, &h)?;
    node.step = Some(StepKind::Quasiprimitive);
    node.ons_type = Some(ons.tag);
    node.justification = format!(
        "every minimal normal subgroup is transitive; socle of order {} with {} factor(s)",
        ons.socle_order, ons.socle_factor_count
    );
    Ok(node)
}

fn sub_replay(view: &ActionView, rng: &mut ChaCha8Rng, limits: &Limits, depth: usize) -> Result<ReductionNode> {
    let hyp = check_hypotheses(view, limits)?;
    replay(view, hyp, rng, limits, depth + 1)
}
