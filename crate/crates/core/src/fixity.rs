//! Fixed-point ratios, minimal degree and fixity, per conjugacy class.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::actions::{ActionView, FORMULA_SUBGROUP_LIMIT};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClasses, PermGroup};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::ratio::Ratio;
use crate::structure::{o2_with, BlockSystem, DEFAULT_SEED};
use crate::serde_u128;

/// Fixed points of one class representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFix {
    pub class: usize,
    /// Representative in 1-based cycle notation.
    pub rep: String,
    pub element_order: u64,
    #[serde(serialize_with = "serde_u128")]
    pub size: u128,
    #[serde(serialize_with = "serde_u128")]
    pub centralizer_order: u128,
    pub fix_count: u128,
    pub fpr: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixityProfile {
    pub degree: u128,
    pub classes: Vec<ClassFix>,
    /// Least support of a non-identity element (`degree` for trivial groups).
    pub mindeg: u128,
    /// Most fixed points of a non-identity element.
    pub fixity: u128,
    pub max_fpr: Ratio,
    /// First class (in canonical order) attaining `fixity`.
    pub argmax_class: Option<usize>,
}

impl FixityProfile {
    fn build(classes: &ConjugacyClasses, degree: u128, fixes: &[u128]) -> FixityProfile {
        let rows: Vec<ClassFix> = classes
            .iter()
            .zip(fixes)
            .enumerate()
            .map(|(i, (c, &f))| ClassFix {
                class: i,
                rep: c.rep.to_cycle_string(),
                element_order: c.element_order,
                size: c.size,
                centralizer_order: c.centralizer_order,
                fix_count: f,
                fpr: Ratio::new(f, degree),
            })
            .collect();
        let mut argmax: Option<usize> = None;
        for r in rows.iter().filter(|r| r.element_order > 1) {
            if argmax.map_or(true, |a| r.fix_count > rows[a].fix_count) {
                argmax = Some(r.class);
            }
        }
        let fixity = argmax.map_or(0, |a| rows[a].fix_count);
        FixityProfile {
            degree,
            mindeg: degree - fixity,
            fixity,
            max_fpr: Ratio::new(fixity, degree),
            argmax_class: argmax,
            classes: rows,
        }
    }

    /// `3·mindeg ≥ 2·degree`.
    pub fn meets_two_thirds(&self) -> bool {
        3 * self.mindeg >= 2 * self.degree
    }
}

/// `|Fix(g)| / degree`.
pub fn fpr_direct(action: &PermGroup, g: &Permutation) -> Result<Ratio> {
    if !action.contains(g)? {
        return Err(Error::NotInGroup);
    }
    Ok(Ratio::new(g.fix_count() as u128, action.degree() as u128))
}

pub fn fixity_profile(action: &PermGroup) -> Result<FixityProfile> {
    fixity_profile_with(action, &Limits::default())
}

pub fn fixity_profile_with(action: &PermGroup, limits: &Limits) -> Result<FixityProfile> {
    let classes = action.conjugacy_classes_with(limits)?;
    let fixes: Vec<u128> = classes.iter().map(|c| c.fix_count() as u128).collect();
    Ok(FixityProfile::build(&classes, action.degree() as u128, &fixes))
}

/// Number of elements of `h` in each class of `classes`. Elements are
/// bucketed by cycle type before they are classified.
pub fn class_intersections(classes: &ConjugacyClasses, h: &PermGroup, limits: &Limits) -> Result<Vec<u128>> {
    if h.order() > FORMULA_SUBGROUP_LIMIT {
        return Err(Error::resource(format!(
            "subgroup of order {} is too large to enumerate",
            h.order()
        )));
    }
    let mut buckets: rustc_hash::FxHashMap<Vec<usize>, Vec<Permutation>> = Default::default();
    for (i, x) in h.elements().enumerate() {
        if i % 4096 == 0 {
            limits.check_time()?;
        }
        buckets.entry(x.cycle_type()).or_default().push(x);
    }
    let all: Vec<Permutation> = buckets.into_values().flatten().collect();
    let found: Vec<Option<usize>> = all.par_iter().map(|x| classes.class_of(x)).collect();
    let mut counts = vec![0u128; classes.len()];
    for c in found {
        counts[c.ok_or(Error::NotSubgroup)?] += 1;
    }
    Ok(counts)
}

/// `|x^G ∩ H| / |x^G|`, the fixed-point ratio of `x` on `H\G`, computed
/// without building the coset action.
pub fn fpr_coset_formula(g: &PermGroup, h: &PermGroup, x: &Permutation) -> Result<Ratio> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if h.order() > FORMULA_SUBGROUP_LIMIT {
        return Err(Error::resource("subgroup too large to enumerate"));
    }
    let classes = g.conjugacy_classes()?;
    let ci = classes.class_of(x).ok_or(Error::NotInGroup)?;
    let ct = x.cycle_type();
    let hits = h
        .elements()
        .filter(|y| y.cycle_type() == ct && classes.class_of(y) == Some(ci))
        .count();
    Ok(Ratio::new(hits as u128, classes.get(ci).size))
}

/// Profile of `G` on `H\G` through class intersections: a class `x^G` has
/// `|C_G(x)|·|x^G ∩ H| / |H|` fixed points.
pub fn coset_fixity_profile(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<FixityProfile> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let classes = g.conjugacy_classes_with(limits)?;
    let counts = class_intersections(&classes, h, limits)?;
    let fixes = classes
        .iter()
        .zip(&counts)
        .map(|(c, &k)| {
            let n = c.centralizer_order * k;
            if n % h.order() != 0 {
                return Err(Error::validation("non-integral fixed-point count"));
            }
            Ok(n / h.order())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FixityProfile::build(&classes, g.order() / h.order(), &fixes))
}

pub fn view_profile(view: &ActionView, limits: &Limits) -> Result<FixityProfile> {
    match view {
        ActionView::Explicit(g) => fixity_profile_with(g, limits),
        ActionView::Cosets { group, sub } => coset_fixity_profile(group, sub, limits),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityRow {
    pub class: usize,
    pub fpr_points: Ratio,
    pub fpr_blocks: Ratio,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub rows: Vec<MonotonicityRow>,
    pub violations: usize,
}

/// Compares, for every class, the fixed-point ratio on points with the one
/// on blocks of `sys`.
pub fn check_block_monotonicity(action: &PermGroup, sys: &BlockSystem) -> Result<MonotonicityReport> {
    if sys.degree() != action.degree() {
        return Err(Error::DegreeMismatch {
            left: action.degree(),
            right: sys.degree(),
        });
    }
    if !sys.is_invariant(action) {
        return Err(Error::NotInvariant);
    }
    let classes = action.conjugacy_classes()?;
    let rows: Vec<MonotonicityRow> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let on_blocks = sys.induced(&c.rep).expect("system is invariant");
            let fpr_points = Ratio::new(c.fix_count() as u128, action.degree() as u128);
            let fpr_blocks = Ratio::new(on_blocks.fix_count() as u128, sys.block_count() as u128);
            MonotonicityRow {
                class: i,
                fpr_points,
                fpr_blocks,
                holds: fpr_points <= fpr_blocks,
            }
        })
        .collect();
    let violations = rows.iter().filter(|r| !r.holds).count();
    Ok(MonotonicityReport { rows, violations })
}

/// Fixed blocks of `g` split into those on which `g` acts non-trivially
/// (`sigma1`) and those it fixes pointwise (`sigma2`); `total` adds up the
/// fixed points inside fixed blocks, which is all of `Fix(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixDecomposition {
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub total: usize,
}

pub fn fix_decomposition(action: &PermGroup, sys: &BlockSystem, g: &Permutation) -> Result<FixDecomposition> {
    if !action.contains(g)? {
        return Err(Error::NotInGroup);
    }
    if sys.degree() != action.degree() || !sys.is_invariant(action) {
        return Err(Error::NotInvariant);
    }
    let mut out = FixDecomposition {
        sigma1: Vec::new(),
        sigma2: Vec::new(),
        total: 0,
    };
    for (i, block) in sys.blocks().iter().enumerate() {
        if sys.block_of(g.image(block[0])) != i {
            continue;
        }
        let fixed = block.iter().filter(|&&x| g.image(x) == x).count();
        out.total += fixed;
        if fixed == block.len() {
            out.sigma2.push(i);
        } else {
            out.sigma1.push(i);
        }
    }
    Ok(out)
}

/// Number of transvections among the upper unitriangular `n × n` matrices
/// over the field of two elements: `(n−2)·2^(n−1) + 1`.
pub fn transvection_count(n: u32) -> Result<u128> {
    if n < 2 {
        return Err(Error::precondition("transvection count needs n ≥ 2"));
    }
    if n > 120 {
        return Err(Error::resource("transvection count overflows"));
    }
    Ok((n as u128 - 2) * (1u128 << (n - 1)) + 1)
}

/// The same count via `T(2) = 1`, `T(n) = 2T(n−1) + 2^(n−1) − 1`.
pub fn transvection_count_recursive(n: u32) -> Result<u128> {
    if n < 2 {
        return Err(Error::precondition("transvection count needs n ≥ 2"));
    }
    if n > 120 {
        return Err(Error::resource("transvection count overflows"));
    }
    Ok((3..=n).fold(1u128, |t, k| 2 * t + (1u128 << (k - 1)) - 1))
}

/// The three hypotheses under which the two-thirds bound is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub transitive: bool,
    pub stabiliser_2group: bool,
    pub o2_trivial: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.transitive && self.stabiliser_2group && self.o2_trivial
    }

    /// Name of the first violated hypothesis.
    pub fn violated(&self) -> Option<&'static str> {
        if !self.transitive {
            Some("action is not transitive")
        } else if !self.stabiliser_2group {
            Some("point stabiliser is not a 2-group")
        } else if !self.o2_trivial {
            Some("O2 is not trivial")
        } else {
            None
        }
    }
}

pub fn check_hypotheses(view: &ActionView, limits: &Limits) -> Result<Hypotheses> {
    let transitive = view.is_transitive();
    let stabiliser_2group = transitive && view.point_stabilizer().is_p_group(2);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let o2_trivial = o2_with(view.group(), &mut rng, limits)?.is_trivial();
    Ok(Hypotheses {
        transitive,
        stabiliser_2group,
        o2_trivial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail { witness_class: usize, witness: String },
    Skip { reason: String },
    Timeout { reason: String },
    /// The entry could not be evaluated (bad input or an internal error).
    Error { reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail { .. } => "FAIL",
            Verdict::Skip { .. } => "SKIP",
            Verdict::Timeout { .. } => "TIMEOUT",
            Verdict::Error { .. } => "ERROR",
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub hypotheses: Hypotheses,
    pub verdict: Verdict,
    pub profile: FixityProfile,
}

/// The verdict of the profile against `3·mindeg ≥ 2·degree`, ignoring
/// hypotheses.
pub fn bound_verdict(profile: &FixityProfile) -> Verdict {
    if profile.meets_two_thirds() {
        return Verdict::Pass;
    }
    let w = profile.argmax_class.expect("a failing group is non-trivial");
    Verdict::Fail {
        witness_class: w,
        witness: profile.classes[w].rep.clone(),
    }
}

pub fn theorem_bound_check(action: &PermGroup) -> Result<BoundCheck> {
    theorem_bound_check_view(&ActionView::Explicit(action.clone()), &Limits::default())
}

/// Checks the hypotheses, then the bound. Violated hypotheses give SKIP;
/// the profile is computed either way.
pub fn theorem_bound_check_view(view: &ActionView, limits: &Limits) -> Result<BoundCheck> {
    let hypotheses = check_hypotheses(view, limits)?;
    let profile = view_profile(view, limits)?;
    let verdict = match hypotheses.violated() {
        Some(reason) => Verdict::Skip { reason: reason.into() },
        None => bound_verdict(&profile),
    };
    Ok(BoundCheck {
        hypotheses,
        verdict,
        profile,
    })
}
