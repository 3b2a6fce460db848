//! Top-down descent through block systems, pruning classes whose
//! fixed-point ratio on a quotient is already at most the threshold.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::ratio::Ratio;
use crate::structure::{all_block_systems, BlockSystem, DEFAULT_SEED};

/// How many pruned (system, class) pairs are re-checked on the full action.
const RECHECKS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentLevel {
    /// Length of the longest chain of systems from the one-block system.
    pub depth: usize,
    pub fingerprint: String,
    pub blocks: usize,
    /// Some still-live non-identity class has ratio above the threshold.
    pub surviving: bool,
    /// Largest ratio on the blocks over non-identity classes.
    pub max_fpr: Ratio,
    /// Live classes with ratio above the threshold.
    pub surviving_classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentResult {
    pub threshold: Ratio,
    pub levels: Vec<DescentLevel>,
    /// Classes still above the threshold on the points themselves.
    pub survivors: Vec<usize>,
    /// Pruned pairs re-checked directly and whether all of them held.
    pub rechecked: usize,
    pub recheck_ok: bool,
}

/// Walks the lattice of block systems from the coarsest non-trivial ones
/// down to the points. A class is pruned at a system when its ratio there
/// is at most `threshold` (comparison is strict: equality prunes), and a
/// system is examined only while some class is still live on every system
/// directly above it.
pub fn descent(g: &PermGroup, omega: usize, threshold: Ratio) -> Result<DescentResult> {
    if omega >= g.degree() {
        return Err(Error::precondition("point outside the domain"));
    }
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let classes = g.conjugacy_classes()?;
    let nonid: Vec<usize> = (0..classes.len())
        .filter(|&i| classes.get(i).element_order > 1)
        .collect();
    // Coarse to fine; the one-block system comes first.
    let mut systems: Vec<BlockSystem> = all_block_systems(g)?;
    systems.sort_by_key(|s| (s.block_count(), s.fingerprint()));
    let n = systems.len();
    // parents[i]: systems directly coarser than systems[i].
    let coarser: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && systems[i].refines(&systems[j])).collect())
        .collect();
    let parents: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            coarser[i]
                .iter()
                .copied()
                .filter(|&j| !coarser[i].iter().any(|&k| k != j && coarser[k].contains(&j)))
                .collect()
        })
        .collect();
    let mut depth = vec![0usize; n];
    let mut live: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut levels = Vec::new();
    let mut pruned: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        depth[i] = parents[i].iter().map(|&j| depth[j] + 1).max().unwrap_or(0);
        if systems[i].block_count() == 1 {
            live[i] = Some(nonid.clone());
            continue;
        }
        // Live here only if live on every parent.
        let mut cand: Option<Vec<usize>> = None;
        for &j in &parents[i] {
            let pl = live[j].clone().unwrap_or_default();
            cand = Some(match cand {
                None => pl,
                Some(c) => c.into_iter().filter(|x| pl.contains(x)).collect(),
            });
        }
        let cand = cand.unwrap_or_default();
        if cand.is_empty() {
            live[i] = Some(Vec::new());
            continue;
        }
        let sys = &systems[i];
        let fpr = |c: usize| {
            let on_blocks = sys.induced(&classes.get(c).rep).expect("systems are invariant");
            Ratio::new(on_blocks.fix_count() as u128, sys.block_count() as u128)
        };
        let max_fpr = nonid.iter().map(|&c| fpr(c)).max().unwrap_or(Ratio::zero());
        let mut alive = Vec::new();
        for &c in &cand {
            if fpr(c) > threshold {
                alive.push(c);
            } else {
                pruned.push((i, c));
            }
        }
        levels.push(DescentLevel {
            depth: depth[i],
            fingerprint: sys.fingerprint(),
            blocks: sys.block_count(),
            surviving: !alive.is_empty(),
            max_fpr,
            surviving_classes: alive.clone(),
        });
        live[i] = Some(alive);
    }
    let points = systems
        .iter()
        .position(|s| s.block_count() == g.degree())
        .expect("the singleton system is always present");
    let survivors = live[points].clone().unwrap_or_default();
    // Re-check a sample of pruned pairs directly on the points.
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    pruned.shuffle(&mut rng);
    pruned.truncate(RECHECKS);
    let recheck_ok = pruned.iter().all(|&(_, c)| {
        Ratio::new(classes.get(c).fix_count() as u128, g.degree() as u128) <= threshold
    });
    Ok(DescentResult {
        threshold,
        levels,
        survivors,
        rechecked: pruned.len(),
        recheck_ok,
    })
}
