//! Orbits, block systems and quotient actions.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Orbits of the group, each sorted, ordered by least element.
pub fn orbits(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for p in 0..n {
        if seen[p] {
            continue;
        }
        let mut orb = g.orbit(p);
        for &q in &orb {
            seen[q] = true;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// A partition of `{0, …, n-1}` into blocks of equal size. Block indices
/// are canonical: blocks are numbered in order of their least point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockSystem {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    /// Builds the partition from any labelling of the points.
    pub fn from_labels(labels: &[usize]) -> Result<BlockSystem> {
        if labels.is_empty() {
            return Err(Error::precondition("empty domain"));
        }
        let mut relabel = rustc_hash::FxHashMap::default();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, l) in labels.iter().enumerate() {
            let id = *relabel.entry(*l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(x);
            block_of.push(id);
        }
        let size = blocks[0].len();
        if blocks.iter().any(|b| b.len() != size) {
            return Err(Error::precondition("blocks have unequal sizes"));
        }
        Ok(BlockSystem { block_of, blocks })
    }

    pub fn from_blocks(degree: usize, blocks: &[Vec<usize>]) -> Result<BlockSystem> {
        let mut labels = vec![usize::MAX; degree];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= degree || labels[x] != usize::MAX {
                    return Err(Error::precondition("blocks do not partition the domain"));
                }
                labels[x] = i;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::precondition("blocks do not cover the domain"));
        }
        Self::from_labels(&labels)
    }

    pub fn singletons(degree: usize) -> BlockSystem {
        Self::from_labels(&(0..degree).collect::<Vec<_>>()).expect("non-empty domain")
    }

    pub fn universal(degree: usize) -> BlockSystem {
        Self::from_labels(&vec![0; degree]).expect("non-empty domain")
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    /// One block or all singletons.
    pub fn is_trivial(&self) -> bool {
        self.block_count() == 1 || self.block_size() == 1
    }

    /// Canonical description, equal for equal partitions: 1-based blocks.
    pub fn fingerprint(&self) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect::<Vec<_>>()
            .join("")
    }

    /// The permutation induced on blocks, if `g` preserves the partition.
    pub fn induced(&self, g: &Permutation) -> Option<Permutation> {
        let mut img = vec![usize::MAX; self.block_count()];
        for (i, b) in self.blocks.iter().enumerate() {
            let t = self.block_of[g.image(b[0])];
            if b.iter().any(|&x| self.block_of[g.image(x)] != t) {
                return None;
            }
            img[i] = t;
        }
        Permutation::from_images(img).ok()
    }

    pub fn is_invariant(&self, g: &PermGroup) -> bool {
        g.degree() == self.degree() && g.generators().iter().all(|x| self.induced(x).is_some())
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &BlockSystem) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| coarser.block_of[x] == coarser.block_of[b[0]]))
    }

    /// Composes with a partition of the blocks themselves.
    pub fn pull_back(&self, on_blocks: &BlockSystem) -> BlockSystem {
        let labels: Vec<usize> = self.block_of.iter().map(|&b| on_blocks.block_of(b)).collect();
        Self::from_labels(&labels).expect("pull-back of an equipartition")
    }
}

/// Union–find with path halving.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller root so labels are stable.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// The finest invariant partition in which all of `seed` lies in one part.
/// For a transitive group this is a block system.
pub fn block_closure(g: &PermGroup, seed: &[usize]) -> BlockSystem {
    let n = g.degree();
    let mut dsu = Dsu::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for w in seed.windows(2) {
        if dsu.union(w[0], w[1]) {
            queue.push((w[0], w[1]));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for s in g.generators() {
            let (x, y) = (s.image(a), s.image(b));
            if dsu.union(x, y) {
                queue.push((x, y));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| dsu.find(x)).collect();
    BlockSystem::from_labels(&labels).expect("closure of a transitive group is an equipartition")
}

fn require_transitive(g: &PermGroup) -> Result<()> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    Ok(())
}

/// Representatives of the orbits of the stabiliser of 0 on the other points.
fn suborbit_reps(g: &PermGroup) -> Vec<usize> {
    let stab = g.stabilizer(0);
    let mut seen = vec![false; g.degree()];
    seen[0] = true;
    let mut reps = Vec::new();
    for d in 1..g.degree() {
        if !seen[d] {
            for x in stab.orbit(d) {
                seen[x] = true;
            }
            reps.push(d);
        }
    }
    reps
}

/// All minimal non-trivial block systems; empty iff the group is primitive.
pub fn minimal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    require_transitive(g)?;
    if g.degree() <= 2 {
        return Ok(Vec::new());
    }
    let mut cands: Vec<BlockSystem> = Vec::new();
    for d in suborbit_reps(g) {
        let sys = block_closure(g, &[0, d]);
        if sys.block_count() > 1 && !cands.contains(&sys) {
            cands.push(sys);
        }
    }
    let minimal: Vec<BlockSystem> = cands
        .iter()
        .filter(|s| !cands.iter().any(|t| t != *s && t.refines(s)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// Action on the blocks of an invariant system.
pub fn block_action(g: &PermGroup, sys: &BlockSystem) -> Result<Vec<Permutation>> {
    g.generators()
        .iter()
        .map(|x| sys.induced(x).ok_or(Error::NotInvariant))
        .collect()
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    Ok(minimal_block_systems(g)?.is_empty())
}

/// All maximal proper block systems (those on which the group acts
/// primitively, other than the one-block partition). Empty iff primitive.
pub fn maximal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    require_transitive(g)?;
    let mut out: Vec<BlockSystem> = Vec::new();
    let mut seen: FxHashSet<String> = FxHashSet::default();
    for sys in minimal_block_systems(g)? {
        let quot = PermGroup::with_degree(sys.block_count(), block_action(g, &sys)?)?;
        let upper = maximal_block_systems(&quot)?;
        if upper.is_empty() {
            if seen.insert(sys.fingerprint()) {
                out.push(sys);
            }
        } else {
            for u in upper {
                let full = sys.pull_back(&u);
                if seen.insert(full.fingerprint()) {
                    out.push(full);
                }
            }
        }
    }
    Ok(out)
}

/// Every invariant partition, including the two trivial ones, ordered by
/// block size. Found by closing each known block with one extra point.
pub fn all_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    require_transitive(g)?;
    let n = g.degree();
    let mut out = vec![BlockSystem::singletons(n)];
    let mut seen: FxHashSet<String> = FxHashSet::default();
    seen.insert(out[0].fingerprint());
    let mut i = 0;
    while i < out.len() {
        let base: Vec<usize> = out[i].block(out[i].block_of(0)).to_vec();
        let mut inside = vec![false; n];
        for &x in &base {
            inside[x] = true;
        }
        for d in 0..n {
            if inside[d] {
                continue;
            }
            let mut seed = base.clone();
            seed.push(d);
            let sys = block_closure(g, &seed);
            if seen.insert(sys.fingerprint()) {
                out.push(sys);
            }
        }
        i += 1;
    }
    out.sort_by_key(|s| (s.block_size(), s.fingerprint()));
    Ok(out)
}

/// The action on blocks and its kernel (elements fixing every block).
pub fn quotient_action(g: &PermGroup, sys: &BlockSystem) -> Result<(PermGroup, PermGroup)> {
    if sys.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: sys.degree(),
        });
    }
    let images = block_action(g, sys)?;
    if g.generators().is_empty() {
        return Ok((
            PermGroup::trivial(sys.block_count()),
            PermGroup::trivial(g.degree()),
        ));
    }
    let hom = Homomorphism::new(g, &images)?;
    Ok((hom.image(), hom.kernel()))
}

/// Stabiliser of a set of points, via the action on blocks when the set is
/// a block; otherwise by adjoining the set as an extra point.
pub fn setwise_stabilizer(g: &PermGroup, set: &[usize]) -> Result<PermGroup> {
    if g.generators().is_empty() {
        return Ok(g.clone());
    }
    // Orbit of the set under g, as sorted point lists.
    let mut start = set.to_vec();
    start.sort_unstable();
    let mut orbit: Vec<Vec<usize>> = vec![start.clone()];
    let mut index = rustc_hash::FxHashMap::default();
    index.insert(start, 0usize);
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); g.generators().len()];
    let mut i = 0;
    while i < orbit.len() {
        for (j, s) in g.generators().iter().enumerate() {
            let mut img: Vec<usize> = orbit[i].iter().map(|&x| s.image(x)).collect();
            img.sort_unstable();
            let next = orbit.len();
            let id = *index.entry(img.clone()).or_insert(next);
            if id == next {
                orbit.push(img);
            }
            images[j].push(id);
        }
        i += 1;
        if orbit.len() > 100_000 {
            return Err(Error::resource("set orbit too large"));
        }
    }
    let perms: Vec<Permutation> = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<_>>()?;
    let hom = Homomorphism::new(g, &perms)?;
    let image = hom.image();
    let stab = image.stabilizer(0);
    hom.preimage_group(&stab)
}
