//! Permutation groups given by generators, backed by a stabiliser chain.

mod chain;
pub(crate) mod hom;
pub mod classes;
pub mod search;

use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::Permutation;

pub use classes::{ClassData, ConjugacyClasses};
pub(crate) use chain::Chain;

/// A permutation group with a verified base and strong generating set.
///
/// Immutable once built. Conjugacy classes are cached on first successful
/// computation behind a `OnceLock`, so concurrent readers always observe a
/// complete value.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Chain,
    classes: OnceLock<Arc<ConjugacyClasses>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<()> {
    if degree == 0 {
        return Err(Error::InvalidPermutation("degree must be at least 1".into()));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    Ok(())
}

fn strip_identity(gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

const CHAIN_SEED: u64 = 0x5eed_c4a1;

impl PermGroup {
    /// Builds the group generated by `gens` (Schreier–Sims). All generators
    /// must share a degree; an empty list is rejected because the degree
    /// would be unknown.
    pub fn new(gens: Vec<Permutation>) -> Result<PermGroup> {
        let degree = gens
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::precondition("no generators given; use PermGroup::trivial"))?;
        Self::with_degree(degree, gens)
    }

    pub fn with_degree(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        Self::with_base(degree, gens, &[])
    }

    /// Builds the group with a chain whose base starts with `prefix`.
    pub fn with_base(degree: usize, gens: Vec<Permutation>, prefix: &[usize]) -> Result<PermGroup> {
        check_degrees(degree, &gens)?;
        let gens = strip_identity(gens);
        let mut chain = Chain::with_base(degree, prefix);
        for g in &gens {
            chain.absorb(g);
        }
        chain.complete();
        Ok(Self::from_parts(degree, gens, chain))
    }

    /// Builds the group and checks its order against `order`.
    pub fn with_order(
        degree: usize,
        gens: Vec<Permutation>,
        order: u128,
        prefix: &[usize],
    ) -> Result<PermGroup> {
        let group = Self::with_base(degree, gens, prefix)?;
        if group.order() != order {
            return Err(Error::OrderMismatch {
                name: "group".into(),
                expected: order,
                actual: group.order(),
            });
        }
        Ok(group)
    }

    /// Builds a group whose order is known for certain (a conjugate, a
    /// rebased copy, a quotient of known size). Random Schreier–Sims stops
    /// as soon as the chain reaches `order`, which is sound only because an
    /// incomplete chain never exceeds the true order; a wrong `order` is a
    /// logic error, so the deterministic construction is the fallback.
    pub(crate) fn with_known_order(
        degree: usize,
        gens: Vec<Permutation>,
        order: u128,
        prefix: &[usize],
    ) -> PermGroup {
        let gens = strip_identity(gens);
        let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED);
        let mut chain = Chain::with_base(degree, prefix);
        for g in &gens {
            chain.absorb(g);
        }
        if !chain.complete_to_order(&gens, order, &mut rng) {
            chain.complete();
        }
        let group = Self::from_parts(degree, gens, chain);
        debug_assert_eq!(group.order(), order);
        group
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Permutation>, chain: Chain) -> PermGroup {
        PermGroup {
            degree,
            generators: gens,
            chain,
            classes: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        Self::from_parts(degree, Vec::new(), Chain::with_base(degree, &[]))
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        Self::with_known_order(n, gens, factorial(n), &[])
    }

    pub fn alternating(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        for i in 2..n {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap());
        }
        let order = if n >= 2 { factorial(n) / 2 } else { 1 };
        Self::with_known_order(n.max(1), gens, order, &[])
    }

    /// Cyclic group acting regularly.
    pub fn cyclic(n: usize) -> PermGroup {
        let gens = vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()];
        Self::with_known_order(n, gens, n as u128, &[])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub(crate) fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    pub(crate) fn has(&self, p: &Permutation) -> bool {
        self.chain.contains(p)
    }

    /// Uniformly random element: a product of random transversal elements.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.chain.levels.iter().rev() {
            let i = rng.gen_range(0..level.transversal.len());
            g = g.then(&level.transversal[i]);
        }
        g
    }

    /// Every element, each exactly once, in chain order.
    pub fn elements(&self) -> Elements<'_> {
        Elements::new(self)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, point)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// A copy of this group whose chain starts at `prefix`.
    pub fn rebase(&self, prefix: &[usize]) -> PermGroup {
        if self.base().starts_with(prefix) {
            return self.clone();
        }
        Self::with_known_order(self.degree, self.generators.clone(), self.order(), prefix)
    }

    /// Pointwise stabiliser of the given points, in order.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let g = self.rebase(points);
        let k = points.len();
        let mut chain = Chain::with_base(self.degree, &[]);
        chain.levels = g.chain.levels[k..].to_vec();
        let gens = chain
            .levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        Self::from_parts(self.degree, gens, chain)
    }

    pub fn stabilizer(&self, point: usize) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// The subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        check_degrees(self.degree, &gens)?;
        if gens.iter().any(|g| !self.has(g)) {
            return Err(Error::NotSubgroup);
        }
        Self::with_degree(self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        self.generators.iter().all(|h| self.has(&h.conjugate_by(g)))
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.generators.iter().all(|g| self.is_normalized_by(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u128) -> bool {
        let mut n = self.order();
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        Self::with_known_order(self.degree, gens, self.order(), &[])
    }

    /// The subgroup generated by both groups.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::with_degree(self.degree, gens).expect("same degree")
    }

    /// Adds one element to the generators.
    pub fn extend(&self, g: &Permutation) -> PermGroup {
        if self.has(g) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        let mut chain = self.chain.clone();
        chain.absorb(g);
        chain.complete();
        Self::from_parts(self.degree, gens, chain)
    }

    /// Restriction to an invariant set of points, relabelled in the order
    /// given.
    pub fn restrict_to(&self, points: &[usize]) -> Result<PermGroup> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let imgs: Option<Vec<usize>> = points
                .iter()
                .map(|&p| Some(index[g.image(p)]).filter(|&x| x != usize::MAX))
                .collect();
            let imgs = imgs.ok_or(Error::NotInvariant)?;
            gens.push(Permutation::from_images(imgs)?);
        }
        Self::with_degree(points.len(), gens)
    }

    /// Conjugacy classes with the default limits, cached.
    pub fn conjugacy_classes(&self) -> Result<Arc<ConjugacyClasses>> {
        self.conjugacy_classes_with(&Limits::default())
    }

    pub fn conjugacy_classes_with(&self, limits: &Limits) -> Result<Arc<ConjugacyClasses>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let computed = Arc::new(ConjugacyClasses::compute(self, limits)?);
        Ok(self.classes.get_or_init(|| computed).clone())
    }
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Iterator over all group elements. Each element is
/// `t_{k-1} · … · t_0` (left to right) with `t_j` from the level-`j`
/// transversal; level 0 varies fastest.
pub struct Elements<'a> {
    group: &'a PermGroup,
    counters: Vec<usize>,
    /// `partial[j]` is the product of the chosen factors from level `j` down
    /// to the deepest level; `partial[k]` is the identity.
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let k = group.chain.levels.len();
        let mut partial = vec![group.identity(); k + 1];
        for j in (0..k).rev() {
            partial[j] = partial[j + 1].then(&group.chain.levels[j].transversal[0]);
        }
        Elements {
            group,
            counters: vec![0; k],
            partial,
            done: false,
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.partial[0].clone();
        let levels = &self.group.chain.levels;
        let k = levels.len();
        let mut j = 0;
        while j < k && self.counters[j] + 1 == levels[j].transversal.len() {
            j += 1;
        }
        if j == k {
            self.done = true;
        } else {
            self.counters[j] += 1;
            self.partial[j] = self.partial[j + 1].then(&levels[j].transversal[self.counters[j]]);
            for l in (0..j).rev() {
                self.counters[l] = 0;
                self.partial[l] = self.partial[l + 1].then(&levels[l].transversal[0]);
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (0, usize::try_from(self.group.order()).ok())
    }
}
