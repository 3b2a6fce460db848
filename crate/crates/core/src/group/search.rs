//! Backtrack search over a stabiliser chain: centralisers, normalisers,
//! intersections and conjugating elements.

use rustc_hash::FxHashSet;

use super::{Chain, PermGroup};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::Permutation;

/// A property of group elements, with a test on partial base images used
/// for pruning. `images[j]` is the image of `base[j]` for `j ≤ depth`.
pub(crate) trait Property {
    fn viable(&self, base: &[usize], images: &[usize]) -> bool;
    fn accept(&self, g: &Permutation) -> bool;
}

struct Search<'a> {
    chain: &'a Chain,
    base: Vec<usize>,
    prop: &'a dyn Property,
    limits: &'a Limits,
    images: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            self.limits.check_time()?;
        }
        Ok(())
    }

    /// Extends the partial element `suffix` (which fixes the images of
    /// `base[..depth]`) through levels `depth..`, returning the first
    /// element with the property.
    fn descend(&mut self, depth: usize, suffix: &Permutation) -> Result<Option<Permutation>> {
        self.tick()?;
        if depth == self.chain.levels.len() {
            return Ok(self.prop.accept(suffix).then(|| suffix.clone()));
        }
        let level = &self.chain.levels[depth];
        for (i, &delta) in level.orbit.iter().enumerate() {
            let gamma = suffix.image(delta);
            self.images.truncate(depth);
            self.images.push(gamma);
            if !self.prop.viable(&self.base[..=depth], &self.images) {
                continue;
            }
            let next = level.transversal[i].then(suffix);
            if let Some(g) = self.descend(depth + 1, &next)? {
                return Ok(Some(g));
            }
        }
        self.images.truncate(depth);
        Ok(None)
    }
}

/// Finds some element of `group` with the property.
pub(crate) fn find_element(
    group: &PermGroup,
    prop: &dyn Property,
    limits: &Limits,
) -> Result<Option<Permutation>> {
    let mut s = Search {
        chain: &group.chain,
        base: group.base(),
        prop,
        limits,
        images: Vec::new(),
        nodes: 0,
    };
    s.descend(0, &group.identity())
}

/// Computes the subgroup of elements with the property, which must be
/// closed under products. `known` must be a subgroup of the answer.
pub(crate) fn subgroup_search(
    group: &PermGroup,
    prop: &dyn Property,
    known: &PermGroup,
    limits: &Limits,
) -> Result<PermGroup> {
    let chain = &group.chain;
    let base = group.base();
    let k = chain.levels.len();
    let mut result = known.clone();
    let mut s = Search {
        chain,
        base: base.clone(),
        prop,
        limits,
        images: Vec::new(),
        nodes: 0,
    };
    for depth in (0..k).rev() {
        let mut stab = result.pointwise_stabilizer(&base[..depth]);
        let b = base[depth];
        let mut covered: FxHashSet<usize> = stab.orbit(b).into_iter().collect();
        let mut failed: FxHashSet<usize> = FxHashSet::default();
        let level = &chain.levels[depth];
        for (i, &gamma) in level.orbit.iter().enumerate().skip(1) {
            if covered.contains(&gamma) || failed.contains(&gamma) {
                continue;
            }
            s.images.clear();
            s.images.extend_from_slice(&base[..depth]);
            s.images.push(gamma);
            let found = if prop.viable(&base[..=depth], &s.images) {
                s.descend(depth + 1, &level.transversal[i])?
            } else {
                None
            };
            match found {
                Some(g) => {
                    stab = stab.extend(&g);
                    result = result.extend(&g);
                    covered = stab.orbit(b).into_iter().collect();
                }
                None => {
                    failed.extend(stab.orbit(gamma));
                }
            }
        }
    }
    Ok(result)
}

fn same_degree(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DegreeMismatch { left: a, right: b });
    }
    Ok(())
}

/// `g` with `x^g = y`: the map must send each `x`-cycle through a base
/// point onto the matching `y`-cycle.
struct Conjugating<'a> {
    x: &'a Permutation,
    y: &'a Permutation,
    x_len: Vec<usize>,
    y_len: Vec<usize>,
}

fn cycle_lengths(p: &Permutation) -> Vec<usize> {
    let mut len = vec![1; p.degree()];
    for c in p.cycles() {
        for &x in &c {
            len[x] = c.len();
        }
    }
    len
}

impl<'a> Conjugating<'a> {
    fn new(x: &'a Permutation, y: &'a Permutation) -> Self {
        Conjugating {
            x,
            y,
            x_len: cycle_lengths(x),
            y_len: cycle_lengths(y),
        }
    }
}

impl Property for Conjugating<'_> {
    fn viable(&self, base: &[usize], images: &[usize]) -> bool {
        let d = base.len() - 1;
        if self.x_len[base[d]] != self.y_len[images[d]] {
            return false;
        }
        // Walk the x-cycle of the new base point; it must agree with any
        // earlier base point on the same cycle.
        let (mut p, mut q) = (base[d], images[d]);
        for _ in 0..self.x_len[base[d]] {
            if (0..d).any(|j| (base[j] == p) != (images[j] == q)) {
                return false;
            }
            p = self.x.image(p);
            q = self.y.image(q);
        }
        true
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.x.then(g) == g.then(self.y)
    }
}

/// `g` normalising `h`: orbit sizes and orbit membership must be preserved.
struct Normalizing<'a> {
    h: &'a PermGroup,
    orbit_id: Vec<usize>,
    orbit_size: Vec<usize>,
}

impl<'a> Normalizing<'a> {
    fn new(h: &'a PermGroup) -> Self {
        let n = h.degree();
        let mut orbit_id = vec![usize::MAX; n];
        let mut orbit_size = vec![0; n];
        let mut next = 0;
        for p in 0..n {
            if orbit_id[p] == usize::MAX {
                let orb = h.orbit(p);
                for &q in &orb {
                    orbit_id[q] = next;
                    orbit_size[q] = orb.len();
                }
                next += 1;
            }
        }
        Normalizing {
            h,
            orbit_id,
            orbit_size,
        }
    }
}

impl Property for Normalizing<'_> {
    fn viable(&self, base: &[usize], images: &[usize]) -> bool {
        let d = base.len() - 1;
        if self.orbit_size[base[d]] != self.orbit_size[images[d]] {
            return false;
        }
        (0..d).all(|j| {
            (self.orbit_id[base[j]] == self.orbit_id[base[d]])
                == (self.orbit_id[images[j]] == self.orbit_id[images[d]])
        })
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.h.is_normalized_by(g)
    }
}

/// Membership in a second group whose chain shares the search base.
struct InGroup<'a> {
    other: &'a PermGroup,
}

impl Property for InGroup<'_> {
    fn viable(&self, _base: &[usize], images: &[usize]) -> bool {
        // Sift the partial image tuple through the other chain.
        let levels = &self.other.chain.levels;
        let mut img: Vec<usize> = images.to_vec();
        for (j, level) in levels.iter().enumerate().take(images.len()) {
            let Some(inv) = level.inv_rep(img[j]) else {
                return false;
            };
            for x in img[j..].iter_mut() {
                *x = inv.image(*x);
            }
        }
        true
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.other.has(g)
    }
}

impl PermGroup {
    /// `C_G(x)`. `x` need not lie in the group.
    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        self.centralizer_with(x, &Limits::default())
    }

    pub fn centralizer_with(&self, x: &Permutation, limits: &Limits) -> Result<PermGroup> {
        same_degree(self.degree, x.degree())?;
        let known = if self.has(x) {
            PermGroup::with_degree(self.degree, vec![x.clone()])?
        } else {
            PermGroup::trivial(self.degree)
        };
        let g = self.rebase(&x.fix_and_support().1);
        subgroup_search(&g, &Conjugating::new(x, x), &known, limits)
    }

    /// `N_G(H)`. `H` need not lie in the group.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        self.normalizer_with(h, &Limits::default())
    }

    pub fn normalizer_with(&self, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        same_degree(self.degree, h.degree())?;
        let known = if h.is_subgroup_of(self) {
            h.clone()
        } else {
            PermGroup::trivial(self.degree)
        };
        subgroup_search(self, &Normalizing::new(h), &known, limits)
    }

    /// `G ∩ H`.
    pub fn intersection(&self, h: &PermGroup) -> Result<PermGroup> {
        self.intersection_with(h, &Limits::default())
    }

    pub fn intersection_with(&self, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        same_degree(self.degree, h.degree())?;
        if h.is_subgroup_of(self) {
            return Ok(h.clone());
        }
        if self.is_subgroup_of(h) {
            return Ok(self.clone());
        }
        let base = self.base();
        let h = PermGroup::with_known_order(self.degree, h.generators.clone(), h.order(), &base);
        subgroup_search(
            self,
            &InGroup { other: &h },
            &PermGroup::trivial(self.degree),
            limits,
        )
    }

    /// Some `g` in the group with `x^g = y`, if any.
    pub fn conjugating_element(
        &self,
        x: &Permutation,
        y: &Permutation,
    ) -> Result<Option<Permutation>> {
        same_degree(self.degree, x.degree())?;
        same_degree(self.degree, y.degree())?;
        if x.cycle_type() != y.cycle_type() {
            return Ok(None);
        }
        let g = self.rebase(&x.fix_and_support().1);
        find_element(&g, &Conjugating::new(x, y), &Limits::default())
    }

    pub fn are_conjugate(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        Ok(self.conjugating_element(x, y)?.is_some())
    }
}
