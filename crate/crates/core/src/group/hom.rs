//! Homomorphisms given by a second action, realised as a combined action on
//! the disjoint union of both domains.

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The action of `G` (degree `n`) together with an image action of degree
/// `m`, stored as one group on `m + n` points with the image points first.
/// Listing the image points first in the base makes the kernel a
/// pointwise stabiliser and preimages a matter of reading off transversals.
#[derive(Debug, Clone)]
pub(crate) struct Homomorphism {
    combined: PermGroup,
    source_degree: usize,
    image_degree: usize,
}

impl Homomorphism {
    /// `images[i]` is the image of `group.generators()[i]`.
    pub fn new(group: &PermGroup, images: &[Permutation]) -> Result<Self> {
        let n = group.degree();
        let m = images.first().map_or(1, Permutation::degree);
        if images.len() != group.generators().len() {
            return Err(Error::precondition("one image per generator is required"));
        }
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .zip(images)
            .map(|(g, h)| {
                let mut img: Vec<u32> = h.images().to_vec();
                img.extend(g.images().iter().map(|&x| x + m as u32));
                Permutation::from_raw(img)
            })
            .collect();
        let prefix: Vec<usize> = (0..m).collect();
        // The combined group maps onto G faithfully, so its order is |G|
        // exactly when the images define a homomorphism.
        let combined = PermGroup::with_order(m + n, gens, group.order(), &prefix)
            .map_err(|_| Error::validation("generator images do not define a homomorphism"))?;
        Ok(Homomorphism {
            combined,
            source_degree: n,
            image_degree: m,
        })
    }

    fn split(&self, g: &Permutation) -> (Permutation, Permutation) {
        let m = self.image_degree;
        let img = Permutation::from_raw(g.images()[..m].to_vec());
        let src = Permutation::from_raw(g.images()[m..].iter().map(|&x| x - m as u32).collect());
        (src, img)
    }

    pub fn kernel(&self) -> PermGroup {
        let prefix: Vec<usize> = (0..self.image_degree).collect();
        let k = self.combined.pointwise_stabilizer(&prefix);
        let gens: Vec<Permutation> = k.generators().iter().map(|g| self.split(g).0).collect();
        PermGroup::with_known_order(self.source_degree, gens, k.order(), &[])
    }

    pub fn image(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .combined
            .generators()
            .iter()
            .map(|g| self.split(g).1)
            .collect();
        let k = self.kernel().order();
        PermGroup::with_known_order(self.image_degree, gens, self.combined.order() / k, &[])
    }

    /// Some element of `G` mapping to `y`.
    pub fn preimage(&self, y: &Permutation) -> Result<Permutation> {
        let m = self.image_degree;
        if y.degree() != m {
            return Err(Error::DegreeMismatch {
                left: m,
                right: y.degree(),
            });
        }
        let mut target: Vec<usize> = (0..m).map(|x| y.image(x)).collect();
        let mut acc = Permutation::identity(m + self.source_degree);
        for level in &self.combined.chain().levels {
            if level.base >= m {
                break;
            }
            let want = target[level.base];
            let (Some(t), Some(inv)) = (level.rep(want), level.inv_rep(want)) else {
                return Err(Error::NotInGroup);
            };
            acc = t.then(&acc);
            for v in target.iter_mut() {
                *v = inv.image(*v);
            }
        }
        if target.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::NotInGroup);
        }
        Ok(self.split(&acc).0)
    }

    /// The full preimage of a subgroup of the image.
    pub fn preimage_group(&self, sub: &PermGroup) -> Result<PermGroup> {
        let kernel = self.kernel();
        let mut gens = kernel.generators().to_vec();
        for y in sub.generators() {
            gens.push(self.preimage(y)?);
        }
        let order = kernel.order() * sub.order();
        Ok(PermGroup::with_known_order(self.source_degree, gens, order, &[]))
    }
}
