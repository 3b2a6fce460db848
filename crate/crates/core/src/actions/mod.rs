//! Constructors for the actions used throughout: coset actions, wreath
//! products (imprimitive and product action), affine holomorphs, Möbius
//! groups and the bundled catalog.

pub mod catalog;
pub mod expr;
pub mod field;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::{PermKey, Permutation};
use crate::structure::core_with;

pub use catalog::{bundled_catalog, load_catalog, parse_catalog, realize, CatalogEntry};
pub use expr::{resolve, ActionSpec, SubgroupSpec};
pub use field::{mobius_action, mobius_order, Field, MobiusFlavor, SUPPORTED_Q};

/// `G` acting on the right cosets `H\G`. Coset `i` is represented by the
/// canonical element `reps[i]`; coset 0 is `H` itself.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub image: PermGroup,
    pub reps: Vec<Permutation>,
    pub kernel: PermGroup,
    sub: PermGroup,
    index: FxHashMap<PermKey, usize>,
}

/// The least element of `Hg` in the order of base images along `h`'s chain.
fn canonical_coset_rep(h: &PermGroup, g: &Permutation) -> Permutation {
    let mut cur = g.clone();
    for level in &h.chain().levels {
        let (i, _) = level
            .orbit
            .iter()
            .enumerate()
            .min_by_key(|&(_, &c)| cur.image(c))
            .expect("orbits are non-empty");
        cur = level.transversal[i].then(&cur);
    }
    cur
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.sub
    }

    /// Index of the coset `Hg`.
    pub fn coset_of(&self, g: &Permutation) -> Option<usize> {
        self.index
            .get(&canonical_coset_rep(&self.sub, g).key())
            .copied()
    }

    /// The permutation of cosets induced by `g`.
    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        let imgs: Option<Vec<usize>> = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.then(g)))
            .collect();
        Permutation::from_images(imgs.ok_or(Error::NotInGroup)?)
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel.is_trivial()
    }
}

pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<CosetAction> {
    coset_action_with(g, h, &Limits::default())
}

pub fn coset_action_with(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<CosetAction> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let index = g.order() / h.order();
    limits.check_degree(usize::try_from(index).unwrap_or(usize::MAX), "coset action")?;
    let m = index as usize;
    let sub = h.clone();
    let mut reps = vec![canonical_coset_rep(&sub, &g.identity())];
    let mut lookup: FxHashMap<PermKey, usize> = FxHashMap::default();
    lookup.insert(reps[0].key(), 0);
    let mut images: Vec<Vec<usize>> = vec![Vec::with_capacity(m); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        if i % 1024 == 0 {
            limits.check_time()?;
        }
        for (j, s) in g.generators().iter().enumerate() {
            let c = canonical_coset_rep(&sub, &reps[i].then(s));
            let next = reps.len();
            let id = *lookup.entry(c.key()).or_insert(next);
            if id == next {
                reps.push(c);
            }
            images[j].push(id);
        }
        i += 1;
    }
    if reps.len() != m {
        return Err(Error::validation("coset enumeration did not reach the index"));
    }
    let kernel = core_with(g, h, limits)?;
    let gens: Vec<Permutation> = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<_>>()?;
    let image = PermGroup::with_known_order(m, gens, g.order() / kernel.order(), &[]);
    Ok(CosetAction {
        image,
        reps,
        kernel,
        sub,
        index: lookup,
    })
}

/// `T ≀ Sym(k)` acting imprimitively on `k` copies of `T`'s domain; copy `i`
/// occupies points `i·d .. (i+1)·d`.
pub fn wreath_imprimitive(t: &PermGroup, k: usize) -> Result<PermGroup> {
    if k < 2 {
        return Err(Error::precondition("wreath product needs at least two copies"));
    }
    let d = t.degree();
    let n = d * k;
    let mut gens = Vec::new();
    for g in t.generators() {
        let mut img: Vec<usize> = (0..n).collect();
        for x in 0..d {
            img[x] = g.image(x);
        }
        gens.push(Permutation::from_images(img)?);
    }
    let shift = (0..n).map(|x| (x + d) % n).collect();
    gens.push(Permutation::from_images(shift)?);
    if k > 2 {
        let swap = (0..n)
            .map(|x| match x / d {
                0 => x + d,
                1 => x - d,
                _ => x,
            })
            .collect();
        gens.push(Permutation::from_images(swap)?);
    }
    let order = t.order().pow(k as u32) * crate::group::factorial(k);
    Ok(PermGroup::with_known_order(n, gens, order, &[]))
}

/// Index of the tuple `(δ_0, …, δ_{ℓ-1})` in the product domain.
pub fn tuple_index(d: usize, coords: &[usize]) -> usize {
    coords.iter().rev().fold(0, |acc, &c| acc * d + c)
}

pub fn tuple_coords(d: usize, ell: usize, mut idx: usize) -> Vec<usize> {
    (0..ell)
        .map(|_| {
            let c = idx % d;
            idx /= d;
            c
        })
        .collect()
}

/// The element `(a_0, …, a_{ℓ-1}) σ` of `T ≀ Sym(ℓ)` in product action:
/// coordinate `i` moves to position `iσ` after being moved by `a_i`, i.e.
/// the new `j`-th coordinate is `δ_{jσ⁻¹}^{a_{jσ⁻¹}}`.
pub fn product_action_element(d: usize, a: &[Permutation], sigma: &Permutation) -> Result<Permutation> {
    let ell = a.len();
    if sigma.degree() != ell || a.iter().any(|x| x.degree() != d) {
        return Err(Error::precondition("component degrees do not match"));
    }
    let n = d.checked_pow(ell as u32).ok_or_else(|| Error::resource("product degree overflows"))?;
    let mut img = Vec::with_capacity(n);
    let mut out = vec![0; ell];
    for idx in 0..n {
        let c = tuple_coords(d, ell, idx);
        for i in 0..ell {
            out[sigma.image(i)] = a[i].image(c[i]);
        }
        img.push(tuple_index(d, &out));
    }
    Permutation::from_images(img)
}

/// `T ≀ Sym(ℓ)` in its product action on `Δ^ℓ`.
pub fn wreath_product_action(t: &PermGroup, ell: usize) -> Result<PermGroup> {
    wreath_product_action_with(t, ell, &Limits::default())
}

pub fn wreath_product_action_with(t: &PermGroup, ell: usize, limits: &Limits) -> Result<PermGroup> {
    if ell < 2 {
        return Err(Error::precondition("product action needs ℓ ≥ 2"));
    }
    let d = t.degree();
    let n = d
        .checked_pow(ell as u32)
        .ok_or_else(|| Error::resource("product degree overflows"))?;
    limits.check_degree(n, "product action")?;
    let id = Permutation::identity(d);
    let mut gens = Vec::new();
    for g in t.generators() {
        let mut a = vec![id.clone(); ell];
        a[0] = g.clone();
        gens.push(product_action_element(d, &a, &Permutation::identity(ell))?);
    }
    let ones = vec![id; ell];
    let cycle = Permutation::from_cycles(ell, &[(0..ell).collect()])?;
    gens.push(product_action_element(d, &ones, &cycle)?);
    if ell > 2 {
        let swap = Permutation::from_cycles(ell, &[vec![0, 1]])?;
        gens.push(product_action_element(d, &ones, &swap)?);
    }
    let order = t.order().pow(ell as u32) * crate::group::factorial(ell);
    Ok(PermGroup::with_known_order(n, gens, order, &[]))
}

fn vec_digits(p: u64, d: usize, mut v: usize) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let x = v as u64 % p;
            v /= p as usize;
            x
        })
        .collect()
}

fn vec_index(p: u64, v: &[u64]) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// The linear map `v ↦ vM` on `(F_p)^d` as a permutation of the `p^d`
/// vectors (vector `v` has index `Σ v_i p^i`). Rows of `m` are images of the
/// standard basis vectors.
pub fn linear_map(p: u64, d: usize, m: &[Vec<u64>]) -> Result<Permutation> {
    if m.len() != d || m.iter().any(|r| r.len() != d) {
        return Err(Error::precondition("matrix must be d × d"));
    }
    let n = (p as usize).pow(d as u32);
    let img: Vec<usize> = (0..n)
        .map(|i| {
            let v = vec_digits(p, d, i);
            let w: Vec<u64> = (0..d)
                .map(|j| (0..d).map(|k| v[k] * m[k][j]).sum::<u64>() % p)
                .collect();
            vec_index(p, &w)
        })
        .collect();
    Permutation::from_images(img).map_err(|_| Error::precondition("matrix is singular"))
}

/// Whether a permutation of the vectors of `(F_p)^d` is additive.
pub fn is_linear(p: u64, d: usize, g: &Permutation) -> bool {
    let n = g.degree();
    if g.image(0) != 0 {
        return false;
    }
    (0..n).all(|u| {
        let du = vec_digits(p, d, u);
        (0..n).all(|v| {
            let dv = vec_digits(p, d, v);
            let s: Vec<u64> = du.iter().zip(&dv).map(|(a, b)| (a + b) % p).collect();
            let gs = vec_digits(p, d, g.image(vec_index(p, &s)));
            let (gu, gv) = (vec_digits(p, d, g.image(u)), vec_digits(p, d, g.image(v)));
            gs.iter().zip(gu.iter().zip(&gv)).all(|(x, (a, b))| *x == (a + b) % p)
        })
    })
}

/// `V ⋊ Q` on the `p^d` vectors of `V = (F_p)^d`: translations plus the
/// given linear maps. `p` must be an odd prime and `Q` a 2-group.
pub fn holomorph_affine(p: u64, d: usize, q_gens: &[Permutation]) -> Result<PermGroup> {
    if p == 2 {
        return Err(Error::precondition("the affine case requires an odd prime"));
    }
    if !field::is_prime(p as u32) || d == 0 {
        return Err(Error::precondition(format!("{p} is not a prime")));
    }
    let n = (p as usize).pow(d as u32);
    for g in q_gens {
        if g.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: g.degree(),
            });
        }
        if !is_linear(p, d, g) {
            return Err(Error::precondition("complement generator is not linear"));
        }
    }
    let q = PermGroup::with_degree(n, q_gens.to_vec())?;
    if !q.is_p_group(2) {
        return Err(Error::precondition("complement is not a 2-group"));
    }
    let mut gens: Vec<Permutation> = (0..d)
        .map(|i| {
            let img = (0..n)
                .map(|v| {
                    let mut w = vec_digits(p, d, v);
                    w[i] = (w[i] + 1) % p;
                    vec_index(p, &w)
                })
                .collect();
            Permutation::from_images(img)
        })
        .collect::<Result<_>>()?;
    gens.extend(q_gens.iter().cloned());
    Ok(PermGroup::with_known_order(n, gens, n as u128 * q.order(), &[]))
}

/// Number of vectors fixed by a linear map, i.e. `|C_V(g)|`.
pub fn fixed_vectors(g: &Permutation) -> usize {
    g.fix_count()
}

/// The translation part and linear part of an affine map `v ↦ vA + b`.
pub fn affine_parts(p: u64, d: usize, g: &Permutation) -> (usize, Permutation) {
    let b = g.image(0);
    let n = g.degree();
    let nb = vec_digits(p, d, b);
    let img: Vec<usize> = (0..n)
        .map(|v| {
            let w = vec_digits(p, d, g.image(v));
            let diff: Vec<u64> = w.iter().zip(&nb).map(|(x, y)| (x + p - y) % p).collect();
            vec_index(p, &diff)
        })
        .collect();
    (b, Permutation::from_images(img).expect("affine maps are bijective"))
}

/// Largest subgroup enumerated when fixed points are counted through class
/// intersections instead of an explicit coset action.
pub const FORMULA_SUBGROUP_LIMIT: u128 = 1 << 20;

/// A transitive action as seen by the fixity machinery: either an explicit
/// permutation group, or a faithful action on `H\G` that is never built and
/// is handled through class intersections with `H`.
#[derive(Debug, Clone)]
pub enum ActionView {
    Explicit(PermGroup),
    Cosets { group: PermGroup, sub: PermGroup },
}

impl ActionView {
    /// The action of `g` on the cosets of `h`. Faithful actions with a small
    /// enough `h` stay implicit; the others are built (on the image of `g`).
    pub fn cosets(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<ActionView> {
        if !h.is_subgroup_of(g) {
            return Err(Error::NotSubgroup);
        }
        if h.order() <= FORMULA_SUBGROUP_LIMIT && core_with(g, h, limits)?.is_trivial() {
            return Ok(ActionView::Cosets {
                group: g.clone(),
                sub: h.clone(),
            });
        }
        Ok(ActionView::Explicit(coset_action_with(g, h, limits)?.image))
    }

    pub fn group(&self) -> &PermGroup {
        match self {
            ActionView::Explicit(g) => g,
            ActionView::Cosets { group, .. } => group,
        }
    }

    pub fn degree(&self) -> u128 {
        match self {
            ActionView::Explicit(g) => g.degree() as u128,
            ActionView::Cosets { group, sub } => group.order() / sub.order(),
        }
    }

    pub fn is_transitive(&self) -> bool {
        match self {
            ActionView::Explicit(g) => g.is_transitive(),
            ActionView::Cosets { .. } => true,
        }
    }

    /// Stabiliser of the first point (for coset actions, the subgroup).
    pub fn point_stabilizer(&self) -> PermGroup {
        match self {
            ActionView::Explicit(g) => g.stabilizer(0),
            ActionView::Cosets { sub, .. } => sub.clone(),
        }
    }

    /// The action as a permutation group, building it if necessary.
    pub fn explicit(&self, limits: &Limits) -> Result<PermGroup> {
        match self {
            ActionView::Explicit(g) => Ok(g.clone()),
            ActionView::Cosets { group, sub } => Ok(coset_action_with(group, sub, limits)?.image),
        }
    }
}
