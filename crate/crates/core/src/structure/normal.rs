//! Normal structure: cores, normal closures, Sylow 2-subgroups, O₂, minimal
//! normal subgroups, socles and the HA/AS/PA classification.
//!
//! Most operations come in two flavours: one for a group in its given
//! action, and one (`*_on_cosets`) for the action of `G` on the right
//! cosets of a subgroup `H`, answered without building that action.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::blocks::{block_closure, BlockSystem};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;

/// Seed used when the caller does not supply a random stream.
pub const DEFAULT_SEED: u64 = 0x2c0e;

/// Exhaustive search replaces random sampling below this order.
const EXHAUSTIVE_LIMIT: u128 = 100_000;

pub fn two_part(mut n: u128) -> u128 {
    let mut p = 1;
    while n % 2 == 0 && n > 0 {
        n /= 2;
        p *= 2;
    }
    p
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &PermGroup, gens: &[Permutation]) -> PermGroup {
    let mut n = PermGroup::with_degree(g.degree(), gens.to_vec()).expect("same degree");
    loop {
        let mut grown = false;
        for s in g.generators() {
            for h in n.generators().to_vec() {
                let c = h.conjugate_by(s);
                if !n.has(&c) {
                    n = n.extend(&c);
                    grown = true;
                }
            }
        }
        if !grown {
            return n;
        }
    }
}

/// Largest normal subgroup of `g` inside `h`: conjugates are intersected
/// until the result is normal.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    core_with(g, h, &Limits::default())
}

pub fn core_with(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let mut c = h.clone();
    loop {
        limits.check_time()?;
        let Some(s) = g.generators().iter().find(|s| !c.is_normalized_by(s)) else {
            return Ok(c);
        };
        let conj = c.conjugate(s);
        c = c.intersection_with(&conj, limits)?;
    }
}

/// Order of `x` modulo the normal subgroup `p` (`x` normalises `p`).
fn order_modulo(x: &Permutation, p: &PermGroup) -> u64 {
    let mut k = x.order();
    let mut m = k;
    let mut r = 2;
    while r * r <= m {
        if m % r == 0 {
            while m % r == 0 {
                m /= r;
            }
            while k % r == 0 && p.has(&x.pow((k / r) as i64)) {
                k /= r;
            }
        }
        r += 1;
    }
    if m > 1 {
        while k % m == 0 && p.has(&x.pow((k / m) as i64)) {
            k /= m;
        }
    }
    k
}

/// If `x` has even order modulo `p`, the power of `x` whose image is the
/// 2-part of `x`'s image.
fn two_element_mod(x: &Permutation, p: &PermGroup) -> Option<Permutation> {
    let k = order_modulo(x, p);
    if k % 2 != 0 {
        return None;
    }
    let odd = k / two_part(k as u128) as u64;
    Some(x.pow(odd as i64))
}

/// A Sylow 2-subgroup, with the default seed.
pub fn sylow2(g: &PermGroup) -> Result<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    sylow2_with(g, None, &mut rng, &Limits::default())
}

/// A Sylow 2-subgroup containing the 2-subgroup `start` (if given). Grows
/// a 2-subgroup `P` by adjoining an element of `N_G(P)` whose image in
/// `N_G(P)/P` is a non-trivial 2-element; such an element exists until `P`
/// is Sylow.
pub fn sylow2_with<R: Rng>(
    g: &PermGroup,
    start: Option<&PermGroup>,
    rng: &mut R,
    limits: &Limits,
) -> Result<PermGroup> {
    let target = two_part(g.order());
    let mut p = match start {
        Some(h) => {
            if !h.is_subgroup_of(g) {
                return Err(Error::NotSubgroup);
            }
            if !h.is_p_group(2) {
                return Err(Error::precondition("starting subgroup is not a 2-group"));
            }
            h.clone()
        }
        None => PermGroup::trivial(g.degree()),
    };
    if p.is_trivial() && target > 1 {
        // Start from the 2-part of a random element of even order.
        let triv = PermGroup::trivial(g.degree());
        for _ in 0..64 {
            if let Some(y) = two_element_mod(&g.random_element(rng), &triv) {
                p = p.extend(&y);
                break;
            }
        }
    }
    while p.order() < target {
        limits.check_time()?;
        let n = g.normalizer_with(&p, limits)?;
        let mut next = None;
        for _ in 0..256 {
            if let Some(y) = two_element_mod(&n.random_element(rng), &p) {
                next = Some(y);
                break;
            }
        }
        if next.is_none() && n.order() <= EXHAUSTIVE_LIMIT {
            next = n.elements().find_map(|x| two_element_mod(&x, &p));
        }
        let y = next.ok_or_else(|| Error::resource("Sylow ascent made no progress"))?;
        p = p.extend(&y);
    }
    if p.order() != target || !p.is_p_group(2) {
        return Err(Error::validation("Sylow 2-subgroup has the wrong order"));
    }
    Ok(p)
}

/// The largest normal 2-subgroup.
pub fn o2(g: &PermGroup) -> Result<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    o2_with(g, &mut rng, &Limits::default())
}

pub fn o2_with<R: Rng>(g: &PermGroup, rng: &mut R, limits: &Limits) -> Result<PermGroup> {
    let p = sylow2_with(g, None, rng, limits)?;
    core_with(g, &p, limits)
}

/// The block system `{B^x}` with `B = ω^Q`, for `Q` a Sylow 2-subgroup
/// containing the (2-group) point stabiliser; `Q` is the block stabiliser.
#[derive(Debug, Clone)]
pub struct SylowBlocks {
    pub system: BlockSystem,
    pub sylow: PermGroup,
}

pub fn sylow2_overgroup_blocks(g: &PermGroup, omega: usize) -> Result<SylowBlocks> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    sylow2_overgroup_blocks_with(g, omega, &mut rng, &Limits::default())
}

pub fn sylow2_overgroup_blocks_with<R: Rng>(
    g: &PermGroup,
    omega: usize,
    rng: &mut R,
    limits: &Limits,
) -> Result<SylowBlocks> {
    if omega >= g.degree() {
        return Err(Error::precondition("point outside the domain"));
    }
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let stab = g.stabilizer(omega);
    if !stab.is_p_group(2) {
        return Err(Error::precondition("point stabiliser is not a 2-group"));
    }
    let sylow = sylow2_with(g, Some(&stab), rng, limits)?;
    let block = sylow.orbit(omega);
    Ok(SylowBlocks {
        system: block_closure(g, &block),
        sylow,
    })
}

fn same_subgroup(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order() && a.is_subgroup_of(b)
}

/// All minimal normal subgroups, ordered by order then generators. The
/// trivial group has none.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    minimal_normal_subgroups_with(g, &Limits::default())
}

pub fn minimal_normal_subgroups_with(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    let classes = g.conjugacy_classes_with(limits)?;
    let mut cands: Vec<PermGroup> = Vec::new();
    for c in classes.iter() {
        if c.element_order > 1 && is_prime(c.element_order) {
            let n = normal_closure(g, std::slice::from_ref(&c.rep));
            if !cands.iter().any(|m| same_subgroup(m, &n)) {
                cands.push(n);
            }
        }
    }
    let mut minimal: Vec<PermGroup> = cands
        .iter()
        .filter(|n| {
            !cands
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    minimal.sort_by_key(|n| n.order());
    Ok(minimal)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Product of the minimal normal subgroups.
pub fn socle(g: &PermGroup) -> Result<PermGroup> {
    let mins = minimal_normal_subgroups(g)?;
    let mut s = PermGroup::trivial(g.degree());
    for n in &mins {
        s = s.join(n);
    }
    Ok(s)
}

/// Whether `n` is transitive on the cosets of `h` in `g`: `NH = G`.
pub fn transitive_on_cosets(g: &PermGroup, h: &PermGroup, n: &PermGroup) -> Result<bool> {
    let meet = n.intersection(h)?;
    Ok(n.order() * h.order() == g.order() * meet.order())
}

pub fn is_quasiprimitive(g: &PermGroup) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    Ok(minimal_normal_subgroups(g)?
        .iter()
        .all(|n| n.is_transitive()))
}

pub fn is_quasiprimitive_on_cosets(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    for n in minimal_normal_subgroups(g)? {
        if !transitive_on_cosets(g, h, &n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OnsTag {
    HA,
    AS,
    PA,
    OTHER,
}

impl std::fmt::Display for OnsTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OnsType {
    pub tag: OnsTag,
    /// `d` for an abelian socle `p^d`, otherwise the number `ℓ` of simple
    /// factors of the (first) non-abelian minimal normal subgroup.
    pub socle_factor_count: usize,
    #[serde(serialize_with = "crate::serde_u128")]
    pub socle_order: u128,
}

/// Type of a quasiprimitive group in its given action.
pub fn ons_type(g: &PermGroup) -> Result<OnsType> {
    if !is_quasiprimitive(g)? {
        return Err(Error::precondition("group is not quasiprimitive"));
    }
    ons_type_on_cosets(g, &g.stabilizer(0))
}

/// Type of `g` acting on the cosets of `h`, which must be quasiprimitive.
///
/// Abelian socle gives HA. Otherwise, with `N = T^ℓ` the unique minimal
/// normal subgroup: `ℓ = 1` gives AS; `ℓ ≥ 2` gives PA when the point
/// stabiliser `N_ω` is non-trivial and does not project onto a simple
/// factor (it is not subdirect). Everything else is OTHER.
pub fn ons_type_on_cosets(g: &PermGroup, h: &PermGroup) -> Result<OnsType> {
    let mins = minimal_normal_subgroups(g)?;
    let mut socle = PermGroup::trivial(g.degree());
    for n in &mins {
        if !transitive_on_cosets(g, h, n)? {
            return Err(Error::precondition("action is not quasiprimitive"));
        }
        socle = socle.join(n);
    }
    let socle_order = socle.order();
    if socle.is_abelian() {
        let p = (2..=socle_order).find(|p| socle_order % p == 0).unwrap_or(1);
        let mut d = 0;
        let mut m = socle_order;
        while m > 1 && m % p == 0 {
            m /= p;
            d += 1;
        }
        return Ok(OnsType {
            tag: OnsTag::HA,
            socle_factor_count: d,
            socle_order,
        });
    }
    let n = mins
        .iter()
        .find(|n| !n.is_abelian())
        .expect("non-abelian socle has a non-abelian factor");
    let factors = minimal_normal_subgroups(n)?;
    let ell = factors.len();
    let tag = if mins.len() != 1 {
        OnsTag::OTHER
    } else if ell == 1 {
        OnsTag::AS
    } else {
        let n_omega = n.intersection(h)?;
        let mut others = PermGroup::trivial(g.degree());
        for t in &factors[1..] {
            others = others.join(t);
        }
        let meet = n_omega.intersection(&others)?;
        let subdirect = n_omega.order() * others.order() == n.order() * meet.order();
        if !n_omega.is_trivial() && !subdirect {
            OnsTag::PA
        } else {
            OnsTag::OTHER
        }
    };
    Ok(OnsType {
        tag,
        socle_factor_count: ell,
        socle_order,
    })
}
