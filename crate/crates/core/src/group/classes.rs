//! Conjugacy classes.
//!
//! Up to [`STORE_LIMIT`] elements the classes are found by sweeping the
//! whole group and expanding each new element's orbit under conjugation by
//! the generators; every element is then indexed, so classifying an element
//! is a hash lookup. Larger groups fall back to seeded random sampling with
//! centraliser orders and backtrack conjugacy tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::PermGroup;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{PermKey, Permutation};

/// Largest group whose elements are indexed individually.
pub const STORE_LIMIT: u128 = 4_000_000;

const SAMPLING_SEED: u64 = 0xc1a55e5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    /// Lexicographically least element of the class when the group is
    /// indexed exhaustively.
    pub rep: Permutation,
    pub size: u128,
    pub centralizer_order: u128,
    pub element_order: u64,
}

impl ClassData {
    pub fn fix_count(&self) -> usize {
        self.rep.fix_count()
    }
}

/// The classes of one group in the canonical order: identity first, then
/// by element order, class size and representative.
#[derive(Debug)]
pub struct ConjugacyClasses {
    group: PermGroup,
    classes: Vec<ClassData>,
    index: Option<FxHashMap<PermKey, u32>>,
    by_cycle_type: FxHashMap<Vec<usize>, Vec<usize>>,
}

impl ConjugacyClasses {
    pub(crate) fn compute(group: &PermGroup, limits: &Limits) -> Result<Self> {
        let order = group.order();
        limits.check_order(order, "conjugacy classes")?;
        // Strip the cache so the stored copy does not hold itself.
        let bare = PermGroup::from_parts(group.degree, group.generators.clone(), group.chain.clone());
        let (classes, index) = if order <= STORE_LIMIT {
            let (c, i) = sweep(&bare, limits)?;
            (c, Some(i))
        } else {
            (sample(&bare, limits)?, None)
        };
        let mut by_cycle_type: FxHashMap<Vec<usize>, Vec<usize>> = FxHashMap::default();
        for (i, c) in classes.iter().enumerate() {
            by_cycle_type.entry(c.rep.cycle_type()).or_default().push(i);
        }
        let total: u128 = classes.iter().map(|c| c.size).sum();
        if total != order {
            return Err(Error::validation(format!(
                "class sizes sum to {total}, group order is {order}"
            )));
        }
        Ok(ConjugacyClasses {
            group: bare,
            classes,
            index,
            by_cycle_type,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn get(&self, i: usize) -> &ClassData {
        &self.classes[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ClassData> {
        self.classes.iter()
    }

    pub fn group_order(&self) -> u128 {
        self.group.order()
    }

    /// Index of the class containing `x`, or `None` if `x` is not in the
    /// group.
    pub fn class_of(&self, x: &Permutation) -> Option<usize> {
        if x.degree() != self.group.degree() {
            return None;
        }
        if let Some(index) = &self.index {
            return index.get(&x.key()).map(|&i| i as usize);
        }
        if !self.group.has(x) {
            return None;
        }
        let candidates = self.by_cycle_type.get(&x.cycle_type())?;
        if candidates.len() == 1 {
            return Some(candidates[0]);
        }
        candidates.iter().copied().find(|&i| {
            self.group
                .are_conjugate(x, &self.classes[i].rep)
                .unwrap_or(false)
        })
    }

    /// Class of `rep^k` for each class.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| {
                self.class_of(&c.rep.pow(k))
                    .expect("powers stay in the group")
            })
            .collect()
    }

    /// Class index of each inverse class.
    pub fn inverse_map(&self) -> Vec<usize> {
        self.power_map(-1)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1, |e, c| num_integer::lcm(e, c.element_order))
    }
}

fn canonical_order(classes: &mut [ClassData]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..classes.len()).collect();
    perm.sort_by(|&a, &b| {
        let (x, y) = (&classes[a], &classes[b]);
        (x.element_order, x.size, &x.rep).cmp(&(y.element_order, y.size, &y.rep))
    });
    perm
}

fn sweep(group: &PermGroup, limits: &Limits) -> Result<(Vec<ClassData>, FxHashMap<PermKey, u32>)> {
    let order = group.order();
    let gens = group.generators();
    let mut index: FxHashMap<PermKey, u32> = FxHashMap::default();
    index.reserve(order as usize);
    let mut classes: Vec<ClassData> = Vec::new();
    for (n, x) in group.elements().enumerate() {
        if n % 8192 == 0 {
            limits.check_time()?;
        }
        if index.contains_key(&x.key()) {
            continue;
        }
        let id = classes.len() as u32;
        index.insert(x.key(), id);
        let mut queue = vec![x.clone()];
        let mut rep = x;
        let mut i = 0;
        while i < queue.len() {
            for g in gens {
                let y = queue[i].conjugate_by(g);
                let key = y.key();
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                    e.insert(id);
                    if y < rep {
                        rep = y.clone();
                    }
                    queue.push(y);
                }
            }
            i += 1;
        }
        let size = queue.len() as u128;
        classes.push(ClassData {
            element_order: rep.order(),
            rep,
            size,
            centralizer_order: order / size,
        });
    }
    let perm = canonical_order(&mut classes);
    let mut new_index = vec![0u32; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new as u32;
    }
    for v in index.values_mut() {
        *v = new_index[*v as usize];
    }
    let classes = perm.iter().map(|&i| classes[i].clone()).collect();
    Ok((classes, index))
}

fn sample(group: &PermGroup, limits: &Limits) -> Result<Vec<ClassData>> {
    let order = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
    let mut classes: Vec<ClassData> = vec![ClassData {
        rep: group.identity(),
        size: 1,
        centralizer_order: order,
        element_order: 1,
    }];
    let mut by_type: FxHashMap<Vec<usize>, Vec<usize>> = FxHashMap::default();
    by_type.insert(group.identity().cycle_type(), vec![0]);
    let mut total: u128 = 1;
    while total < order {
        limits.check_time()?;
        let x = group.random_element(&mut rng);
        let o = x.order();
        for k in (1..=o).filter(|k| o % k == 0) {
            let y = x.pow(k as i64);
            let ct = y.cycle_type();
            let known = by_type.get(&ct).map(|v| v.as_slice()).unwrap_or(&[]);
            let mut found = false;
            for &i in known {
                if group.are_conjugate(&y, &classes[i].rep)? {
                    found = true;
                    break;
                }
            }
            if found {
                continue;
            }
            let c = group.centralizer_with(&y, limits)?.order();
            let size = order / c;
            by_type.entry(ct).or_default().push(classes.len());
            classes.push(ClassData {
                element_order: y.order(),
                rep: y,
                size,
                centralizer_order: c,
            });
            total += size;
        }
    }
    let perm = canonical_order(&mut classes);
    Ok(perm.iter().map(|&i| classes[i].clone()).collect())
}
