//! Brute-force oracles shared by the integration tests. Nothing here uses
//! stabiliser chains: groups are closed by repeated multiplication.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use mindeg::{PermGroup, Permutation};

pub fn p(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

pub fn group(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::with_degree(n, gens.iter().map(|s| p(n, s)).collect()).unwrap()
}

pub fn closure(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(n);
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

pub fn elements(g: &PermGroup) -> Vec<Permutation> {
    closure(g.degree(), g.generators())
}

/// Conjugacy classes by direct orbit computation over all elements.
pub fn classes(els: &[Permutation]) -> Vec<BTreeSet<Permutation>> {
    let mut done: HashSet<Permutation> = HashSet::new();
    let mut out = Vec::new();
    for x in els {
        if done.contains(x) {
            continue;
        }
        let cls: BTreeSet<Permutation> = els.iter().map(|y| x.conjugate_by(y)).collect();
        done.extend(cls.iter().cloned());
        out.push(cls);
    }
    out
}

/// Normal subgroups as unions of classes closed under products.
pub fn normal_subgroups(els: &[Permutation]) -> Vec<BTreeSet<Permutation>> {
    let cls = classes(els);
    let k = cls.len();
    assert!(k <= 20, "too many classes for subset enumeration");
    let id_class = cls.iter().position(|c| c.iter().next().unwrap().is_identity()).unwrap();
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask & (1 << id_class) == 0 {
            continue;
        }
        let set: BTreeSet<Permutation> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .flat_map(|i| cls[i].iter().cloned())
            .collect();
        let closed = set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&a.compose(b).unwrap())));
        if closed {
            out.push(set);
        }
    }
    out
}

/// Every set partition of `{0, …, n-1}` as a label vector (restricted
/// growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            cur.push(l);
            rec(i + 1, n, cur, max.max(l), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0];
    rec(1, n, &mut cur, 0, &mut out);
    out
}

/// Invariant partitions with equal parts, excluding the two trivial ones.
pub fn brute_block_systems(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    set_partitions(n)
        .into_iter()
        .filter(|labels| {
            let parts = labels.iter().max().unwrap() + 1;
            if parts == 1 || parts == n {
                return false;
            }
            let size = labels.iter().filter(|&&l| l == 0).count();
            if (0..parts).any(|b| labels.iter().filter(|&&l| l == b).count() != size) {
                return false;
            }
            g.generators().iter().all(|s| {
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        labels[x] != labels[y] || labels[s.image(x)] == labels[s.image(y)]
                    })
                })
            })
        })
        .collect()
}

/// Label vector normalised to first-occurrence numbering.
pub fn canon(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub fn fixed(x: &Permutation) -> usize {
    (0..x.degree()).filter(|&i| x.image(i) == i).count()
}
