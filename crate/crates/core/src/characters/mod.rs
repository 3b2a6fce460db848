//! Character tables by the Dixon–Schneider method.
//!
//! Class-multiplication coefficients define commuting matrices whose common
//! eigenvectors over `F_p` (with `p ≡ 1 mod exponent`) are the central
//! characters. Degrees follow from the norm relation, and every value is
//! lifted exactly as a sum of roots of unity through the eigenvalue
//! multiplicities of `ρ(g)`, recovered from `χ(g^l) mod p` by a discrete
//! Fourier transform.
//!
//! # Text dump
//!
//! ```text
//! order <|G|>
//! class <i> order <n> size <h> rep <cycles>      one line per class
//! chi <j> degree <d> indicator <+|0|->: v_1 v_2 …  one line per irreducible
//! ```
//!
//! Rational values print as integers; others as sums of `E(n)^k`, the
//! primitive `n`-th root of unity `exp(2πi/n)` raised to `k`.

mod modp;

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ClassData, ConjugacyClasses, PermGroup};
use crate::limits::Limits;
use crate::perm::{PermKey, Permutation};
use crate::ratio::Ratio;
use modp::{is_prime, Fp};

/// Absolute tolerance for numerical validation.
pub const TOLERANCE: f64 = 1e-6;

const SPLIT_SEED: u64 = 0xd1c5;

/// An exact character value `Σ_k mults[k]·ζ_n^k`, `ζ_n = exp(2πi/n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharValue {
    pub n: u64,
    pub mults: Vec<u64>,
}

impl CharValue {
    pub fn to_complex(&self) -> Complex64 {
        self.mults
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                let t = std::f64::consts::TAU * k as f64 / self.n as f64;
                Complex64::from_polar(m as f64, t)
            })
            .sum()
    }

    /// The value as an integer when it is rational.
    pub fn as_integer(&self) -> Option<i64> {
        let z = self.to_complex();
        let r = z.re.round();
        (z.im.abs() < TOLERANCE && (z.re - r).abs() < TOLERANCE).then_some(r as i64)
    }
}

impl std::fmt::Display for CharValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut terms = Vec::new();
        for (k, &m) in self.mults.iter().enumerate().filter(|(_, &m)| m > 0) {
            let base = match k {
                0 => "1".to_string(),
                1 => format!("E({})", self.n),
                _ => format!("E({})^{k}", self.n),
            };
            terms.push(if m == 1 { base } else { format!("{m}*{base}") });
        }
        write!(f, "{}", terms.join("+"))
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_order: u128,
    pub classes: Vec<ClassData>,
    /// `irreducibles[j][i]` is `χ_j` on class `i`.
    pub irreducibles: Vec<Vec<CharValue>>,
    pub degrees: Vec<u64>,
    /// Class of the square of each class representative.
    pub square_map: Vec<usize>,
    pub inverse_map: Vec<usize>,
    prime: u64,
    residues: Vec<Vec<u64>>,
}

fn choose_prime(exponent: u64, order: u128) -> u64 {
    let floor = 2 * (order as f64).sqrt().ceil() as u64 + 1;
    let mut p = exponent + 1;
    while p <= floor || !is_prime(p) || order % p as u128 == 0 {
        p += exponent;
    }
    p
}

/// Elements of the class of `rep`, by closing under conjugation with the
/// generators.
fn class_elements(g: &PermGroup, rep: &Permutation) -> Vec<Permutation> {
    let mut seen: FxHashSet<PermKey> = FxHashSet::default();
    seen.insert(rep.key());
    let mut out = vec![rep.clone()];
    let mut i = 0;
    while i < out.len() {
        for s in g.generators() {
            let y = out[i].conjugate_by(s);
            if seen.insert(y.key()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// The class matrix `M_j` mod `p`: `M_j[i][l]` counts `y ∈ C_j` with
/// `z_l·y⁻¹ ∈ C_i`, `z_l` the representative of class `l`. Central
/// characters are its eigenvectors (as columns) with eigenvalue `ω(C_j)`.
fn class_matrix(g: &PermGroup, classes: &ConjugacyClasses, j: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let k = classes.len();
    let ys: Vec<Permutation> = class_elements(g, &classes.get(j).rep)
        .iter()
        .map(Permutation::inverse)
        .collect();
    let cols: Vec<Vec<u64>> = (0..k)
        .into_par_iter()
        .map(|l| {
            let z = &classes.get(l).rep;
            let mut col = vec![0u64; k];
            for y_inv in &ys {
                let i = classes
                    .class_of(&z.then(y_inv))
                    .ok_or(Error::NotInGroup)?;
                col[i] += 1;
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    Ok((0..k).map(|i| (0..k).map(|l| cols[l][i] % p).collect()).collect())
}

/// Splits `F_p^k` into common eigenspaces of the class matrices (acting on
/// column vectors), requesting matrices from `next_matrix` only while some
/// space is still more than a line. Returns one vector per line.
fn common_eigenvectors(
    f: &Fp,
    k: usize,
    mut next_matrix: impl FnMut() -> Option<Result<Vec<Vec<u64>>>>,
) -> Result<Vec<Vec<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect();
    let mut spaces = vec![identity];
    let mut mats: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut tries_with_current = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        if mats.is_empty() || tries_with_current >= 2 {
            match next_matrix() {
                Some(m) => mats.push(m?),
                None => return Err(Error::validation("eigenspaces did not split into lines")),
            }
            tries_with_current = 0;
        }
        tries_with_current += 1;
        // A random combination of the matrices seen so far.
        let coeffs: Vec<u64> = (0..mats.len()).map(|_| rng.gen_range(1..f.p)).collect();
        let m: Vec<Vec<u64>> = (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| mats.iter().zip(&coeffs).fold(0, |a, (mj, &x)| f.add(a, f.mul(x, mj[r][c]))))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = f.rref(&mut basis);
            let d = basis.len();
            // a[s][r]: coordinate s of m·basis[r].
            let mut a = vec![vec![0u64; d]; d];
            for (r, b) in basis.iter().enumerate() {
                let image: Vec<u64> = (0..k)
                    .map(|i| (0..k).fold(0, |acc, l| f.add(acc, f.mul(m[i][l], b[l]))))
                    .collect();
                for (s, &pc) in pivots.iter().enumerate() {
                    a[s][r] = image[pc];
                }
            }
            let cp = f.charpoly(&a);
            let mut found = 0;
            for lambda in 0..f.p {
                if f.eval(&cp, lambda) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|s| (0..d).map(|r| if s == r { f.sub(a[s][r], lambda) } else { a[s][r] }).collect())
                    .collect();
                let ns = f.nullspace(&shifted);
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|x| {
                        (0..k)
                            .map(|c| (0..d).fold(0, |acc, r| f.add(acc, f.mul(x[r], basis[r][c]))))
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != d {
                return Err(Error::validation("class matrices are not diagonalisable mod p"));
            }
        }
        spaces = next;
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    character_table_with(g, &Limits::default())
}

pub fn character_table_with(g: &PermGroup, limits: &Limits) -> Result<CharacterTable> {
    let order = g.order();
    if order > limits.max_character_order {
        return Err(Error::resource(format!(
            "character table: group order {order} exceeds bound {}",
            limits.max_character_order
        )));
    }
    let classes = g.conjugacy_classes_with(limits)?;
    let k = classes.len();
    let exponent = classes.exponent();
    let p = choose_prime(exponent, order);
    let f = Fp { p };
    limits.check_time()?;
    // Small classes give cheap matrices; try them first.
    let mut order_by_size: Vec<usize> = (1..k).collect();
    order_by_size.sort_by_key(|&j| (classes.get(j).size, j));
    let mut pending = order_by_size.into_iter();
    let vectors = common_eigenvectors(&f, k, || {
        let j = pending.next()?;
        Some(limits.check_time().and_then(|_| class_matrix(g, &classes, j, p)))
    })?;
    if vectors.len() != k {
        return Err(Error::validation("wrong number of irreducible characters"));
    }
    let sizes: Vec<u64> = classes.iter().map(|c| f.from_u128(c.size)).collect();
    let inverse_map = classes.inverse_map();
    let square_map = classes.power_map(2);
    let order_p = f.from_u128(order);
    let root = order.isqrt() as u64;
    let gen = f.generator();
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for w in vectors {
        if w[0] == 0 {
            return Err(Error::validation("central character vanishes on the identity"));
        }
        let w0 = f.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&x| f.mul(x, w0)).collect();
        let norm = (0..k).fold(0, |acc, i| {
            let t = f.mul(f.mul(omega[i], omega[inverse_map[i]]), f.inv(sizes[i]));
            f.add(acc, t)
        });
        if norm == 0 {
            return Err(Error::validation("degenerate character norm"));
        }
        let target = f.mul(order_p, f.inv(norm));
        let d = (1..=root)
            .find(|&d| f.mul(d % p, d % p) == target && order % (d as u128) == 0)
            .ok_or_else(|| Error::validation("no integral character degree"))?;
        let values: Vec<u64> = (0..k)
            .map(|i| f.mul(f.mul(omega[i], d % p), f.inv(sizes[i])))
            .collect();
        rows.push((d, values));
    }
    rows.sort_by(|a, b| {
        let trivial = |r: &(u64, Vec<u64>)| r.0 == 1 && r.1.iter().all(|&v| v == 1);
        (!trivial(a), a.0, &a.1).cmp(&(!trivial(b), b.0, &b.1))
    });
    // Exact lifting through the eigenvalue multiplicities of ρ(g_i).
    let mut irreducibles = Vec::with_capacity(k);
    for (d, values) in &rows {
        let mut row = Vec::with_capacity(k);
        for (i, cd) in classes.iter().enumerate() {
            let n = cd.element_order;
            let z = f.pow(gen, (p - 1) / n);
            let zinv = f.inv(z);
            let powers: Vec<u64> = (0..n)
                .map(|l| values[classes.class_of(&cd.rep.pow(l as i64)).expect("powers stay in the group")])
                .collect();
            let ninv = f.inv(n % p);
            let mut mults = Vec::with_capacity(n as usize);
            for kk in 0..n {
                let step = f.pow(zinv, kk);
                let mut acc = 0;
                let mut zz = 1;
                for &v in &powers {
                    acc = f.add(acc, f.mul(v, zz));
                    zz = f.mul(zz, step);
                }
                let m = f.mul(acc, ninv);
                if m > *d {
                    return Err(Error::validation(format!(
                        "eigenvalue multiplicity out of range on class {i}"
                    )));
                }
                mults.push(m);
            }
            if mults.iter().sum::<u64>() != *d {
                return Err(Error::validation("eigenvalue multiplicities do not sum to the degree"));
            }
            row.push(CharValue { n, mults });
        }
        irreducibles.push(row);
    }
    let tbl = CharacterTable {
        group_order: order,
        classes: classes.classes().to_vec(),
        degrees: rows.iter().map(|r| r.0).collect(),
        residues: rows.into_iter().map(|r| r.1).collect(),
        irreducibles,
        square_map,
        inverse_map,
        prime: p,
    };
    tbl.validate()?;
    Ok(tbl)
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn value(&self, chi: usize, class: usize) -> Complex64 {
        self.irreducibles[chi][class].to_complex()
    }

    /// `⟨α, β⟩ = (1/|G|) Σ_i h_i α_i conj(β_i)` numerically.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let s: Complex64 = self
            .classes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(c, (x, y))| x * y.conj() * c.size as f64)
            .sum();
        s / self.group_order as f64
    }

    fn row(&self, j: usize) -> Vec<Complex64> {
        (0..self.classes.len()).map(|i| self.value(j, i)).collect()
    }

    /// Both orthogonality relations within [`TOLERANCE`], `Σ d² = |G|`.
    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        let sq: u128 = self.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
        if sq != self.group_order {
            return Err(Error::validation("squared degrees do not sum to the group order"));
        }
        if self.irreducibles[0].iter().any(|v| v.as_integer() != Some(1)) {
            return Err(Error::validation("first row is not the trivial character"));
        }
        let rows: Vec<Vec<Complex64>> = (0..k).map(|j| self.row(j)).collect();
        for a in 0..k {
            for b in a..k {
                let ip = self.inner(&rows[a], &rows[b]);
                let want = if a == b { 1.0 } else { 0.0 };
                if (ip - want).norm() > TOLERANCE {
                    return Err(Error::validation(format!("rows {a} and {b} are not orthonormal")));
                }
            }
        }
        for x in 0..k {
            for y in x..k {
                let s: Complex64 = rows.iter().map(|r| r[x] * r[y].conj()).sum();
                let want = if x == y {
                    self.classes[x].centralizer_order as f64
                } else {
                    0.0
                };
                if (s - want).norm() > TOLERANCE * want.max(1.0) {
                    return Err(Error::validation(format!("columns {x} and {y} fail orthogonality")));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ind = fs_indicators(self).ok();
        writeln!(out, "order {}", self.group_order).unwrap();
        for (i, c) in self.classes.iter().enumerate() {
            writeln!(
                out,
                "class {} order {} size {} rep {}",
                i + 1,
                c.element_order,
                c.size,
                c.rep.to_cycle_string()
            )
            .unwrap();
        }
        for (j, row) in self.irreducibles.iter().enumerate() {
            let sign = match ind.as_ref().map(|v| v[j]) {
                Some(1) => "+",
                Some(-1) => "-",
                Some(_) => "0",
                None => "?",
            };
            let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "chi {} degree {} indicator {sign}: {}", j + 1, self.degrees[j], vals.join(" ")).unwrap();
        }
        out
    }
}

/// Frobenius–Schur indicators `(1/|G|) Σ_g χ(g²)`, computed exactly mod
/// `p` and checked against the numerical value.
pub fn fs_indicators(tbl: &CharacterTable) -> Result<Vec<i8>> {
    let f = Fp { p: tbl.prime };
    let order_inv = f.inv(f.from_u128(tbl.group_order));
    (0..tbl.len())
        .map(|j| {
            let modular = tbl.classes.iter().enumerate().fold(0, |acc, (i, c)| {
                let t = f.mul(f.from_u128(c.size), tbl.residues[j][tbl.square_map[i]]);
                f.add(acc, t)
            });
            let nu = match f.mul(modular, order_inv) {
                0 => 0i8,
                1 => 1,
                x if x == f.p - 1 => -1,
                _ => return Err(Error::validation("indicator is not in {-1, 0, 1}")),
            };
            let numeric: Complex64 = tbl
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| tbl.value(j, tbl.square_map[i]) * c.size as f64)
                .sum::<Complex64>()
                / tbl.group_order as f64;
            if (numeric - nu as f64).norm() > TOLERANCE {
                return Err(Error::validation("indicator disagrees with its numerical value"));
            }
            Ok(nu)
        })
        .collect()
}

/// Number of solutions of `x² = 1`: orthogonal degrees minus symplectic ones.
pub fn involution_count(tbl: &CharacterTable, indicators: &[i8]) -> i128 {
    tbl.degrees
        .iter()
        .zip(indicators)
        .map(|(&d, &nu)| nu as i128 * d as i128)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationCharacter {
    /// `π` on each class.
    pub values: Vec<u128>,
    /// `⟨π, χ_j⟩` for each irreducible.
    pub multiplicities: Vec<u64>,
}

/// Decomposes the class function `fixes` (fixed-point counts per class of
/// the table's group) into irreducibles.
pub fn permutation_character(tbl: &CharacterTable, fixes: &[u128]) -> Result<PermutationCharacter> {
    if fixes.len() != tbl.classes.len() {
        return Err(Error::precondition("class function has the wrong length"));
    }
    let f = Fp { p: tbl.prime };
    let order_inv = f.inv(f.from_u128(tbl.group_order));
    let pi: Vec<Complex64> = fixes.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    let mut multiplicities = Vec::with_capacity(tbl.len());
    for j in 0..tbl.len() {
        let m = tbl.inner(&pi, &tbl.row(j));
        let r = m.re.round();
        if m.im.abs() > TOLERANCE || (m.re - r).abs() > TOLERANCE || r < 0.0 {
            return Err(Error::validation(format!("multiplicity {m} is not a non-negative integer")));
        }
        // The same multiplicity mod p, using χ(g⁻¹) for the conjugate.
        let modular = tbl.classes.iter().enumerate().fold(0, |acc, (i, c)| {
            let t = f.mul(f.mul(f.from_u128(c.size), f.from_u128(fixes[i])), tbl.residues[j][tbl.inverse_map[i]]);
            f.add(acc, t)
        });
        if f.mul(modular, order_inv) != (r as u64) % f.p {
            return Err(Error::validation("multiplicity disagrees mod p"));
        }
        multiplicities.push(r as u64);
    }
    Ok(PermutationCharacter {
        values: fixes.to_vec(),
        multiplicities,
    })
}

/// The permutation character of a group's own action.
pub fn natural_permutation_character(tbl: &CharacterTable) -> Result<PermutationCharacter> {
    let fixes: Vec<u128> = tbl.classes.iter().map(|c| c.fix_count() as u128).collect();
    permutation_character(tbl, &fixes)
}

/// `max (1 + |χ(g)|) / (1 + χ(1))` over non-linear irreducibles; 1 when
/// there are none.
pub fn ls_fpr_bound(tbl: &CharacterTable, class: usize) -> f64 {
    (0..tbl.len())
        .filter(|&j| tbl.degrees[j] > 1)
        .map(|j| (1.0 + tbl.value(j, class).norm()) / (1.0 + tbl.degrees[j] as f64))
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))))
        .unwrap_or(1.0)
}

/// Whether an exact ratio is at most a numerical bound, allowing for the
/// bound's rounding.
pub fn ratio_within(r: Ratio, bound: f64) -> bool {
    r.to_f64() <= bound + TOLERANCE
}
