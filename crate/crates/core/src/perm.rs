//! Permutations of `{0, …, n-1}` and their textual cycle notation.
//!
//! Points are 0-based internally. Every external form (cycle strings,
//! catalog files, reports) is 1-based.
//!
//! Composition follows the exponent convention used throughout the crate:
//! `a.compose(&b)` (also `&a * &b`) first applies `a`, then `b`, so
//! `x^(ab) = (x^a)^b`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection of `{0, …, degree-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Compact hashable encoding of a permutation used by element stores.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PermKey(Box<[u8]>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    /// Builds the permutation from its cycles, given as lists of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        x + 1
                    )));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidPermutation(format!("point {} repeated", x + 1)));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image `x^self`.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition; degrees must agree.
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (x^g)^(g⁻¹ self g) = (x^self)^g
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation { images: out }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| other.images[y as usize] == self.images[other.images[x] as usize])
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .iter()
            .fold(1u64, |acc, &len| num_integer::lcm(acc, len as u64))
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
    }

    pub fn fix_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// Fixed points and support, both sorted.
    pub fn fix_and_support(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.degree()).partition(|&i| self.image(i) == i)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// All cycle lengths including fixed points, in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        transpositions % 2 == 0
    }

    pub fn key(&self) -> PermKey {
        if self.degree() <= 256 {
            PermKey(self.images.iter().map(|&x| x as u8).collect())
        } else {
            PermKey(
                self.images
                    .iter()
                    .flat_map(|&x| (x as u16).to_le_bytes())
                    .collect(),
            )
        }
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        CycleExpr::parse(text, degree)?.to_permutation()
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&(x + 1).to_string());
            }
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.to_cycle_string(), self.degree())
    }
}

/// A parsed cycle-notation expression, still 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleExpr {
    pub cycles: Vec<Vec<usize>>,
    pub declared_degree: usize,
}

impl CycleExpr {
    /// Grammar: `ws* ( '(' ws* [ point (ws* ',' ws* point)* ] ws* ')' ws* )*`
    /// with `point` a positive decimal integer. Whitespace-only input and
    /// `()` both denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<CycleExpr> {
        if degree == 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: "degree must be at least 1".into(),
            });
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut cycles = Vec::new();
        let mut used = vec![false; degree + 1];
        let err = |pos: usize, msg: String| Error::Parse { pos, msg };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(err(pos, format!("expected '(' but found {:?}", bytes[pos] as char)));
            }
            pos += 1;
            let mut cycle = Vec::new();
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                continue;
            }
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(err(pos, "expected a point".into()));
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| err(start, "point out of range".into()))?;
                if point == 0 {
                    return Err(err(start, "points are 1-based".into()));
                }
                if point > degree {
                    return Err(err(start, format!("point {point} exceeds degree {degree}")));
                }
                if std::mem::replace(&mut used[point], true) {
                    return Err(err(start, format!("repeated point {point}")));
                }
                cycle.push(point);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(&c) => return Err(err(pos, format!("unexpected {:?}", c as char))),
                    None => return Err(err(pos, "unterminated cycle".into())),
                }
            }
            cycles.push(cycle);
        }
        Ok(CycleExpr {
            cycles,
            declared_degree: degree,
        })
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        let zero_based: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|p| p - 1).collect())
            .collect();
        Permutation::from_cycles(self.declared_degree, &zero_based)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let a = cyc("(1,2,3)", 3);
        let b = cyc("(1,2)", 3);
        // 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
        assert_eq!(a.compose(&b).unwrap().images(), &[0, 2, 1]);
        let id = Permutation::identity(3);
        assert_eq!(id.compose(&a).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_mismatched_degrees() {
        let err = cyc("(1,2)", 2).compose(&cyc("(1,2)", 3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn parse_examples() {
        assert_eq!(cyc("(1,2,3)(4,5)", 5).images(), &[1, 2, 0, 4, 3]);
        assert!(cyc("()", 4).is_identity());
        assert!(cyc("  ", 4).is_identity());
        assert_eq!(cyc(" ( 1 , 3 ) ", 3).images(), &[2, 1, 0]);
        assert!(matches!(
            Permutation::parse_cycles("(1,2)(2,3)", 3),
            Err(Error::Parse { .. })
        ));
        assert!(Permutation::parse_cycles("(1,4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::parse_cycles("(1;2)", 3).is_err());
        assert!(Permutation::parse_cycles("(0,1)", 3).is_err());
        assert!(Permutation::parse_cycles("1,2", 3).is_err());
    }

    #[test]
    fn fix_support_and_cycle_type() {
        let id = Permutation::identity(7);
        let (fix, supp) = id.fix_and_support();
        assert_eq!(fix.len(), 7);
        assert!(supp.is_empty());
        assert_eq!(id.cycle_type(), vec![1; 7]);

        assert_eq!(cyc("(1,2)", 5).fix_count(), 3);
        let p = cyc("(1,2,3)(4,5)", 6);
        assert_eq!(p.fix_and_support().1.len(), 5);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(cyc("(1,2,3,4,5,6)", 6).cycle_type(), vec![6]);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn printing() {
        assert_eq!(cyc("(4,5)(1,2,3)", 6).to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn conjugation_matches_products() {
        let p = cyc("(1,2,3)(4,5)", 6);
        let g = cyc("(1,6,4)(2,5)", 6);
        assert_eq!(p.conjugate_by(&g), &(&g.inverse() * &p) * &g);
        assert_eq!(p.pow(-1), p.inverse());
        assert!(p.pow(6).is_identity());
    }
}
