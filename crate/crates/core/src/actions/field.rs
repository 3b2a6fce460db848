//! Small finite fields and the Möbius actions on projective lines.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Field orders with arithmetic tables.
pub const SUPPORTED_Q: [u32; 8] = [4, 5, 7, 8, 9, 11, 13, 16];

/// Irreducible polynomial for each non-prime supported order, as
/// coefficients of `1, x, …, x^k` (leading coefficient last).
fn modulus(q: u32) -> Option<(u32, &'static [u32])> {
    match q {
        4 => Some((2, &[1, 1, 1])),
        8 => Some((2, &[1, 1, 0, 1])),
        9 => Some((3, &[1, 0, 1])),
        16 => Some((2, &[1, 1, 0, 0, 1])),
        _ => None,
    }
}

/// `GF(q)` with elements encoded as integers `0..q`: the base-`p` digits
/// are the coefficients of a polynomial in the chosen root. Multiplication
/// goes through log/antilog tables built from a primitive element.
#[derive(Debug, Clone)]
pub struct Field {
    q: u32,
    p: u32,
    k: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        if !SUPPORTED_Q.contains(&q) && !(q >= 2 && is_prime(q)) {
            return Err(Error::precondition(format!("unsupported field order {q}")));
        }
        let (p, k) = match modulus(q) {
            Some((p, m)) => (p, m.len() as u32 - 1),
            None if is_prime(q) => (q, 1),
            None => return Err(Error::precondition(format!("unsupported field order {q}"))),
        };
        let mut f = Field {
            q,
            p,
            k,
            log: Vec::new(),
            exp: Vec::new(),
        };
        let prim = (2..q.max(3))
            .chain(std::iter::once(1))
            .find(|&g| f.slow_order(g) == q - 1)
            .expect("a finite field has a primitive element");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut x = 1;
        for _ in 0..q - 1 {
            exp.push(x);
            x = f.slow_mul(x, prim);
        }
        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        f.log = log;
        f.exp = exp;
        Ok(f)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let s: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|u| (self.p - u) % self.p)
            .collect();
        self.from_digits(&s)
    }

    /// Schoolbook product reduced by the modulus; used to build the tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        if let Some((_, m)) = modulus(self.q) {
            // m is monic of degree k: x^k = -(m_0 + … + m_{k-1} x^{k-1}).
            for deg in (k..2 * k).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                prod[deg] = 0;
                for (i, &mi) in m[..k].iter().enumerate() {
                    let t = deg - k + i;
                    prod[t] = (prod[t] + self.p * self.p - c * mi % self.p) % self.p;
                }
            }
        }
        self.from_digits(&prod[..k])
    }

    fn slow_order(&self, g: u32) -> u32 {
        if g == 0 {
            return 0;
        }
        let mut x = g;
        let mut n = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[e as usize])
    }

    /// The primitive element used for the tables.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = (self.log[a as usize] as u64 * e as u64) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MobiusFlavor {
    PSL,
    PGL,
    PGammaL,
}

impl std::str::FromStr for MobiusFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PSL" => Ok(MobiusFlavor::PSL),
            "PGL" => Ok(MobiusFlavor::PGL),
            "PGammaL" | "PΓL" | "PGaL" => Ok(MobiusFlavor::PGammaL),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// Order of the Möbius group.
pub fn mobius_order(q: u32, flavor: MobiusFlavor) -> u128 {
    let q = q as u128;
    let pgl = q * (q * q - 1);
    match flavor {
        MobiusFlavor::PSL => pgl / if q % 2 == 0 { 1 } else { 2 },
        MobiusFlavor::PGL => pgl,
        MobiusFlavor::PGammaL => {
            let f = Field::new(q as u32).expect("supported order");
            pgl * f.degree() as u128
        }
    }
}

/// The group acting on the `q + 1` points of the projective line; the point
/// at infinity is `q` (1-based `q + 1`).
pub fn mobius_action(q: u32, flavor: MobiusFlavor) -> Result<PermGroup> {
    if !SUPPORTED_Q.contains(&q) {
        return Err(Error::precondition(format!(
            "unsupported field order {q}; supported: {SUPPORTED_Q:?}"
        )));
    }
    let f = Field::new(q)?;
    let inf = q;
    let n = q as usize + 1;
    let map = |h: &dyn Fn(u32) -> u32| {
        Permutation::from_images((0..=q).map(|z| h(z) as usize).collect()).expect("Möbius maps are bijective")
    };
    let w = f.primitive();
    let w2 = f.mul(w, w);
    let translate = map(&|z| if z == inf { inf } else { f.add(z, 1) });
    let scale_sq = map(&|z| if z == inf { inf } else { f.mul(z, w2) });
    let invert = map(&|z| {
        if z == inf {
            0
        } else if z == 0 {
            inf
        } else {
            f.neg(f.inv(z).unwrap())
        }
    });
    let mut gens = vec![translate, scale_sq, invert];
    if flavor != MobiusFlavor::PSL {
        gens.push(map(&|z| if z == inf { inf } else { f.mul(z, w) }));
    }
    if flavor == MobiusFlavor::PGammaL && f.degree() > 1 {
        gens.push(map(&|z| if z == inf { inf } else { f.frobenius(z) }));
    }
    PermGroup::with_order(n, gens, mobius_order(q, flavor), &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_every_supported_order() {
        for q in SUPPORTED_Q {
            let f = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                    for c in 0..q {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.pow(f.primitive(), q - 1), 1);
        }
    }

    #[test]
    fn mobius_orders() {
        assert_eq!(mobius_action(5, MobiusFlavor::PSL).unwrap().order(), 60);
        assert_eq!(mobius_action(8, MobiusFlavor::PGammaL).unwrap().order(), 1512);
        for q in SUPPORTED_Q {
            for fl in [MobiusFlavor::PSL, MobiusFlavor::PGL, MobiusFlavor::PGammaL] {
                let g = mobius_action(q, fl).unwrap();
                assert_eq!(g.order(), mobius_order(q, fl));
                assert_eq!(g.degree(), q as usize + 1);
            }
            let q = q as u128;
            assert_eq!(mobius_order(q as u32, MobiusFlavor::PGL), (q + 1) * q * (q - 1));
        }
        assert!(mobius_action(3, MobiusFlavor::PSL).is_err());
    }
}
