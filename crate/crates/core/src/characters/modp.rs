//! Linear algebra over a prime field `F_p`, `p < 2^32`.

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_u128(&self, a: u128) -> u64 {
        (a % self.p as u128) as u64
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        let n = self.p - 1;
        let primes = prime_factors(n);
        (2..self.p)
            .find(|&g| primes.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    /// Characteristic polynomial of a square matrix via reduction to
    /// Hessenberg form; coefficients from degree 0 up, monic.
    pub fn charpoly(&self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        // Similarity transforms to upper Hessenberg form.
        for col in 0..n.saturating_sub(2) {
            let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
                continue;
            };
            if piv != col + 1 {
                h.swap(piv, col + 1);
                for row in h.iter_mut() {
                    row.swap(piv, col + 1);
                }
            }
            let inv = self.inv(h[col + 1][col]);
            for r in col + 2..n {
                let f = self.mul(h[r][col], inv);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = self.mul(f, h[col + 1][c]);
                    h[r][c] = self.sub(h[r][c], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(f, row[r]);
                    row[col + 1] = self.add(row[col + 1], t);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - Σ_i h_ik (Π_{j=i+1..k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[k][k], c));
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let f = self.mul(prod, h[i][k]);
                if f == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Basis of the null space `{x : m x = 0}` as vectors.
    pub fn nullspace(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut a = m.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let inv = self.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, a[i][f]);
                }
                v
            })
            .collect()
    }

    /// Row-reduces `rows` in place to reduced echelon form and returns the
    /// pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let n = rows.len();
        let cols = if n == 0 { 0 } else { rows[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..n).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..n {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
