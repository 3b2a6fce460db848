//! Stabiliser chains and the Schreier–Sims construction.

use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    /// Basic orbit in discovery order; `orbit[0] == base`.
    pub orbit: Vec<usize>,
    /// `slot[x]` indexes `transversal` for orbit points, `u32::MAX` otherwise.
    slot: Vec<u32>,
    /// `transversal[i]` maps `base` to `orbit[i]`.
    pub transversal: Vec<Permutation>,
    pub inverse: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![u32::MAX; degree],
            transversal: Vec::new(),
            inverse: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = u32::MAX);
        self.orbit.clear();
        self.transversal.clear();
        self.inverse.clear();
        self.push(self.base, Permutation::identity(degree));
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in 0..self.gens.len() {
                let y = self.gens[g].image(x);
                if self.slot[y] == u32::MAX {
                    let rep = self.transversal[i].then(&self.gens[g]);
                    self.push(y, rep);
                }
            }
            i += 1;
        }
    }

    fn push(&mut self, point: usize, rep: Permutation) {
        self.slot[point] = self.orbit.len() as u32;
        self.orbit.push(point);
        self.inverse.push(rep.inverse());
        self.transversal.push(rep);
    }

    #[inline]
    pub fn rep(&self, point: usize) -> Option<&Permutation> {
        match self.slot[point] {
            u32::MAX => None,
            i => Some(&self.transversal[i as usize]),
        }
    }

    #[inline]
    pub fn inv_rep(&self, point: usize) -> Option<&Permutation> {
        match self.slot[point] {
            u32::MAX => None,
            i => Some(&self.inverse[i as usize]),
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    pub fn with_base(degree: usize, prefix: &[usize]) -> Chain {
        Chain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        }
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the
    /// level where sifting stopped (`levels.len()` if it went all the way).
    pub fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.image(level.base);
            match level.inv_rep(x) {
                Some(inv) => g = g.then(inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (res, _) = self.sift_from(g.clone(), 0);
        res.is_identity()
    }

    /// Adds a residue that fixes the first `drop` base points.
    fn insert(&mut self, residue: Permutation, drop: usize) {
        debug_assert!(!residue.is_identity());
        if drop == self.levels.len() {
            let b = residue
                .first_moved()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(self.degree, b));
        }
        for level in &mut self.levels[..=drop] {
            level.gens.push(residue.clone());
            level.rebuild(self.degree);
        }
    }

    /// Sifts `g` through the chain and records the residue if non-trivial.
    pub fn absorb(&mut self, g: &Permutation) -> bool {
        let (res, drop) = self.sift_from(g.clone(), 0);
        if res.is_identity() {
            return false;
        }
        self.insert(res, drop);
        true
    }

    /// Deterministic Schreier–Sims: completes the chain so that every
    /// Schreier generator sifts to the identity.
    pub fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut jump = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                for si in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let s = &level.gens[si];
                    let u = &level.transversal[oi];
                    let target = s.image(level.orbit[oi]);
                    let v_inv = level.inv_rep(target).expect("orbit is closed");
                    let h = u.then(s).then(v_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, drop) = self.sift_from(h, lvl + 1);
                    if !res.is_identity() {
                        self.insert(res, drop);
                        jump = Some(drop);
                        break 'scan;
                    }
                }
            }
            match jump {
                Some(d) => i = d as isize,
                None => i -= 1,
            }
        }
    }

    /// Random Schreier–Sims that stops once the chain reaches `target`.
    /// Returns false if the target was overshot or progress stalled.
    pub fn complete_to_order<R: Rng>(
        &mut self,
        gens: &[Permutation],
        target: u128,
        rng: &mut R,
    ) -> bool {
        let mut pr = ProductReplacement::new(self.degree, gens, rng);
        let mut idle = 0usize;
        while self.order() < target {
            let g = pr.next(rng);
            if self.absorb(&g) {
                idle = 0;
            } else {
                idle += 1;
                if idle > 400 {
                    return false;
                }
            }
        }
        self.order() == target
    }
}

/// Product-replacement generator of pseudo-random group elements.
pub(crate) struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub fn new<R: Rng>(degree: usize, gens: &[Permutation], rng: &mut R) -> Self {
        let mut state: Vec<Permutation> = gens.to_vec();
        if state.is_empty() {
            state.push(Permutation::identity(degree));
        }
        let k = gens.len();
        while state.len() < 10.max(k) {
            let g = state[state.len() % k.max(1)].clone();
            state.push(g);
        }
        let mut pr = ProductReplacement {
            state,
            acc: Permutation::identity(degree),
        };
        for _ in 0..60 {
            pr.next(rng);
        }
        pr
    }

    pub fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let n = self.state.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if rng.gen_bool(0.5) {
            self.state[i].then(&rhs)
        } else {
            rhs.then(&self.state[i])
        };
        self.acc = self.acc.then(&self.state[i]);
        self.acc.clone()
    }
}
