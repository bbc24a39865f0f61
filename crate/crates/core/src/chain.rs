//! Stabilizer chains built by deterministic Schreier–Sims.
//!
//! Each level stores its base point, the strong generators fixing all
//! earlier base points, and a Schreier tree for the basic orbit. The tree
//! label of a point `x` is the index `s` of the level generator with
//! `gens[s](parent) = x`; walking labels back to the base point recovers a
//! coset representative without storing one permutation per orbit point.

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub inv_gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    label: Vec<u32>,
    /// For orbit index `i`, Schreier generators with gens `0..checked[i]` are known to sift.
    checked: Vec<u32>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut label = vec![NONE; degree];
        label[base] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![base as u32],
            label,
            checked: vec![0],
        }
    }

    #[inline]
    pub fn in_orbit(&self, x: usize) -> bool {
        self.label[x] != NONE
    }

    /// Adds a generator and extends the Schreier tree.
    fn push_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        let new = self.gens.len() - 1;
        let old_len = self.orbit.len();
        for i in 0..old_len {
            let x = self.orbit[i] as usize;
            let y = self.gens[new].apply(x);
            if self.label[y] == NONE {
                self.label[y] = new as u32;
                self.orbit.push(y as u32);
                self.checked.push(0);
            }
        }
        let mut i = old_len;
        while i < self.orbit.len() {
            let x = self.orbit[i] as usize;
            for s in 0..self.gens.len() {
                let y = self.gens[s].apply(x);
                if self.label[y] == NONE {
                    self.label[y] = s as u32;
                    self.orbit.push(y as u32);
                    self.checked.push(0);
                }
            }
            i += 1;
        }
    }

    /// Coset representative mapping the base point to `x`.
    pub fn transversal(&self, x: usize) -> Permutation {
        debug_assert!(self.in_orbit(x));
        let degree = self.label.len();
        let mut u = Permutation::identity(degree);
        let mut y = x;
        while self.label[y] != ROOT {
            let s = self.label[y] as usize;
            u = u.compose_unchecked(&self.gens[s]);
            y = self.inv_gens[s].apply(y);
        }
        u
    }

    /// Replaces `h` by `u_b^-1 h` where `b = h(base)`; returns false if `b` is outside the orbit.
    fn strip(&self, h: &mut Permutation) -> bool {
        let mut b = h.apply(self.base);
        if self.label[b] == NONE {
            return false;
        }
        while self.label[b] != ROOT {
            let s = self.label[b] as usize;
            *h = self.inv_gens[s].compose_unchecked(h);
            b = self.inv_gens[s].apply(b);
        }
        true
    }
}

/// A base and strong generating set with Schreier trees.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    /// Chain for the group generated by `gens`, with `base_prefix` as the
    /// first base points. When `known_order` is given the construction stops
    /// as soon as the transversal product reaches it.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        base_prefix: &[usize],
        known_order: Option<u128>,
    ) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &b in base_prefix {
            if !chain.levels.iter().any(|l| l.base == b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        chain.add_generators(gens, known_order);
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths. Panics if it exceeds `u128`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    /// Strong generators fixing the first `level` base points.
    pub fn strong_generators_from(&self, level: usize) -> Vec<Permutation> {
        self.levels
            .get(level)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.strong_generators_from(0)
    }

    /// The chain of the stabilizer of the first `level` base points.
    pub fn tail(&self, level: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[level.min(self.levels.len())..].to_vec(),
        }
    }

    /// Sifts `g` through the levels starting at `from`; returns the level
    /// where sifting stopped and the residue.
    pub fn sift_from(&self, g: &Permutation, from: usize) -> (usize, Permutation) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            if !level.strip(&mut h) {
                return (i, h);
            }
        }
        (self.levels.len(), h)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).1.is_identity()
    }

    /// Adds generators and restores the strong generating property.
    pub fn add_generators(&mut self, gens: &[Permutation], known_order: Option<u128>) {
        for g in gens {
            if known_order.is_some_and(|t| self.order() >= t) {
                return;
            }
            if g.is_identity() || self.contains(g) {
                continue;
            }
            self.insert_strong(g.clone(), 0);
            self.complete(known_order);
        }
    }

    /// Inserts `g` (which fixes the base points before `from`) into every
    /// level from `from` on whose earlier base points it fixes, appending a
    /// level if `g` fixes the whole base.
    fn insert_strong(&mut self, g: Permutation, from: usize) {
        let mut i = from;
        while i < self.levels.len() {
            self.levels[i].push_gen(g.clone());
            if g.apply(self.levels[i].base) != self.levels[i].base {
                return;
            }
            i += 1;
        }
        let b = g.first_moved().expect("inserting identity");
        let mut level = Level::new(b, self.degree);
        level.push_gen(g);
        self.levels.push(level);
    }

    fn complete(&mut self, known_order: Option<u128>) {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            if known_order.is_some_and(|t| self.order() >= t) {
                return;
            }
            match self.next_failing_schreier(l, known_order) {
                Some((residue, drop)) => {
                    // residue fixes every base point before `drop`
                    self.insert_strong(residue, l + 1);
                    i = drop.min(self.levels.len() - 1) + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Checks unchecked Schreier generators of level `l` until one fails to sift.
    fn next_failing_schreier(
        &mut self,
        l: usize,
        known_order: Option<u128>,
    ) -> Option<(Permutation, usize)> {
        let mut idx = 0;
        while idx < self.levels[l].orbit.len() {
            while (self.levels[l].checked[idx] as usize) < self.levels[l].gens.len() {
                let s = self.levels[l].checked[idx] as usize;
                self.levels[l].checked[idx] += 1;
                let level = &self.levels[l];
                let x = level.orbit[idx] as usize;
                let y = level.gens[s].apply(x);
                // tree edge: the Schreier generator is the identity
                if level.label[y] == s as u32 && level.inv_gens[s].apply(y) == x {
                    continue;
                }
                let ux = level.transversal(x);
                let mut h = level.gens[s].compose_unchecked(&ux);
                let stripped = level.strip(&mut h);
                debug_assert!(stripped);
                let (drop, residue) = self.sift_from(&h, l + 1);
                if !residue.is_identity() {
                    return Some((residue, drop));
                }
                if known_order.is_some_and(|t| self.order() >= t) {
                    return None;
                }
            }
            idx += 1;
        }
        None
    }

    /// Strips `g` through all levels, returning the residue.
    pub fn residue(&self, g: &Permutation) -> Permutation {
        self.sift_from(g, 0).1
    }

    pub(crate) fn level_transversal(&self, level: usize, x: usize) -> Permutation {
        self.levels[level].transversal(x)
    }

    pub(crate) fn level_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Points fixed by every strong generator of level `level` (all points when past the end).
    pub(crate) fn fixed_points_from(&self, level: usize) -> Vec<bool> {
        let mut fixed = vec![true; self.degree];
        if let Some(l) = self.levels.get(level) {
            for g in &l.gens {
                for (x, f) in fixed.iter_mut().enumerate() {
                    if g.apply(x) != x {
                        *f = false;
                    }
                }
            }
        }
        fixed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn sym4_order() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        let chain = StabChain::build(4, &gens, &[], None);
        assert_eq!(chain.order(), 24);
        assert!(chain.contains(&cyc(4, &[&[2, 3]])));
    }

    #[test]
    fn prescribed_base_and_tail() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        let chain = StabChain::build(4, &gens, &[3, 2], Some(24));
        assert_eq!(&chain.base()[..2], &[3, 2]);
        assert_eq!(chain.order(), 24);
        let tail = chain.tail(2);
        assert_eq!(tail.order(), 2);
        for g in tail.strong_generators() {
            assert!(g.fixes_all(&[2, 3]));
        }
    }

    #[test]
    fn alt5_from_three_cycles() {
        let gens = [cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[2, 3, 4]])];
        let chain = StabChain::build(5, &gens, &[], None);
        assert_eq!(chain.order(), 60);
        assert!(!chain.contains(&cyc(5, &[&[0, 1]])));
    }
}
