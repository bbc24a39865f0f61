use std::collections::VecDeque;
use std::sync::OnceLock;

use rand::Rng;

use crate::chain::StabChain;
use crate::perm::Permutation;
use crate::{Error, Result};

/// A permutation group given by generators, with a lazily built stabilizer chain.
///
/// Once the chain exists the group is immutable and can be shared freely
/// between threads.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// Group generated by `generators`; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("identity has matching degree")
    }

    pub(crate) fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let g = PermGroup::new(degree, generators).expect("generators from a chain");
        let _ = g.chain.set(chain);
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generators other than the identity.
    pub fn nontrivial_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[], None))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.nontrivial_generators().next().is_none()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain().strong_generators()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equal as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    /// Generators of `self` normalize `sub` and `sub` is contained in `self`.
    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> bool {
        sub.is_subgroup_of(self)
            && self.generators.iter().all(|g| {
                sub.generators
                    .iter()
                    .all(|n| sub.contains(&n.conjugate_by(g)))
            })
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_under(self.degree, &self.generators, x)
    }

    /// All orbits, each sorted, listed by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let mut o = self.orbit(x);
                o.sort_unstable();
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Pointwise stabilizer `C_G(points)`, computed by rebuilding the chain
    /// with `points` as a base prefix.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &x in points {
            if x >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
        }
        let mut prefix: Vec<usize> = Vec::with_capacity(points.len());
        for &x in points {
            if !prefix.contains(&x) {
                prefix.push(x);
            }
        }
        let chain = StabChain::build(
            self.degree,
            &self.strong_generators(),
            &prefix,
            Some(self.order()),
        );
        let tail = chain.tail(prefix.len());
        let gens = tail.strong_generators();
        Ok(PermGroup::with_chain(self.degree, gens, tail))
    }

    /// Subgroup generated by `gens` (assumed to lie in `self`).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut chain = StabChain::build(self.degree, gens, &[], None);
        let mut all: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut queue: VecDeque<Permutation> = all.iter().cloned().collect();
        while let Some(n) = queue.pop_front() {
            for g in self.nontrivial_generators() {
                let c = n.conjugate_by(g);
                if !chain.contains(&c) {
                    chain.add_generators(std::slice::from_ref(&c), None);
                    all.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        PermGroup::with_chain(self.degree, all, chain)
    }

    /// Derived subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens: Vec<&Permutation> = self.nontrivial_generators().collect();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Uniformly random element, drawn as a product of random coset representatives.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let mut g = Permutation::identity(self.degree);
        for level in (0..chain.len()).rev() {
            let orbit = chain.level_orbit(level);
            let x = orbit[rng.gen_range(0..orbit.len())] as usize;
            g = chain.level_transversal(level, x).compose_unchecked(&g);
        }
        g
    }

    /// Image of the group acting on `points` (which must be a union of orbits
    /// or an invariant block), relabelled to `0..points.len()` in the given order.
    pub fn restriction(&self, points: &[usize]) -> Result<PermGroup> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &x) in points.iter().enumerate() {
            index[x] = i;
        }
        let mut gens = Vec::new();
        for g in self.strong_generators() {
            let images: Vec<usize> = points
                .iter()
                .map(|&x| index[g.apply(x)])
                .collect();
            if images.contains(&usize::MAX) {
                return Err(Error::NotInvariant);
            }
            gens.push(Permutation::from_images(images)?);
        }
        PermGroup::new(points.len(), gens)
    }

    /// Is the group the full alternating or symmetric group on its points?
    pub fn contains_alternating(&self) -> bool {
        let n = self.degree;
        if n <= 2 {
            return true;
        }
        let half_factorial = (3..=n as u128).product::<u128>();
        self.order() >= half_factorial
    }
}

pub(crate) fn orbit_under(degree: usize, gens: &[Permutation], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                orbit.push(z);
            }
        }
        i += 1;
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn sym_alt_orders() {
        assert_eq!(families::symmetric(4).order(), 24);
        assert_eq!(families::alternating(5).order(), 60);
        assert_eq!(families::symmetric(1).order(), 1);
    }

    #[test]
    fn orbits_of_small_groups() {
        assert_eq!(families::symmetric(3).orbit(0).len(), 3);
        let id = PermGroup::trivial(4);
        assert_eq!(id.orbit(2), vec![2]);
        // Sym(3) permuting columns of a 2x3 grid: orbit of (0,0) is row 0.
        let g = families::row_action(&families::symmetric(3), 2);
        let mut o = g.orbit(0);
        o.sort();
        assert_eq!(o, vec![0, 1, 2]);
    }

    #[test]
    fn pointwise_stabilizers() {
        let s4 = families::symmetric(4);
        let st = s4.pointwise_stabilizer(&[0]).unwrap();
        assert_eq!(st.order(), 6);
        assert!(st.generators().iter().all(|g| g.apply(0) == 0));
        assert_eq!(s4.pointwise_stabilizer(&[0, 1, 2]).unwrap().order(), 1);
        let a5 = families::alternating(5);
        assert_eq!(a5.pointwise_stabilizer(&[0, 1]).unwrap().order(), 3);
        assert!(s4.pointwise_stabilizer(&[7]).is_err());
    }

    #[test]
    fn derived_subgroups() {
        let s4 = families::symmetric(4);
        let d = s4.derived_subgroup();
        assert_eq!(d.order(), 12);
        assert!(d.generators().iter().all(|g| g.is_even()));
        assert_eq!(families::cyclic(6).derived_subgroup().order(), 1);
        let w = families::wreath(&families::symmetric(5), &families::cyclic(2));
        let kernel = w.pointwise_stabilizer(&[]).unwrap();
        assert_eq!(kernel.order(), 120 * 120 * 2);
        let base = families::wreath(&families::symmetric(5), &PermGroup::trivial(2));
        assert_eq!(base.derived_subgroup().order(), 60 * 60);
    }

    #[test]
    fn normality() {
        let s4 = families::symmetric(4);
        assert!(s4.is_normal_subgroup(&families::alternating(4)));
        let stab = s4.pointwise_stabilizer(&[0]).unwrap();
        assert!(!s4.is_normal_subgroup(&stab));
    }
}
