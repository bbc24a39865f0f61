//! Backtrack search over a stabilizer chain for the subgroup preserving a
//! point coloring.
//!
//! Levels are processed bottom-up. At level `i` every point `x` of the
//! basic orbit that is not already reached by the subgroup found so far is
//! tested by searching the coset `u_x G^(i+1)` for a color-preserving
//! element. Nodes are pruned by the color of base images and by the colors
//! of points whose image is already determined by the prefix.

use crate::chain::StabChain;
use crate::group::{orbit_under, PermGroup};
use crate::perm::Permutation;

struct Search<'a> {
    chain: &'a StabChain,
    colors: &'a [u32],
    degree: usize,
    transversals: Vec<Vec<Option<Permutation>>>,
    /// `fixed_after[j]`: points fixed by every element of `G^(j+1)`.
    fixed_after: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(chain: &'a StabChain, colors: &'a [u32]) -> Self {
        let degree = chain.degree();
        let len = chain.len();
        let fixed_after = (0..len)
            .map(|j| {
                let fixed = chain.fixed_points_from(j + 1);
                (0..degree).filter(|&x| fixed[x]).collect()
            })
            .collect();
        Search {
            chain,
            colors,
            degree,
            transversals: vec![vec![None; degree]; len],
            fixed_after,
        }
    }

    fn transversal(&mut self, level: usize, x: usize) -> Permutation {
        if self.transversals[level][x].is_none() {
            self.transversals[level][x] = Some(self.chain.level_transversal(level, x));
        }
        self.transversals[level][x].clone().unwrap()
    }

    #[inline]
    fn respects(&self, p: &Permutation, points: &[usize]) -> bool {
        points
            .iter()
            .all(|&z| self.colors[p.apply(z)] == self.colors[z])
    }

    /// Searches `prefix * G^(level)` for a color-preserving element.
    fn search_coset(&mut self, level: usize, prefix: &Permutation) -> Option<Permutation> {
        if level == self.chain.len() {
            return (0..self.degree)
                .all(|z| self.colors[prefix.apply(z)] == self.colors[z])
                .then(|| prefix.clone());
        }
        let base = self.chain.base()[level];
        let want = self.colors[base];
        let orbit: Vec<u32> = self.chain.level_orbit(level).to_vec();
        for y in orbit {
            let y = y as usize;
            if self.colors[prefix.apply(y)] != want {
                continue;
            }
            let u = self.transversal(level, y);
            let q = prefix.compose_unchecked(&u);
            if !self.respects(&q, &self.fixed_after[level]) {
                continue;
            }
            if let Some(found) = self.search_coset(level + 1, &q) {
                return Some(found);
            }
        }
        None
    }

    /// Runs the subgroup search; `on_found` is called for every new
    /// generator and may return `false` to stop early.
    fn run(&mut self, mut on_found: impl FnMut(&Permutation) -> bool) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let base = self.chain.base();
        for i in (0..self.chain.len()).rev() {
            let b = base[i];
            let mut reached = vec![false; self.degree];
            for y in orbit_under(self.degree, &gens, b) {
                reached[y] = true;
            }
            let mut failed = vec![false; self.degree];
            let orbit: Vec<u32> = self.chain.level_orbit(i).to_vec();
            for x in orbit {
                let x = x as usize;
                if reached[x] || failed[x] {
                    continue;
                }
                if self.colors[x] != self.colors[b] {
                    failed[x] = true;
                    continue;
                }
                let u = self.transversal(i, x);
                let found = if self.respects(&u, &self.fixed_after[i]) {
                    self.search_coset(i + 1, &u)
                } else {
                    None
                };
                match found {
                    Some(g) => {
                        let keep_going = on_found(&g);
                        gens.push(g);
                        if !keep_going {
                            return gens;
                        }
                        for y in orbit_under(self.degree, &gens, b) {
                            reached[y] = true;
                        }
                    }
                    None => {
                        for y in orbit_under(self.degree, &gens, x) {
                            failed[y] = true;
                        }
                    }
                }
            }
        }
        gens
    }
}

fn preserves(p: &Permutation, colors: &[u32]) -> bool {
    (0..p.degree()).all(|x| colors[p.apply(x)] == colors[x])
}

/// Subgroup of `g` preserving the coloring (`colors[x]` is the color of `x`).
pub fn coloring_stabilizer(g: &PermGroup, colors: &[u32]) -> PermGroup {
    assert_eq!(colors.len(), g.degree(), "coloring must cover the domain");
    if g.generators().iter().all(|p| preserves(p, colors)) {
        return g.clone();
    }
    let mut search = Search::new(g.chain(), colors);
    let gens = search.run(|_| true);
    PermGroup::new(g.degree(), gens).expect("elements of g")
}

/// An element of `g` preserving the coloring that lies outside `allowed`
/// (outside the trivial group when `allowed` is `None`), if one exists.
pub fn coloring_automorphism_outside(
    g: &PermGroup,
    colors: &[u32],
    allowed: Option<&PermGroup>,
) -> Option<Permutation> {
    assert_eq!(colors.len(), g.degree(), "coloring must cover the domain");
    let outside = |p: &Permutation| match allowed {
        Some(n) => !n.contains(p),
        None => !p.is_identity(),
    };
    if let Some(p) = g
        .generators()
        .iter()
        .find(|p| preserves(p, colors) && outside(p))
    {
        return Some(p.clone());
    }
    let mut witness = None;
    let mut search = Search::new(g.chain(), colors);
    search.run(|p| {
        if outside(p) {
            witness = Some(p.clone());
            false
        } else {
            true
        }
    });
    witness
}

/// Setwise stabilizer `N_G(set)`.
pub fn setwise_stabilizer(g: &PermGroup, set: &[usize]) -> PermGroup {
    let mut colors = vec![0u32; g.degree()];
    for &x in set {
        colors[x] = 1;
    }
    coloring_stabilizer(g, &colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn setwise_in_sym4_and_alt5() {
        let s4 = families::symmetric(4);
        assert_eq!(setwise_stabilizer(&s4, &[0, 1]).order(), 4);
        assert_eq!(setwise_stabilizer(&s4, &[0, 1, 2, 3]).order(), 24);
        let a5 = families::alternating(5);
        let st = setwise_stabilizer(&a5, &[0, 1]);
        assert_eq!(st.order(), 6);
        assert!(st.generators().iter().all(|p| p.stabilizes_set(&[0, 1])));
    }

    #[test]
    fn coloring_extremes() {
        let s4 = families::symmetric(4);
        assert_eq!(coloring_stabilizer(&s4, &[0, 0, 0, 0]).order(), 24);
        assert_eq!(coloring_stabilizer(&s4, &[0, 1, 2, 3]).order(), 1);
        assert_eq!(coloring_stabilizer(&s4, &[0, 0, 1, 1]).order(), 4);
        assert!(coloring_automorphism_outside(&s4, &[0, 1, 2, 3], None).is_none());
        let w = coloring_automorphism_outside(&s4, &[0, 1, 2, 2], None).unwrap();
        assert_eq!(w.images(), &[0, 1, 3, 2]);
    }
}
