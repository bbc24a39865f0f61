//! Stabilizers in actions too large to write out as permutations.
//!
//! The group is held in a small faithful permutation representation and
//! acts on an arbitrary domain of `u64` labels through [`Action`]. Point
//! stabilizers are generated by Schreier generators, which stay small
//! permutations, and collected into a chain until the orbit-stabilizer
//! order is reached.

use std::collections::HashMap;

use crate::chain::StabChain;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A left action: `act(a * b, x) == act(a, act(b, x))`.
pub trait Action {
    fn act(&self, g: &Permutation, x: u64) -> u64;
}

/// The natural action on points.
pub struct Natural;

impl Action for Natural {
    fn act(&self, g: &Permutation, x: u64) -> u64 {
        g.apply(x as usize) as u64
    }
}

/// Orbit of `x` under `gens`, in breadth-first order.
pub fn orbit<A: Action>(action: &A, gens: &[Permutation], x: u64) -> Vec<u64> {
    let mut seen: HashMap<u64, ()> = HashMap::from([(x, ())]);
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let y = out[i];
        for g in gens {
            let z = action.act(g, y);
            if seen.insert(z, ()).is_none() {
                out.push(z);
            }
        }
        i += 1;
    }
    out
}

/// Stabilizer of `x` in `g`.
pub fn point_stabilizer<A: Action>(g: &PermGroup, action: &A, x: u64) -> PermGroup {
    let degree = g.degree();
    let gens: Vec<Permutation> = g.nontrivial_generators().cloned().collect();
    if gens.is_empty() {
        return g.clone();
    }
    let mut index: HashMap<u64, usize> = HashMap::from([(x, 0)]);
    let mut points = vec![x];
    let mut reps = vec![Permutation::identity(degree)];
    let mut i = 0;
    while i < points.len() {
        for s in &gens {
            let z = action.act(s, points[i]);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(z) {
                e.insert(points.len());
                points.push(z);
                reps.push(s.compose_unchecked(&reps[i]));
            }
        }
        i += 1;
    }
    let total = g.order();
    let target = total / points.len() as u128;
    debug_assert_eq!(target * points.len() as u128, total, "orbit length divides the order");

    let mut chain = StabChain::build(degree, &[], &[], None);
    let mut found: Vec<Permutation> = Vec::new();
    'outer: for (i, u) in reps.iter().enumerate() {
        if chain.order() == target {
            break;
        }
        for s in &gens {
            let su = s.compose_unchecked(u);
            let j = index[&action.act(s, points[i])];
            let schreier = reps[j].inverse().compose_unchecked(&su);
            if !schreier.is_identity() && !chain.contains(&schreier) {
                chain.add_generators(std::slice::from_ref(&schreier), None);
                found.push(schreier);
                if chain.order() == target {
                    break 'outer;
                }
            }
        }
    }
    debug_assert_eq!(chain.order(), target);
    PermGroup::with_chain(degree, found, chain)
}

/// Pointwise stabilizer of `xs`, one point at a time.
pub fn pointwise_stabilizer<A: Action>(g: &PermGroup, action: &A, xs: &[u64]) -> PermGroup {
    let mut current = g.clone();
    for &x in xs {
        if current.is_trivial() {
            break;
        }
        current = point_stabilizer(&current, action, x);
    }
    current
}
