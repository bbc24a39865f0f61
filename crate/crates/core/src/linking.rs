//! Diagonal linking of the socle of a block kernel whose block
//! restrictions contain `Alt(m)`.

use std::collections::VecDeque;

use crate::blocks::{block_action, BlockSystem};
use crate::group::PermGroup;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LinkingStructure {
    /// The derived subgroup of the kernel, certified perfect.
    pub socle: PermGroup,
    /// Partition of the block indices into linking classes, each sorted.
    pub classes: Vec<Vec<usize>>,
    /// Common size of the linking classes.
    pub linking_factor: usize,
    /// `coordinates[j][i]` is the point of block `j` with coordinate `i`.
    /// Within a class the socle acts on coordinates identically in every block.
    pub coordinates: Vec<Vec<usize>>,
}

impl LinkingStructure {
    pub fn class_of(&self, block: usize) -> (usize, usize) {
        for (u, class) in self.classes.iter().enumerate() {
            if let Some(w) = class.iter().position(|&b| b == block) {
                return (u, w);
            }
        }
        unreachable!("every block lies in a class")
    }
}

fn half_factorial(m: usize) -> u128 {
    (3..=m as u128).product()
}

/// Computes the socle, linking classes and per-class coordinates for a
/// kernel `n` fixing every block of `blocks`.
///
/// Requires block size `m >= 5`, `m != 6`, and every block restriction of
/// `n` to contain `Alt(m)`.
pub fn linking_structure(n: &PermGroup, blocks: &BlockSystem) -> Result<LinkingStructure> {
    let m = blocks.block_size;
    let k = blocks.block_count;
    if m < 5 || m == 6 {
        return Err(Error::Hypothesis(format!(
            "linking structure needs block size >= 5 other than 6, got {m}"
        )));
    }
    let data = block_action(n, blocks)?;
    if !data.top_group.is_trivial() {
        return Err(Error::Hypothesis("kernel moves blocks".into()));
    }
    let alt_order = half_factorial(m);
    for (j, block) in blocks.blocks.iter().enumerate() {
        if n.restriction(block)?.order() < alt_order {
            return Err(Error::Hypothesis(format!(
                "restriction to block {j} does not contain Alt({m})"
            )));
        }
    }

    let socle = n.derived_subgroup();
    if socle.derived_subgroup().order() != socle.order() {
        return Err(Error::Structure("derived subgroup of the kernel is not perfect".into()));
    }
    for (j, block) in blocks.blocks.iter().enumerate() {
        if socle.restriction(block)?.order() != alt_order {
            return Err(Error::Structure(format!(
                "socle restricted to block {j} is not Alt({m})"
            )));
        }
    }

    // blocks a, b are linked iff C_socle(block a) fixes block b pointwise
    let mut linked = vec![vec![false; k]; k];
    for a in 0..k {
        let c = socle.pointwise_stabilizer(&blocks.blocks[a])?;
        for b in 0..k {
            linked[a][b] = c.generators().iter().all(|g| g.fixes_all(&blocks.blocks[b]));
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; k];
    for a in 0..k {
        if assigned[a] {
            continue;
        }
        let class: Vec<usize> = (0..k).filter(|&b| linked[a][b]).collect();
        for &b in &class {
            if assigned[b] || (0..k).any(|c| linked[b][c] != linked[a][c]) {
                return Err(Error::Structure("linking relation is not an equivalence".into()));
            }
            assigned[b] = true;
        }
        classes.push(class);
    }
    let t = classes[0].len();
    if classes.iter().any(|c| c.len() != t) {
        return Err(Error::Structure("linking classes of unequal size".into()));
    }
    let expected = alt_order
        .checked_pow((k / t) as u32)
        .ok_or_else(|| Error::Structure("socle order overflow".into()))?;
    if socle.order() != expected {
        return Err(Error::Structure(format!(
            "socle order {} differs from (m!/2)^(k/t) = {expected}",
            socle.order()
        )));
    }

    let mut coordinates: Vec<Vec<usize>> = blocks.blocks.clone();
    for class in &classes {
        let reference = class[0];
        for &b in &class[1..] {
            coordinates[b] = equivariant_bijection(&socle, blocks, reference, b)?;
        }
    }

    let linking = LinkingStructure {
        socle,
        classes,
        linking_factor: t,
        coordinates,
    };
    verify_coordinatewise(&linking, blocks)?;
    Ok(linking)
}

/// Bijection from block `a` (in sorted order) to block `b` commuting with
/// the socle, returned as the images of the sorted points of block `a`.
fn equivariant_bijection(
    socle: &PermGroup,
    blocks: &BlockSystem,
    a: usize,
    b: usize,
) -> Result<Vec<usize>> {
    let n = socle.degree();
    let seed = blocks.blocks[a][0];
    let seed_stab = socle.pointwise_stabilizer(&[seed])?;
    let candidates = blocks.blocks[b]
        .iter()
        .copied()
        .filter(|&y| seed_stab.generators().iter().all(|g| g.apply(y) == y));
    'candidate: for y in candidates {
        let mut map = vec![usize::MAX; n];
        map[seed] = y;
        let mut queue = VecDeque::from([seed]);
        while let Some(x) = queue.pop_front() {
            for s in socle.generators() {
                let (x2, y2) = (s.apply(x), s.apply(map[x]));
                if map[x2] == usize::MAX {
                    map[x2] = y2;
                    queue.push_back(x2);
                } else if map[x2] != y2 {
                    continue 'candidate;
                }
            }
        }
        let images: Vec<usize> = blocks.blocks[a].iter().map(|&x| map[x]).collect();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted == blocks.blocks[b] {
            return Ok(images);
        }
    }
    Err(Error::Structure(format!(
        "no socle-equivariant bijection between blocks {a} and {b}"
    )))
}

fn verify_coordinatewise(l: &LinkingStructure, blocks: &BlockSystem) -> Result<()> {
    let n = blocks.degree();
    let mut coord_of = vec![0usize; n];
    for coords in &l.coordinates {
        for (i, &x) in coords.iter().enumerate() {
            coord_of[x] = i;
        }
    }
    for s in l.socle.generators() {
        for class in &l.classes {
            let reference: Vec<usize> = l.coordinates[class[0]]
                .iter()
                .map(|&x| coord_of[s.apply(x)])
                .collect();
            for &b in class {
                for (i, &x) in l.coordinates[b].iter().enumerate() {
                    let y = s.apply(x);
                    if blocks.assignment[y] != b || coord_of[y] != reference[i] {
                        return Err(Error::Structure(
                            "socle does not act identically across a linking class".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_action;
    use crate::families;

    fn kernel_of(g: &PermGroup, m: usize) -> (PermGroup, BlockSystem) {
        let b = BlockSystem::consecutive(m, g.degree() / m);
        (block_action(g, &b).unwrap().kernel, b)
    }

    #[test]
    fn direct_product_has_factor_one() {
        let g = families::wreath(&families::symmetric(5), &families::cyclic(2));
        let (n, b) = kernel_of(&g, 5);
        let l = linking_structure(&n, &b).unwrap();
        assert_eq!(l.linking_factor, 1);
        assert_eq!(l.classes.len(), 2);
    }

    #[test]
    fn diagonal_swap_is_fully_linked() {
        let g = families::diagonal_wreath(5, 1, &families::symmetric(2)).unwrap();
        let (n, b) = kernel_of(&g, 5);
        let l = linking_structure(&n, &b).unwrap();
        assert_eq!(l.linking_factor, 2);
        assert_eq!(l.classes, vec![vec![0, 1]]);
        assert_eq!(l.socle.order(), 60);
    }

    #[test]
    fn sym7_wreath_sym3() {
        let g = families::wreath(&families::symmetric(7), &families::symmetric(3));
        let (n, b) = kernel_of(&g, 7);
        let l = linking_structure(&n, &b).unwrap();
        assert_eq!(l.linking_factor, 1);
        assert_eq!(l.classes.len(), 3);
        assert_eq!(l.socle.order(), 2520u128.pow(3));
    }

    #[test]
    fn twisted_diagonal_needs_nontrivial_bijection() {
        // diagonal Sym(5) where the second block is relabelled by (0 1 2 3 4)
        let g = families::diagonal_wreath(5, 1, &families::symmetric(2)).unwrap();
        let relabel = crate::Permutation::from_cycles(10, &[&[5, 6, 7, 8, 9]]).unwrap();
        let gens = g.generators().iter().map(|p| p.conjugate_by(&relabel)).collect();
        let twisted = PermGroup::new(10, gens).unwrap();
        let (n, b) = kernel_of(&twisted, 5);
        let l = linking_structure(&n, &b).unwrap();
        assert_eq!(l.linking_factor, 2);
        assert_ne!(l.coordinates[1], vec![5, 6, 7, 8, 9]);
    }

    #[test]
    fn rejects_small_and_six() {
        let g = families::wreath(&families::symmetric(4), &families::cyclic(2));
        let (n, b) = kernel_of(&g, 4);
        assert!(matches!(linking_structure(&n, &b), Err(Error::Hypothesis(_))));
        let g = families::wreath(&families::symmetric(6), &families::cyclic(2));
        let (n, b) = kernel_of(&g, 6);
        assert!(matches!(linking_structure(&n, &b), Err(Error::Hypothesis(_))));
        let g = families::wreath(&families::cyclic(5), &families::cyclic(2));
        let (n, b) = kernel_of(&g, 5);
        assert!(matches!(linking_structure(&n, &b), Err(Error::Hypothesis(_))));
    }
}
