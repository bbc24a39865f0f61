//! Block systems and the action on blocks.

use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

/// A partition of the domain into `block_count` blocks of `block_size` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub block_size: usize,
    pub block_count: usize,
    /// Block index of every point.
    pub assignment: Vec<usize>,
    /// Points of each block, sorted; blocks are ordered by least point.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    /// Builds a block system from an explicit partition. Blocks are
    /// re-sorted by their least element.
    pub fn from_blocks(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let m = blocks.first().map_or(0, Vec::len);
        let mut assignment = vec![usize::MAX; degree];
        for (j, b) in blocks.iter().enumerate() {
            if b.len() != m || b.is_empty() {
                return Err(Error::Invalid("blocks of unequal size".into()));
            }
            for &x in b {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if assignment[x] != usize::MAX {
                    return Err(Error::Invalid(format!("point {x} in two blocks")));
                }
                assignment[x] = j;
            }
        }
        if assignment.contains(&usize::MAX) {
            return Err(Error::Invalid("blocks do not cover the domain".into()));
        }
        Ok(BlockSystem {
            block_size: m,
            block_count: blocks.len(),
            assignment,
            blocks,
        })
    }

    /// Blocks `{j*m, .., j*m+m-1}` of the standard imprimitive layout.
    pub fn consecutive(m: usize, k: usize) -> Self {
        let blocks = (0..k).map(|j| (j * m..(j + 1) * m).collect()).collect();
        BlockSystem::from_blocks(m * k, blocks).expect("consecutive blocks partition the domain")
    }

    pub fn degree(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_count == 1 || self.block_size == 1
    }

    /// Permutation of block indices induced by `g`, if `g` maps blocks to blocks.
    pub fn induced(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = vec![u32::MAX; self.block_count];
        for (j, b) in self.blocks.iter().enumerate() {
            let target = self.assignment[g.apply(b[0])];
            if b.iter().any(|&x| self.assignment[g.apply(x)] != target) {
                return None;
            }
            images[j] = target as u32;
        }
        Permutation::from_images(images).ok()
    }

    pub fn is_invariant_under(&self, g: &PermGroup) -> bool {
        g.degree() == self.degree() && g.generators().iter().all(|p| self.induced(p).is_some())
    }
}

/// Union-find over points with path halving.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest block system of a transitive group in which `a` and `b` share a block.
pub fn minimal_block_system(g: &PermGroup, seed: (usize, usize)) -> Result<BlockSystem> {
    let n = g.degree();
    let (a, b) = seed;
    for x in [a, b] {
        if x >= n {
            return Err(Error::PointOutOfRange { point: x, degree: n });
        }
    }
    if a == b {
        return Err(Error::Invalid("seed points must be distinct".into()));
    }
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let mut dsu = Dsu::new(n);
    dsu.union(a, b);
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        for p in g.nontrivial_generators() {
            let (gx, gy) = (p.apply(x), p.apply(y));
            if dsu.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = dsu.find(x);
        classes[r].push(x);
    }
    let blocks = classes.into_iter().filter(|c| !c.is_empty()).collect();
    BlockSystem::from_blocks(n, blocks)
}

/// All distinct block systems reachable from seeds `(0, x)`, ordered by block size.
pub fn block_systems_from_zero(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    let mut out: Vec<BlockSystem> = Vec::new();
    for x in 1..g.degree() {
        let b = minimal_block_system(g, (0, x))?;
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out.sort_by_key(|b| b.block_size);
    Ok(out)
}

/// A nontrivial block system with smallest blocks, if the group is imprimitive.
pub fn smallest_nontrivial_blocks(g: &PermGroup) -> Result<Option<BlockSystem>> {
    Ok(block_systems_from_zero(g)?
        .into_iter()
        .find(|b| !b.is_trivial()))
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    Ok(g.degree() <= 1 || smallest_nontrivial_blocks(g)?.is_none())
}

/// The action on a block system: top group, kernel and block restrictions.
#[derive(Clone, Debug)]
pub struct BlockActionData {
    /// Induced action on block indices.
    pub top_group: PermGroup,
    /// Elements fixing every block setwise.
    pub kernel: PermGroup,
    /// For each block, the setwise stabilizer restricted to the block
    /// (relabelled by position in the sorted block).
    pub block_stabilizer_images: Vec<PermGroup>,
}

/// Computes the block action via the extended action on points plus block
/// labels: the kernel is the pointwise stabilizer of the labels.
pub fn block_action(g: &PermGroup, blocks: &BlockSystem) -> Result<BlockActionData> {
    let n = g.degree();
    let k = blocks.block_count;
    if blocks.degree() != n {
        return Err(Error::DegreeMismatch { left: n, right: blocks.degree() });
    }
    let mut top_gens = Vec::new();
    let mut ext_gens = Vec::new();
    for p in g.generators() {
        let top = blocks.induced(p).ok_or(Error::NotInvariant)?;
        let mut images: Vec<u32> = p.images().to_vec();
        images.extend(top.images().iter().map(|&j| j + n as u32));
        ext_gens.push(Permutation::from_images_unchecked(images));
        top_gens.push(top);
    }
    let top_group = PermGroup::new(k, top_gens)?;
    let extended = PermGroup::new(n + k, ext_gens)?;
    let own: Vec<usize> = (0..n).collect();
    let labels: Vec<usize> = (n..n + k).collect();

    let kernel_ext = extended.pointwise_stabilizer(&labels)?;
    let kernel = kernel_ext.restriction(&own)?;

    let mut block_stabilizer_images = Vec::with_capacity(k);
    for (j, block) in blocks.blocks.iter().enumerate() {
        let stab = extended.pointwise_stabilizer(&[n + j])?;
        block_stabilizer_images.push(stab.restriction(block)?);
    }
    Ok(BlockActionData {
        top_group,
        kernel,
        block_stabilizer_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn wreath_blocks() {
        let w = families::wreath(&families::symmetric(2), &families::symmetric(3));
        let b = minimal_block_system(&w, (0, 1)).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let data = block_action(&w, &b).unwrap();
        assert_eq!(data.top_group.order(), 6);
        assert_eq!(data.kernel.order(), 8);
        assert!(data.block_stabilizer_images.iter().all(|h| h.order() == 2));
    }

    #[test]
    fn primitive_group_has_one_block() {
        let s5 = families::symmetric(5);
        for x in 1..5 {
            let b = minimal_block_system(&s5, (0, x)).unwrap();
            assert_eq!(b.block_count, 1);
            assert_eq!(b.block_size, 5);
        }
        assert!(is_primitive(&s5).unwrap());
        let data = block_action(&s5, &minimal_block_system(&s5, (0, 1)).unwrap()).unwrap();
        assert_eq!(data.top_group.order(), 1);
        assert_eq!(data.kernel.order(), 120);
    }

    #[test]
    fn cyclic_six_cosets() {
        let c6 = families::cyclic(6);
        let b = minimal_block_system(&c6, (0, 3)).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
    }

    #[test]
    fn diagonal_swap_kernel() {
        let g = families::diagonal_wreath(5, 1, &families::symmetric(2)).unwrap();
        let b = BlockSystem::consecutive(5, 2);
        assert!(b.is_invariant_under(&g));
        let data = block_action(&g, &b).unwrap();
        assert_eq!(data.kernel.order(), 120);
        assert_eq!(data.top_group.order(), 2);
    }

    #[test]
    fn singleton_blocks_give_faithful_top() {
        let g = families::alternating(5);
        let b = BlockSystem::consecutive(1, 5);
        let data = block_action(&g, &b).unwrap();
        assert!(data.top_group.same_group(&g));
        assert_eq!(data.kernel.order(), 1);
    }

    #[test]
    fn errors() {
        let g = families::row_action(&families::symmetric(3), 2);
        assert_eq!(minimal_block_system(&g, (0, 1)), Err(Error::Intransitive));
        let s4 = families::symmetric(4);
        let b = BlockSystem::consecutive(2, 2);
        assert!(matches!(block_action(&s4, &b), Err(Error::NotInvariant)));
    }
}
