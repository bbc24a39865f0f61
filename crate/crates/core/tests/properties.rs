use std::collections::HashSet;

use pgt_core::base::{exact_min_base, exact_min_base_mod, greedy_base, is_base};
use pgt_core::blocks::{block_action, smallest_nontrivial_blocks};
use pgt_core::distinguish::exact_dist_number;
use pgt_core::gf::{affine_group, as_permutation_group, vector_permutation, FpMatrix, MatrixGroup, VectorDomain};
use pgt_core::{PermGroup, Permutation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn closure(n: usize, gens: &[Permutation]) -> HashSet<Vec<u32>> {
    let id: Vec<u32> = (0..n as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g.images()[i as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group_strategy(max_degree: usize) -> impl Strategy<Value = PermGroup> {
    (2..=max_degree).prop_flat_map(|n| {
        prop::collection::vec(perm_strategy(n), 1..=3)
            .prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
}

/// Least number of colors `c` such that no element outside `kernel`
/// preserves some coloring, by trying every coloring.
fn brute_dist(elements: &HashSet<Vec<u32>>, kernel: &HashSet<Vec<u32>>, n: usize) -> usize {
    for c in 1..=n {
        let total = c.pow(n as u32);
        for code in 0..total {
            let col: Vec<usize> = (0..n).map(|x| code / c.pow(x as u32) % c).collect();
            let breaks = elements
                .iter()
                .filter(|g| !kernel.contains(*g))
                .all(|g| (0..n).any(|x| col[g[x] as usize] != col[x]));
            if breaks {
                return c;
            }
        }
    }
    1
}

fn brute_base_size(elements: &HashSet<Vec<u32>>, n: usize) -> usize {
    for size in 0..=n {
        let found = subsets(n, size).into_iter().any(|s| {
            elements
                .iter()
                .filter(|g| s.iter().all(|&x| g[x] as usize == x))
                .count()
                == 1
        });
        if found {
            return size;
        }
    }
    n
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_order_matches_closure(g in group_strategy(7)) {
        let all = closure(g.degree(), g.generators());
        prop_assert_eq!(g.order(), all.len() as u128);
    }

    #[test]
    fn sifting_words_and_outsiders(g in group_strategy(6), seed in any::<u64>()) {
        let n = g.degree();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let mut w = Permutation::identity(n);
            for _ in 0..rng.gen_range(1..10) {
                w = &w * g.generators().choose(&mut rng).unwrap();
            }
            prop_assert!(g.contains(&w));
        }
        let all = closure(n, g.generators());
        let full: u128 = (1..=n as u128).product();
        if g.order() < full {
            let mut rejected = 0;
            while rejected < 100 {
                let mut images: Vec<usize> = (0..n).collect();
                images.shuffle(&mut rng);
                let images32: Vec<u32> = images.iter().map(|&x| x as u32).collect();
                if all.contains(&images32) {
                    continue;
                }
                prop_assert!(!g.contains(&Permutation::from_images(images).unwrap()));
                rejected += 1;
            }
        }
    }

    #[test]
    fn block_systems_are_invariant(g in group_strategy(8)) {
        prop_assume!(g.is_transitive());
        if let Some(b) = smallest_nontrivial_blocks(&g).unwrap() {
            for x in g.generators() {
                prop_assert!(b.induced(x).is_some());
            }
        }
    }

    #[test]
    fn exact_base_matches_subset_search(g in group_strategy(6)) {
        let all = closure(g.degree(), g.generators());
        let exact = exact_min_base(&g);
        prop_assert_eq!(exact.len(), brute_base_size(&all, g.degree()));
        prop_assert!(is_base(&g, &exact.points, None).unwrap());
        let greedy = greedy_base(&g);
        prop_assert!(is_base(&g, &greedy.points, None).unwrap());
        prop_assert!(greedy.len() >= exact.len());
        prop_assert!(g.order() <= (g.degree() as u128).pow(exact.len() as u32));
    }

    #[test]
    fn oracle_matches_brute_colorings(g in group_strategy(5)) {
        let all = closure(g.degree(), g.generators());
        let id: HashSet<Vec<u32>> = HashSet::from([(0..g.degree() as u32).collect()]);
        let (d, col) = exact_dist_number(&g, None, 12).unwrap();
        prop_assert_eq!(d, brute_dist(&all, &id, g.degree()));
        prop_assert!(col.verified);
    }

    #[test]
    fn sandwich_and_product_bounds(g in group_strategy(8)) {
        prop_assume!(g.is_transitive());
        let Some(b) = smallest_nontrivial_blocks(&g).unwrap() else { return Ok(()) };
        let kernel = block_action(&g, &b).unwrap().kernel;
        let bg = exact_min_base(&g).len();
        let bn = exact_min_base(&kernel).len();
        let bq = exact_min_base_mod(&g, Some(&kernel)).unwrap().len();
        prop_assert!(bn.max(bq) <= bg);
        prop_assert!(bg <= bn + bq);

        let (dg, _) = exact_dist_number(&g, None, 12).unwrap();
        let (dn, _) = exact_dist_number(&kernel, None, 12).unwrap();
        let (dq, _) = exact_dist_number(&g, Some(&kernel), 12).unwrap();
        prop_assert!(dn.max(dq) <= dg);
        prop_assert!(dg <= dn * dq);
    }
}

fn matrix_strategy(p: u32, dim: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(prop::collection::vec(0..p, dim), dim)
        .prop_map(move |rows| FpMatrix::new(p, rows).unwrap())
        .prop_filter("invertible", FpMatrix::is_invertible)
}

fn field_and_dim() -> impl Strategy<Value = (u32, usize)> {
    prop_oneof![Just((2u32, 2usize)), Just((2, 3)), Just((3, 2)), Just((5, 2)), Just((2, 4))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vector_action_is_a_homomorphism(
        (a, b) in field_and_dim().prop_flat_map(|(p, d)| (matrix_strategy(p, d), matrix_strategy(p, d)))
    ) {
        let h = MatrixGroup::new(a.p, a.dim, vec![a.clone(), b.clone()]).unwrap();
        for domain in [VectorDomain::All, VectorDomain::NonZero] {
            let (g, index) = as_permutation_group(&h, domain, 1 << 20).unwrap();
            let pa = vector_permutation(&a, &index);
            let pb = vector_permutation(&b, &index);
            prop_assert!(g.contains(&pa) && g.contains(&pb));
            let ab = vector_permutation(&a.mul(&b).unwrap(), &index);
            prop_assert_eq!(ab, &pa * &pb);
        }
    }

    #[test]
    fn affine_order((p, d, gens) in field_and_dim()
        .prop_flat_map(|(p, d)| (Just(p), Just(d), prop::collection::vec(matrix_strategy(p, d), 1..=2))))
    {
        let h = MatrixGroup::new(p, d, gens).unwrap();
        let (linear, _) = as_permutation_group(&h, VectorDomain::All, 1 << 20).unwrap();
        let affine = affine_group(&h, 1 << 20).unwrap();
        prop_assert_eq!(affine.order(), (p as u128).pow(d as u32) * linear.order());
    }
}
