//! Constructors for the standard permutation group families.
//!
//! Imprimitive constructions on `m * k` points use the layout
//! `point = block * m + position`, so block `j` is `{j*m, .., j*m + m - 1}`.

use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

fn cycle(n: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(n, &[points]).expect("valid cycle")
}

fn group(n: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(n, gens).expect("generators of matching degree")
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    let all: Vec<usize> = (0..n).collect();
    group(n, vec![cycle(n, &[0, 1]), cycle(n, &all)])
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n);
    }
    let gens = (0..n - 2).map(|i| cycle(n, &[i, i + 1, i + 2])).collect();
    group(n, gens)
}

/// Regular cyclic group of order `n`.
pub fn cyclic(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    let all: Vec<usize> = (0..n).collect();
    group(n, vec![cycle(n, &all)])
}

/// Dihedral group of order `2n` acting on the `n` vertices of a polygon.
pub fn dihedral(n: usize) -> PermGroup {
    if n < 3 {
        return symmetric(n);
    }
    let all: Vec<usize> = (0..n).collect();
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n)).expect("reflection");
    group(n, vec![cycle(n, &all), reflection])
}

/// Klein four-group acting regularly on 4 points.
pub fn klein_four() -> PermGroup {
    group(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
}

/// Copies `g` (acting on `m` points) onto block `block` of an `m * k` domain.
fn on_block(g: &Permutation, m: usize, k: usize, block: usize) -> Permutation {
    let mut images: Vec<u32> = (0..(m * k) as u32).collect();
    for i in 0..m {
        images[block * m + i] = (block * m + g.apply(i)) as u32;
    }
    Permutation::from_images_unchecked(images)
}

/// Permutes whole blocks of an `m * k` domain according to `g` on `k` points.
pub fn block_permutation(g: &Permutation, m: usize) -> Permutation {
    let k = g.degree();
    let images = (0..m * k).map(|x| (g.apply(x / m) * m + x % m) as u32).collect();
    Permutation::from_images_unchecked(images)
}

/// Imprimitive wreath product `inner wr top` on `m * k` points.
pub fn wreath(inner: &PermGroup, top: &PermGroup) -> PermGroup {
    let m = inner.degree();
    let k = top.degree();
    let mut gens = Vec::new();
    for block in 0..k {
        for g in inner.nontrivial_generators() {
            gens.push(on_block(g, m, k, block));
        }
    }
    for g in top.nontrivial_generators() {
        gens.push(block_permutation(g, m));
    }
    group(m * k, gens)
}

/// `G` acting on `rows` copies of its domain simultaneously:
/// `g(r, c) = (r, g(c))`, with point index `r * n + c`.
pub fn row_action(g: &PermGroup, rows: usize) -> PermGroup {
    let n = g.degree();
    let gens = g
        .nontrivial_generators()
        .map(|p| {
            let images = (0..rows * n)
                .map(|x| ((x / n) * n + p.apply(x % n)) as u32)
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    group(rows * n, gens)
}

/// `Sym(m)` acting diagonally on each of `classes` groups of consecutive
/// blocks, extended by `top` permuting the `k = top.degree()` blocks.
/// `top` must preserve the partition of blocks into classes.
pub fn diagonal_wreath(m: usize, classes: usize, top: &PermGroup) -> Result<PermGroup> {
    let k = top.degree();
    if classes == 0 || !k.is_multiple_of(classes) {
        return Err(Error::Invalid(format!(
            "{classes} classes do not divide {k} blocks"
        )));
    }
    let t = k / classes;
    for g in top.nontrivial_generators() {
        for j in 0..k {
            let same = (0..k).filter(|&j2| j2 / t == j / t);
            for j2 in same {
                if g.apply(j2) / t != g.apply(j) / t {
                    return Err(Error::NotInvariant);
                }
            }
        }
    }
    let mut gens = Vec::new();
    let all: Vec<usize> = (0..m).collect();
    let sym_gens = if m >= 2 {
        vec![cycle(m, &[0, 1]), cycle(m, &all)]
    } else {
        Vec::new()
    };
    for c in 0..classes {
        for s in &sym_gens {
            let mut images: Vec<u32> = (0..(m * k) as u32).collect();
            for block in c * t..(c + 1) * t {
                for i in 0..m {
                    images[block * m + i] = (block * m + s.apply(i)) as u32;
                }
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
    }
    for g in top.nontrivial_generators() {
        gens.push(block_permutation(g, m));
    }
    Ok(group(m * k, gens))
}

/// Induced action of `g` on the 2-subsets of its domain, listed lexicographically.
pub fn on_pairs(g: &PermGroup) -> PermGroup {
    let n = g.degree();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let gens = g
        .nontrivial_generators()
        .map(|p| {
            let images = pairs
                .iter()
                .map(|&(a, b)| index(p.apply(a), p.apply(b)) as u32)
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    group(pairs.len(), gens)
}

/// Induced action of `g` on ordered pairs of distinct points; pair `(a, b)`
/// has index `a * (n - 1) + (b if b < a else b - 1)`, so the pairs with a
/// common first entry form a block of size `n - 1`.
pub fn on_ordered_pairs(g: &PermGroup) -> PermGroup {
    let n = g.degree();
    let index = |a: usize, b: usize| a * (n - 1) + if b < a { b } else { b - 1 };
    let gens = g
        .nontrivial_generators()
        .map(|p| {
            let mut images = vec![0u32; n * (n - 1)];
            for a in 0..n {
                for b in (0..n).filter(|&b| b != a) {
                    images[index(a, b)] = index(p.apply(a), p.apply(b)) as u32;
                }
            }
            Permutation::from_images_unchecked(images)
        })
        .collect();
    group(n * (n - 1), gens)
}

/// `PGL(2, p)` (or `PSL(2, p)` when `special`) on the projective line over
/// the prime field; point `p` is infinity.
pub fn projective_line(p: u64, special: bool) -> Result<PermGroup> {
    if !crate::gf::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = (p + 1) as usize;
    let inf = p;
    let inv = |x: u64| crate::gf::inv_mod(x, p).expect("nonzero");
    let mobius = |a: u64, b: u64, c: u64, d: u64| {
        let images = (0..=p)
            .map(|x| {
                let (num, den) = if x == inf {
                    (a, c)
                } else {
                    ((a * x + b) % p, (c * x + d) % p)
                };
                if den == 0 {
                    inf as u32
                } else {
                    (num * inv(den) % p) as u32
                }
            })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let translation = mobius(1, 1, 0, 1);
    let inversion = mobius(0, p - 1, 1, 0);
    let g = crate::gf::primitive_root(p);
    // x -> g x has determinant g (non-square); x -> g^2 x lies in PSL
    let scale = if special {
        mobius(g * g % p, 0, 0, 1)
    } else {
        mobius(g, 0, 0, 1)
    };
    Ok(group(n, vec![translation, inversion, scale]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(6).order(), 6);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dihedral(5).order(), 10);
        assert_eq!(klein_four().order(), 4);
        assert_eq!(wreath(&symmetric(2), &symmetric(3)).order(), 48);
        assert_eq!(wreath(&symmetric(3), &symmetric(3)).order(), 6 * 6 * 6 * 6);
        assert_eq!(diagonal_wreath(5, 1, &symmetric(2)).unwrap().order(), 240);
        assert_eq!(diagonal_wreath(5, 1, &cyclic(5)).unwrap().order(), 600);
        assert_eq!(on_pairs(&symmetric(5)).order(), 120);
        assert_eq!(on_ordered_pairs(&symmetric(5)).order(), 120);
        assert_eq!(projective_line(5, false).unwrap().order(), 120);
        assert_eq!(projective_line(5, true).unwrap().order(), 60);
        assert_eq!(projective_line(7, true).unwrap().order(), 168);
        assert_eq!(projective_line(7, false).unwrap().order(), 336);
    }

    #[test]
    fn diagonal_wreath_rejects_class_breaking_top() {
        // C_4 on 4 blocks does not preserve classes {0,1},{2,3}
        assert!(diagonal_wreath(5, 2, &cyclic(4)).is_err());
        assert!(diagonal_wreath(5, 3, &cyclic(4)).is_err());
    }
}
