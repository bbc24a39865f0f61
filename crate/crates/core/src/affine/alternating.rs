use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::action::{pointwise_stabilizer, Action};
use crate::base::ceil_log;
use crate::blocks::BlockSystem;
use crate::distinguish::{distinguish_transitive, Options};
use crate::families;
use crate::gf::{decode, encode, is_prime, FpMatrix, MatrixGroup};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Sym,
    Alt,
}

/// Coordinates of a sum-zero letter vector in the basis `e_j - e_{j+1}`,
/// reduced modulo the all-ones vector (last coordinate dropped) when
/// `quotient` is set.
fn block_coords(p: u32, quotient: bool, letters: &[u32]) -> Vec<u32> {
    let k = letters.len();
    let mut c = Vec::with_capacity(k - 1);
    let mut acc = 0;
    for &a in &letters[..k - 1] {
        acc = (acc + a) % p;
        c.push(acc);
    }
    if quotient {
        let last = c.pop().expect("k >= 2");
        for (j, x) in c.iter_mut().enumerate() {
            *x = ((*x as u64 + last as u64 * (j as u64 + 1)) % p as u64) as u32;
        }
    }
    c
}

/// Inverse of [`block_coords`], giving the representative whose last
/// letter is zero in the quotient case.
fn block_letters(p: u32, k: usize, coords: &[u32]) -> Vec<u32> {
    let mut c = coords.to_vec();
    c.resize(k - 1, 0);
    let mut a = Vec::with_capacity(k);
    a.push(c[0]);
    for j in 1..k - 1 {
        a.push((c[j] + p - c[j - 1]) % p);
    }
    a.push((p - c[k - 2]) % p);
    a
}

fn permute_letters(g: &Permutation, a: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (x, &v) in a.iter().enumerate() {
        out[g.apply(x)] = v;
    }
    out
}

/// The module `F_p^k` restricted to the sum-zero vectors, modulo the
/// all-ones vector when `p | k`.
#[derive(Clone, Debug)]
pub struct DeletedPermModule {
    pub k: usize,
    pub p: u32,
    /// Set when `p | k`.
    pub quotient: bool,
    pub dim: usize,
    /// Permutation generators of the source group on `k` letters.
    pub source_generators: Vec<Permutation>,
    pub generator_images: Vec<FpMatrix>,
}

impl DeletedPermModule {
    /// Matrix of a letter permutation on the module.
    pub fn matrix_of(&self, g: &Permutation) -> FpMatrix {
        let mut m = FpMatrix::scalar(self.p, self.dim, 0);
        for c in 0..self.dim {
            let mut basis = vec![0; self.dim];
            basis[c] = 1;
            let image = permute_letters(g, &block_letters(self.p, self.k, &basis));
            for (r, x) in block_coords(self.p, self.quotient, &image).into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    /// Multiplies out `count` random words in the generators and compares
    /// with the matrix of the product permutation.
    pub fn check_words(&self, count: usize, seed: u64) -> bool {
        let mut rng = StdRng::seed_from_u64(seed);
        let gens = &self.source_generators;
        (0..count).all(|_| {
            let len = rng.gen_range(1..8);
            let mut perm = Permutation::identity(self.k);
            let mut mat = FpMatrix::identity(self.p, self.dim);
            for _ in 0..len {
                let i = rng.gen_range(0..gens.len());
                perm = gens[i].compose_unchecked(&perm);
                mat = self.generator_images[i].mul(&mat).expect("same shape");
            }
            mat == self.matrix_of(&perm)
        })
    }

    /// Does the image of the `k`-cycle fix only the zero vector?
    pub fn cycle_fixes_nothing(&self) -> bool {
        let all: Vec<usize> = (0..self.k).collect();
        let cycle = Permutation::from_cycles(self.k, &[&all]).expect("cycle");
        let a = self.matrix_of(&cycle);
        a.sub(&FpMatrix::identity(self.p, self.dim)).rank() == self.dim
    }
}

pub fn deleted_perm_module(k: usize, p: u32, source: Source) -> Result<DeletedPermModule> {
    if k < 5 {
        return Err(Error::Hypothesis(format!("need at least 5 letters, got {k}")));
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let quotient = k.is_multiple_of(p as usize);
    let group = match source {
        Source::Sym => families::symmetric(k),
        Source::Alt => families::alternating(k),
    };
    let mut module = DeletedPermModule {
        k,
        p,
        quotient,
        dim: if quotient { k - 2 } else { k - 1 },
        source_generators: group.generators().to_vec(),
        generator_images: Vec::new(),
    };
    module.generator_images = module
        .source_generators
        .iter()
        .map(|g| module.matrix_of(g))
        .collect();
    Ok(module)
}

/// Letter permutations acting on codes of `F_p^{kt}`.
#[derive(Clone, Copy, Debug)]
pub struct UAction {
    pub p: u32,
    pub letters: usize,
}

impl Action for UAction {
    fn act(&self, g: &Permutation, x: u64) -> u64 {
        let a = decode(self.p, self.letters, x);
        encode(self.p, &permute_letters(g, &a))
    }
}

/// Letter permutations acting on sum-zero vectors of each block, taken
/// modulo the block all-ones vectors when `quotient` is set. Codes are
/// letter codes of the representative with zero last letter per block.
#[derive(Clone, Copy, Debug)]
pub struct VAction {
    pub p: u32,
    pub k: usize,
    pub t: usize,
    pub quotient: bool,
}

impl VAction {
    pub fn canonical(&self, a: &mut [u32]) {
        if !self.quotient {
            return;
        }
        let p = self.p;
        for block in a.chunks_mut(self.k) {
            let last = block[self.k - 1];
            for x in block.iter_mut() {
                *x = (*x + p - last) % p;
            }
        }
    }

    pub fn code(&self, a: &[u32]) -> u64 {
        let mut a = a.to_vec();
        self.canonical(&mut a);
        encode(self.p, &a)
    }

    pub fn module_dim(&self) -> usize {
        self.t * if self.quotient { self.k - 2 } else { self.k - 1 }
    }

    /// Coordinates of a letter vector in the module basis, block by block.
    pub fn coords(&self, a: &[u32]) -> Vec<u32> {
        a.chunks(self.k)
            .flat_map(|b| block_coords(self.p, self.quotient, b))
            .collect()
    }

    pub fn letters(&self, coords: &[u32]) -> Vec<u32> {
        let per = self.module_dim() / self.t;
        coords
            .chunks(per)
            .flat_map(|c| block_letters(self.p, self.k, c))
            .collect()
    }
}

impl Action for VAction {
    fn act(&self, g: &Permutation, x: u64) -> u64 {
        let a = decode(self.p, self.k * self.t, x);
        self.code(&permute_letters(g, &a))
    }
}

#[derive(Clone, Debug)]
pub struct AltInducedBase {
    pub k: usize,
    pub t: usize,
    pub p: u32,
    pub quotient: bool,
    /// The constructed vectors as letter vectors of `U`.
    pub u_vectors: Vec<Vec<u32>>,
    /// The same vectors in coordinates of `V`.
    pub v_vectors: Vec<Vec<u32>>,
    pub residual_order: u128,
    pub base_of_u_len: usize,
}

impl AltInducedBase {
    pub fn len(&self) -> usize {
        self.v_vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v_vectors.is_empty()
    }

    /// Points of `V` under the little-endian code of the coordinates.
    pub fn points(&self) -> Vec<u64> {
        self.v_vectors.iter().map(|v| encode(self.p, v)).collect()
    }
}

fn check_letters(h: &PermGroup, k: usize, p: u32) -> Result<usize> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 || !h.degree().is_multiple_of(k) {
        return Err(Error::Shape(format!("degree {} is not a multiple of {k}", h.degree())));
    }
    let t = h.degree() / k;
    if !BlockSystem::consecutive(k, t).is_invariant_under(h) {
        return Err(Error::NotInvariant);
    }
    let bits = (p as f64).log2() * (k * t) as f64;
    if bits >= 63.0 {
        return Err(Error::CapExceeded {
            size: u128::MAX,
            cap: 1 << 63,
        });
    }
    Ok(t)
}

fn stabilizer_codes<A: Action>(h: &PermGroup, action: &A, codes: &[u64]) -> PermGroup {
    pointwise_stabilizer(h, action, codes)
}

/// Base of `H` on `V` of length `2b + 3` built from a base of length `b`
/// of `H` on the permutation module `U`.
pub fn alt_induced_base(h: &PermGroup, k: usize, p: u32, base_of_u: &[Vec<u32>]) -> Result<AltInducedBase> {
    if k < 7 {
        return Err(Error::Hypothesis(format!("need at least 7 letters per block, got {k}")));
    }
    let t = check_letters(h, k, p)?;
    let n = k * t;
    if base_of_u.iter().any(|u| u.len() != n || u.iter().any(|&a| a >= p)) {
        return Err(Error::Shape("base vectors must have one reduced entry per letter".into()));
    }
    let u_action = UAction { p, letters: n };
    let u_codes: Vec<u64> = base_of_u.iter().map(|u| encode(p, u)).collect();
    if !stabilizer_codes(h, &u_action, &u_codes).is_trivial() {
        return Err(Error::Hypothesis("supplied vectors are not a base of U".into()));
    }

    let neg = |x: u32| (p - x % p) % p;
    let mut vectors: Vec<Vec<u32>> = (0..3)
        .map(|s| {
            let mut w = vec![0; n];
            for i in 0..t {
                w[i * k + s] = 1;
                w[i * k + s + 1] = neg(1);
            }
            w
        })
        .collect();
    let mut e_vectors = Vec::new();
    let mut f_vectors = Vec::new();
    for u in base_of_u {
        let mut ue = vec![0; n];
        let mut uf = vec![0; n];
        for i in 0..t {
            let block = &u[i * k..(i + 1) * k];
            let tail = block[2..].iter().fold(0, |s, &a| (s + a) % p);
            let head = (block[0] + block[1]) % p;
            ue[i * k + 2..(i + 1) * k].copy_from_slice(&block[2..]);
            ue[i * k] = neg(tail);
            uf[i * k] = block[0];
            uf[i * k + 1] = block[1];
            uf[i * k + 2] = neg(head);
        }
        vectors.push(ue.clone());
        vectors.push(uf.clone());
        e_vectors.push(ue);
        f_vectors.push(uf);
    }

    let quotient = k.is_multiple_of(p as usize);
    let v_action = VAction { p, k, t, quotient };
    let v_codes: Vec<u64> = vectors.iter().map(|v| v_action.code(v)).collect();
    let residual = stabilizer_codes(h, &v_action, &v_codes);
    if !residual.is_trivial() {
        return Err(Error::Verification(format!(
            "constructed vectors leave a stabilizer of order {}",
            residual.order()
        )));
    }
    if quotient {
        let lifts = |v: &Vec<u32>| encode(p, v);
        for v in vectors[..3].iter().chain(&f_vectors) {
            let plain = stabilizer_codes(h, &u_action, &[lifts(v)]);
            let reduced = stabilizer_codes(h, &v_action, &[v_action.code(v)]);
            if !plain.same_group(&reduced) {
                return Err(Error::Verification("centralizer grows in the quotient".into()));
            }
        }
        let l_plain = stabilizer_codes(h, &u_action, &vectors[..3].iter().map(lifts).collect::<Vec<_>>());
        for v in &e_vectors {
            let plain = stabilizer_codes(&l_plain, &u_action, &[lifts(v)]);
            let reduced = stabilizer_codes(&l_plain, &v_action, &[v_action.code(v)]);
            if !plain.same_group(&reduced) {
                return Err(Error::Verification("centralizer in L grows in the quotient".into()));
            }
        }
    }
    let v_vectors = vectors.iter().map(|v| v_action.coords(v)).collect();
    Ok(AltInducedBase {
        k,
        t,
        p,
        quotient,
        u_vectors: vectors,
        v_vectors,
        residual_order: residual.order(),
        base_of_u_len: base_of_u.len(),
    })
}

/// The matrix group of `H` on `V` in block coordinates, with the blocks
/// as its decomposition.
pub fn alt_induced_matrix_group(h: &PermGroup, k: usize, p: u32) -> Result<MatrixGroup> {
    let t = check_letters(h, k, p)?;
    let v = VAction {
        p,
        k,
        t,
        quotient: k.is_multiple_of(p as usize),
    };
    let dim = v.module_dim();
    let gens = h
        .nontrivial_generators()
        .map(|g| {
            let mut m = FpMatrix::scalar(p, dim, 0);
            for c in 0..dim {
                let mut basis = vec![0; dim];
                basis[c] = 1;
                let mut image = permute_letters(g, &v.letters(&basis));
                v.canonical(&mut image);
                for (r, x) in v.coords(&image).into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            m
        })
        .collect();
    let per = dim / t;
    let summands = (0..t)
        .map(|i| {
            (0..per)
                .map(|j| {
                    let mut e = vec![0; dim];
                    e[i * per + j] = 1;
                    e
                })
                .collect()
        })
        .collect();
    MatrixGroup::new(p, dim, gens)?.with_decomposition(summands)
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub base: AltInducedBase,
    /// Colors of the distinguishing coloring of the letters.
    pub colors: usize,
    pub b_u: usize,
    pub achieved: usize,
    /// `17 + 2 log|H| / log|V|`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Distinguishing coloring of the letters, read as `⌈log_p c⌉` vectors of
/// `U`, then extended by [`alt_induced_base`].
pub fn alt_induced_pipeline(h: &PermGroup, k: usize, p: u32, opts: &Options) -> Result<PipelineReport> {
    let t = check_letters(h, k, p)?;
    let report = distinguish_transitive(h, opts)?;
    let colors = report.coloring.color_count;
    let b_u = ceil_log(colors as u128, p as u128);
    let base_of_u: Vec<Vec<u32>> = (0..b_u)
        .map(|s| {
            report
                .coloring
                .colors
                .iter()
                .map(|&c| (c as u64 / (p as u64).pow(s as u32) % p as u64) as u32)
                .collect()
        })
        .collect();
    let base = alt_induced_base(h, k, p, &base_of_u)?;
    let dim = VAction {
        p,
        k,
        t,
        quotient: base.quotient,
    }
    .module_dim();
    let bound = 17.0 + 2.0 * (h.order() as f64).ln() / (dim as f64 * (p as f64).ln());
    let achieved = base.len();
    Ok(PipelineReport {
        base,
        colors,
        b_u,
        achieved,
        bound,
        within_bound: (achieved as f64) <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::exact_min_base;
    use crate::gf::{as_permutation_group, VectorDomain, DEFAULT_POINT_CAP};

    #[test]
    fn module_dimensions() {
        let m = deleted_perm_module(5, 3, Source::Sym).unwrap();
        assert_eq!((m.dim, m.quotient), (4, false));
        assert!(m.cycle_fixes_nothing());
        assert!(m.check_words(20, 1));
        let m = deleted_perm_module(5, 5, Source::Alt).unwrap();
        assert_eq!((m.dim, m.quotient), (3, true));
        assert!(m.check_words(20, 2));
        let m = deleted_perm_module(7, 2, Source::Sym).unwrap();
        assert_eq!(m.dim, 6);
        assert!(m.cycle_fixes_nothing());
        assert!(matches!(deleted_perm_module(4, 3, Source::Sym), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn coordinates_round_trip() {
        for (k, p) in [(7, 3), (7, 7), (6, 2)] {
            let quotient = k % p as usize == 0;
            let dim = if quotient { k - 2 } else { k - 1 };
            for code in 0..(p as u64).pow(dim as u32).min(500) {
                let c = decode(p, dim, code);
                let a = block_letters(p, k, &c);
                assert_eq!(a.iter().sum::<u32>() % p, 0);
                assert_eq!(block_coords(p, quotient, &a), c);
            }
        }
    }

    fn digit_base(colors: &[u32], p: u32, b: usize) -> Vec<Vec<u32>> {
        (0..b)
            .map(|s| colors.iter().map(|&c| c / p.pow(s as u32) % p).collect())
            .collect()
    }

    #[test]
    fn sym7_bases() {
        let h = families::symmetric(7);
        let colors: Vec<u32> = (0..7).collect();
        for (p, b) in [(3, 2), (7, 1)] {
            let base = alt_induced_base(&h, 7, p, &digit_base(&colors, p, b)).unwrap();
            assert_eq!(base.len(), 2 * b + 3);
            assert_eq!(base.residual_order, 1);
            assert_eq!(base.quotient, p == 7);
            let mg = alt_induced_matrix_group(&h, 7, p).unwrap();
            let (g, _) = as_permutation_group(&mg, VectorDomain::All, DEFAULT_POINT_CAP).unwrap();
            let pts: Vec<usize> = base.points().into_iter().map(|x| x as usize).collect();
            assert!(g.pointwise_stabilizer(&pts).unwrap().is_trivial());
            assert_eq!(g.order(), 5040);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let h = families::symmetric(7);
        assert!(matches!(alt_induced_base(&h, 7, 3, &[]), Err(Error::Hypothesis(_))));
        let s5 = families::symmetric(5);
        assert!(alt_induced_base(&s5, 5, 3, &[]).is_err());
    }

    #[test]
    fn wreath_pipeline() {
        let h = families::wreath(&families::symmetric(7), &families::symmetric(2));
        let r = alt_induced_pipeline(&h, 7, 2, &Options::default()).unwrap();
        assert_eq!(r.achieved, 2 * r.b_u + 3);
        assert!(r.within_bound);
        let mg = alt_induced_matrix_group(&h, 7, 2).unwrap();
        let (g, _) = as_permutation_group(&mg, VectorDomain::All, DEFAULT_POINT_CAP).unwrap();
        let pts: Vec<usize> = r.base.points().into_iter().map(|x| x as usize).collect();
        assert!(g.pointwise_stabilizer(&pts).unwrap().is_trivial());
        assert!(exact_min_base(&g).len() <= r.achieved);
    }
}
