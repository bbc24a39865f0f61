//! Linear algebra over prime fields and matrix groups acting on vectors.
//!
//! A vector `(v_0, .., v_{d-1})` over `F_p` is encoded as the integer
//! `v_0 + v_1 p + .. + v_{d-1} p^{d-1}` (little-endian mixed radix).

use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

/// Default cap on the number of points of a vector-set permutation domain.
pub const DEFAULT_POINT_CAP: u128 = 2_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Inverse of `x` modulo the prime `p`.
pub fn inv_mod(x: u64, p: u64) -> Option<u64> {
    let x = x % p;
    (x != 0).then(|| pow_mod(x, p - 2, p))
}

/// Least generator of the multiplicative group of `F_p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

/// A vector over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    pub p: u32,
    pub entries: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(FpVector { p, entries })
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        FpVector { p, entries: vec![0; dim] }
    }

    pub fn basis(p: u32, dim: usize, i: usize) -> Self {
        let mut v = FpVector::zero(p, dim);
        v.entries[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        let p = self.p;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FpVector { p, entries }
    }

    pub fn scale(&self, a: u32) -> FpVector {
        let p = self.p as u64;
        let entries = self
            .entries
            .iter()
            .map(|&x| (x as u64 * a as u64 % p) as u32)
            .collect();
        FpVector { p: self.p, entries }
    }

    pub fn encode(&self) -> u64 {
        encode(self.p, &self.entries)
    }

    pub fn decode(p: u32, dim: usize, code: u64) -> FpVector {
        FpVector {
            p,
            entries: decode(p, dim, code),
        }
    }
}

pub fn encode(p: u32, entries: &[u32]) -> u64 {
    entries
        .iter()
        .rev()
        .fold(0u64, |acc, &x| acc * p as u64 + x as u64)
}

pub fn decode(p: u32, dim: usize, mut code: u64) -> Vec<u32> {
    (0..dim)
        .map(|_| {
            let x = (code % p as u64) as u32;
            code /= p as u64;
            x
        })
        .collect()
}

/// A square matrix over `F_p`, stored row-major. Vectors are columns:
/// `apply(v) = M v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub p: u32,
    pub dim: usize,
    pub entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        check_prime(p)?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape(format!("matrix with {dim} rows is not square")));
        }
        let entries = rows.into_iter().flatten().map(|x| x % p).collect();
        Ok(FpMatrix { p, dim, entries })
    }

    pub fn identity(p: u32, dim: usize) -> Self {
        FpMatrix::scalar(p, dim, 1)
    }

    pub fn scalar(p: u32, dim: usize, a: u32) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = a % p;
        }
        FpMatrix { p, dim, entries }
    }

    /// Matrix sending `e_i` to `e_{g(i)}`.
    pub fn permutation(p: u32, g: &Permutation) -> Self {
        let dim = g.degree();
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[g.apply(i) * dim + i] = 1;
        }
        FpMatrix { p, dim, entries }
    }

    pub fn diagonal(p: u32, diag: &[u32]) -> Self {
        let dim = diag.len();
        let mut entries = vec![0; dim * dim];
        for (i, &a) in diag.iter().enumerate() {
            entries[i * dim + i] = a % p;
        }
        FpMatrix { p, dim, entries }
    }

    /// Block-diagonal matrix with `blocks` along the diagonal.
    pub fn block_diagonal(blocks: &[FpMatrix]) -> Result<Self> {
        let p = blocks
            .first()
            .ok_or_else(|| Error::Shape("no blocks".into()))?
            .p;
        if blocks.iter().any(|b| b.p != p) {
            return Err(Error::Shape("blocks over different fields".into()));
        }
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        let mut m = FpMatrix::scalar(p, dim, 0);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.dim {
                for c in 0..b.dim {
                    m.set(off + r, off + c, b.get(r, c));
                }
            }
            off += b.dim;
        }
        Ok(m)
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.entries[r * self.dim + c] = x % self.p;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == FpMatrix::identity(self.p, self.dim)
    }

    fn check_compatible(&self, p: u32, dim: usize) -> Result<()> {
        if self.p != p {
            return Err(Error::Shape(format!("fields F_{} and F_{p}", self.p)));
        }
        if self.dim != dim {
            return Err(Error::DegreeMismatch {
                left: self.dim,
                right: dim,
            });
        }
        Ok(())
    }

    /// `M v` on raw coordinates, assumed reduced and of length `dim`.
    pub fn apply_raw(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.dim)
            .map(|r| {
                let row = &self.entries[r * self.dim..(r + 1) * self.dim];
                (row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect()
    }

    pub fn apply(&self, v: &FpVector) -> Result<FpVector> {
        self.check_compatible(v.p, v.dim())?;
        Ok(FpVector {
            p: self.p,
            entries: self.apply_raw(&v.entries),
        })
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_compatible(other.p, other.dim)?;
        let (d, p) = (self.dim, self.p as u64);
        let mut entries = vec![0u32; d * d];
        for r in 0..d {
            for c in 0..d {
                let s: u64 = (0..d)
                    .map(|i| self.get(r, i) as u64 * other.get(i, c) as u64)
                    .sum();
                entries[r * d + c] = (s % p) as u32;
            }
        }
        Ok(FpMatrix {
            p: self.p,
            dim: d,
            entries,
        })
    }

    /// Row-reduces `[self | I]`; returns the rank and, if full, the inverse.
    fn reduce(&self) -> (usize, Option<FpMatrix>, u32) {
        let (d, p) = (self.dim, self.p as u64);
        let mut a: Vec<Vec<u64>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(u64::from).collect())
            .collect();
        let mut inv: Vec<Vec<u64>> = FpMatrix::identity(self.p, d)
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(u64::from).collect())
            .collect();
        let mut det = 1u64;
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| a[r][col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                a.swap(piv, rank);
                inv.swap(piv, rank);
                det = (p - det) % p;
            }
            let s = a[rank][col];
            det = det * s % p;
            let si = inv_mod(s, p).expect("nonzero pivot");
            for x in a[rank].iter_mut().chain(inv[rank].iter_mut()) {
                *x = *x * si % p;
            }
            for r in 0..d {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..d {
                        a[r][c] = (a[r][c] + (p - f) * a[rank][c]) % p;
                        inv[r][c] = (inv[r][c] + (p - f) * inv[rank][c]) % p;
                    }
                }
            }
            rank += 1;
        }
        let inverse = (rank == d).then(|| FpMatrix {
            p: self.p,
            dim: d,
            entries: inv.into_iter().flatten().map(|x| x as u32).collect(),
        });
        (rank, inverse, det as u32)
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        self.reduce().1.ok_or(Error::Singular)
    }

    pub fn det(&self) -> u32 {
        if self.dim == 0 {
            return 1;
        }
        self.reduce().2
    }

    pub fn rank(&self) -> usize {
        self.reduce().0
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        FpMatrix {
            p,
            dim: self.dim,
            entries,
        }
    }
}

/// Which vectors a matrix group is made to permute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorDomain {
    All,
    NonZero,
}

/// Point labels of a vector domain: point `i` is the vector with code
/// `i` (all vectors) or `i + 1` (nonzero vectors).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorIndex {
    pub p: u32,
    pub dim: usize,
    pub domain: VectorDomain,
}

impl VectorIndex {
    pub fn size(&self) -> usize {
        let all = (self.p as usize).pow(self.dim as u32);
        match self.domain {
            VectorDomain::All => all,
            VectorDomain::NonZero => all - 1,
        }
    }

    pub fn point_of(&self, v: &[u32]) -> Option<usize> {
        let code = encode(self.p, v) as usize;
        match self.domain {
            VectorDomain::All => Some(code),
            VectorDomain::NonZero => code.checked_sub(1),
        }
    }

    pub fn vector_of(&self, point: usize) -> Vec<u32> {
        let code = match self.domain {
            VectorDomain::All => point,
            VectorDomain::NonZero => point + 1,
        };
        decode(self.p, self.dim, code as u64)
    }
}

/// A group generated by invertible matrices, optionally with a direct-sum
/// decomposition `V = V_1 + .. + V_t` that it permutes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    pub p: u32,
    pub dim: usize,
    pub generators: Vec<FpMatrix>,
    /// Each summand is given by a list of basis vectors.
    pub decomposition: Option<Vec<Vec<Vec<u32>>>>,
}

impl MatrixGroup {
    pub fn new(p: u32, dim: usize, generators: Vec<FpMatrix>) -> Result<Self> {
        check_prime(p)?;
        for g in &generators {
            g.check_compatible(p, dim)?;
            if !g.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixGroup {
            p,
            dim,
            generators,
            decomposition: None,
        })
    }

    /// Attaches a decomposition after checking it spans `V` and that every
    /// generator maps each summand onto a summand.
    pub fn with_decomposition(mut self, summands: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let rows: Vec<Vec<u32>> = summands.iter().flatten().cloned().collect();
        if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Shape("summand bases do not form a basis".into()));
        }
        if !FpMatrix::new(self.p, rows)?.is_invertible() {
            return Err(Error::Shape("summand bases are linearly dependent".into()));
        }
        for g in &self.generators {
            if summand_images(g, &summands).is_none() {
                return Err(Error::NotInvariant);
            }
        }
        self.decomposition = Some(summands);
        Ok(self)
    }

    pub fn field_size(&self) -> u32 {
        self.p
    }

    pub fn vector_count(&self) -> u128 {
        (self.p as u128).pow(self.dim as u32)
    }

    /// The same generators acting diagonally on `l` copies of `V`.
    pub fn power(&self, l: usize) -> Result<MatrixGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| FpMatrix::block_diagonal(&vec![g.clone(); l]))
            .collect::<Result<Vec<_>>>()?;
        MatrixGroup::new(self.p, self.dim * l, gens)
    }
}

/// Index of the summand containing `g(V_i)` for each `i`, if `g` permutes
/// the summands.
pub fn summand_images(g: &FpMatrix, summands: &[Vec<Vec<u32>>]) -> Option<Vec<usize>> {
    let mut images = Vec::with_capacity(summands.len());
    for s in summands {
        let imgs: Vec<Vec<u32>> = s.iter().map(|v| g.apply_raw(v)).collect();
        let j = summands
            .iter()
            .position(|t| t.len() == s.len() && spans_within(g.p, &imgs, t))?;
        images.push(j);
    }
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted.len() == images.len()).then_some(images)
}

/// Do `vectors` lie in the span of `basis`?
fn spans_within(p: u32, vectors: &[Vec<u32>], basis: &[Vec<u32>]) -> bool {
    let rank_of = |rows: Vec<Vec<u32>>| -> usize {
        let n = rows[0].len();
        let mut padded = rows;
        let size = padded.len().max(n);
        for r in padded.iter_mut() {
            r.resize(size, 0);
        }
        padded.resize(size, vec![0; size]);
        FpMatrix {
            p,
            dim: size,
            entries: padded.into_iter().flatten().collect(),
        }
        .rank()
    };
    if basis.is_empty() {
        return vectors.iter().all(|v| v.iter().all(|&x| x == 0));
    }
    let base_rank = rank_of(basis.to_vec());
    let mut all = basis.to_vec();
    all.extend_from_slice(vectors);
    rank_of(all) == base_rank
}

/// The permutation of a vector domain induced by `m`.
pub fn vector_permutation(m: &FpMatrix, index: &VectorIndex) -> Permutation {
    let images = (0..index.size())
        .map(|x| {
            let v = index.vector_of(x);
            index.point_of(&m.apply_raw(&v)).expect("invertible maps keep nonzero") as u32
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

fn check_cap(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// The permutation group induced on `domain`, with its point labelling.
pub fn as_permutation_group(
    h: &MatrixGroup,
    domain: VectorDomain,
    cap: u128,
) -> Result<(PermGroup, VectorIndex)> {
    check_cap(h.vector_count(), cap)?;
    let index = VectorIndex {
        p: h.p,
        dim: h.dim,
        domain,
    };
    let gens = h
        .generators
        .iter()
        .map(|g| vector_permutation(g, &index))
        .collect();
    Ok((PermGroup::new(index.size(), gens)?, index))
}

/// `V ⋊ H` on the `p^dim` vectors: the generators of `H` plus the
/// translations by the standard basis vectors.
pub fn affine_group(h: &MatrixGroup, cap: u128) -> Result<PermGroup> {
    let (linear, index) = as_permutation_group(h, VectorDomain::All, cap)?;
    let mut gens: Vec<Permutation> = linear.generators().to_vec();
    let p = h.p;
    for i in 0..h.dim {
        let images = (0..index.size())
            .map(|x| {
                let mut v = index.vector_of(x);
                v[i] = (v[i] + 1) % p;
                index.point_of(&v).expect("all vectors") as u32
            })
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    PermGroup::new(index.size(), gens)
}

/// Order of a matrix group, through its faithful action on vectors.
pub fn matrix_group_order(h: &MatrixGroup, cap: u128) -> Result<u128> {
    Ok(as_permutation_group(h, VectorDomain::All, cap)?.0.order())
}

/// Elementary matrix `I + E_{r,c}`.
fn transvection(p: u32, dim: usize, r: usize, c: usize) -> FpMatrix {
    let mut m = FpMatrix::identity(p, dim);
    m.set(r, c, 1);
    m
}

/// `GL(dim, p)`.
pub fn general_linear(p: u32, dim: usize) -> Result<MatrixGroup> {
    check_prime(p)?;
    let mut gens = Vec::new();
    if p > 2 {
        let mut diag = vec![1; dim];
        diag[0] = primitive_root(p as u64) as u32;
        gens.push(FpMatrix::diagonal(p, &diag));
    }
    if dim >= 2 {
        gens.push(transvection(p, dim, 0, 1));
        let all: Vec<usize> = (0..dim).collect();
        gens.push(FpMatrix::permutation(
            p,
            &Permutation::from_cycles(dim, &[&all]).expect("cycle"),
        ));
        gens.push(FpMatrix::permutation(
            p,
            &Permutation::from_cycles(dim, &[&[0, 1]]).expect("transposition"),
        ));
    }
    MatrixGroup::new(p, dim, gens)
}

fn coordinate_axes(dim: usize) -> Vec<Vec<Vec<u32>>> {
    (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            vec![e]
        })
        .collect()
}

/// Permutation matrices of `g`, preserving the coordinate axes.
pub fn permutation_module(g: &PermGroup, p: u32) -> Result<MatrixGroup> {
    let gens = g
        .nontrivial_generators()
        .map(|x| FpMatrix::permutation(p, x))
        .collect();
    MatrixGroup::new(p, g.degree(), gens)?.with_decomposition(coordinate_axes(g.degree()))
}

/// Monomial group `F_p^× wr top`, preserving the coordinate axes.
pub fn monomial(p: u32, top: &PermGroup) -> Result<MatrixGroup> {
    let t = top.degree();
    let mut gens: Vec<FpMatrix> = top
        .nontrivial_generators()
        .map(|x| FpMatrix::permutation(p, x))
        .collect();
    if p > 2 && t > 0 {
        let mut diag = vec![1; t];
        diag[0] = primitive_root(p as u64) as u32;
        gens.push(FpMatrix::diagonal(p, &diag));
    }
    MatrixGroup::new(p, t, gens)?.with_decomposition(coordinate_axes(t))
}

/// The cyclic group generated by `a I`.
pub fn scalar_group(p: u32, dim: usize, a: u32) -> Result<MatrixGroup> {
    MatrixGroup::new(p, dim, vec![FpMatrix::scalar(p, dim, a)])
}
