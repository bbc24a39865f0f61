use std::collections::VecDeque;

use crate::base::{ceil_log, exact_min_base, BaseCertificate};
use crate::distinguish::{distinguish_transitive, exact_dist_number, Coloring, Options};
use crate::gf::{as_permutation_group, decode, encode, MatrixGroup, VectorDomain, VectorIndex};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

/// A group on the vectors of `V = V_1 + .. + V_t` permuting the summands.
#[derive(Clone, Debug)]
pub struct ImprimitiveModule {
    pub index: VectorIndex,
    /// `H` acting on all vectors of `V`.
    pub group: PermGroup,
    /// Points of each summand, zero included, sorted.
    pub summands: Vec<Vec<usize>>,
    /// `P`: the action on summand indices.
    pub summand_action: PermGroup,
    /// `H_i = N_H(V_i)`.
    pub summand_stabilizers: Vec<PermGroup>,
    /// `K_i`: `H_i` acting on the nonzero vectors of `V_i`, listed in order.
    pub bottom_images: Vec<PermGroup>,
    /// Elements fixing every summand.
    pub kernel: PermGroup,
}

fn span_points(p: u32, dim: usize, basis: &[Vec<u32>]) -> Vec<usize> {
    let total = (p as usize).pow(basis.len() as u32);
    let mut out: Vec<usize> = (0..total)
        .map(|c| {
            let coeffs = decode(p, basis.len(), c as u64);
            let mut v = vec![0u32; dim];
            for (a, b) in coeffs.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + a * y) % p;
                }
            }
            encode(p, &v) as usize
        })
        .collect();
    out.sort_unstable();
    out
}

impl ImprimitiveModule {
    /// Realizes a matrix group with a decomposition on all `p^dim` vectors.
    pub fn new(h: &MatrixGroup, cap: u128) -> Result<Self> {
        let summands = h
            .decomposition
            .as_ref()
            .ok_or_else(|| Error::Invalid("matrix group has no decomposition".into()))?;
        let (group, index) = as_permutation_group(h, VectorDomain::All, cap)?;
        let points = summands
            .iter()
            .map(|basis| span_points(h.p, h.dim, basis))
            .collect();
        ImprimitiveModule::from_parts(group, index, points)
    }

    /// Builds the module data for a group already acting on the vectors.
    pub fn from_parts(group: PermGroup, index: VectorIndex, summands: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.degree();
        let t = summands.len();
        let mut owner = vec![usize::MAX; n];
        for (i, s) in summands.iter().enumerate() {
            for &x in s.iter().filter(|&&x| x != 0) {
                owner[x] = i;
            }
        }
        let mut top_gens = Vec::new();
        let mut ext_gens = Vec::new();
        for g in group.generators() {
            let images: Vec<usize> = summands
                .iter()
                .map(|s| owner[g.apply(s[1])])
                .collect();
            let top = Permutation::from_images(images).map_err(|_| Error::NotInvariant)?;
            for (i, s) in summands.iter().enumerate() {
                if s.iter().skip(1).any(|&x| owner[g.apply(x)] != top.apply(i)) {
                    return Err(Error::NotInvariant);
                }
            }
            let mut ext: Vec<usize> = g.images().iter().map(|&x| x as usize).collect();
            ext.extend(top.images().iter().map(|&j| j as usize + n));
            ext_gens.push(Permutation::from_images(ext)?);
            top_gens.push(top);
        }
        let summand_action = PermGroup::new(t, top_gens)?;
        let extended = PermGroup::new(n + t, ext_gens)?;
        let own: Vec<usize> = (0..n).collect();
        let labels: Vec<usize> = (n..n + t).collect();
        let kernel = extended.pointwise_stabilizer(&labels)?.restriction(&own)?;
        let mut summand_stabilizers = Vec::with_capacity(t);
        let mut bottom_images = Vec::with_capacity(t);
        for (i, s) in summands.iter().enumerate() {
            let h_i = extended.pointwise_stabilizer(&[n + i])?.restriction(&own)?;
            bottom_images.push(h_i.restriction(&s[1..])?);
            summand_stabilizers.push(h_i);
        }
        Ok(ImprimitiveModule {
            index,
            group,
            summands,
            summand_action,
            summand_stabilizers,
            bottom_images,
            kernel,
        })
    }

    pub fn summand_size(&self) -> usize {
        self.summands[0].len()
    }

    fn add_points(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        let p = self.index.p;
        let mut acc = vec![0u32; self.index.dim];
        for x in xs {
            for (a, b) in acc.iter_mut().zip(self.index.vector_of(x)) {
                *a = (*a + b) % p;
            }
        }
        self.index.point_of(&acc).expect("all vectors are points")
    }

    /// Elements `g_i` of `H` with `g_i(V_0) = V_i`.
    fn summand_transversal(&self) -> Result<Vec<Permutation>> {
        let t = self.summands.len();
        let tops = self.summand_action.generators();
        let gens = self.group.generators();
        let mut reps: Vec<Option<Permutation>> = vec![None; t];
        reps[0] = Some(Permutation::identity(self.group.degree()));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let u = reps[i].clone().expect("queued");
            for (g, top) in gens.iter().zip(tops) {
                let j = top.apply(i);
                if reps[j].is_none() {
                    reps[j] = Some(g.compose(&u)?);
                    queue.push_back(j);
                }
            }
        }
        reps.into_iter()
            .map(|r| r.ok_or(Error::Intransitive))
            .collect()
    }
}

fn top_coloring(p: &PermGroup, oracle_cap: usize) -> Result<Coloring> {
    if p.degree() <= oracle_cap {
        Ok(exact_dist_number(p, None, oracle_cap)?.1)
    } else if p.is_transitive() {
        Ok(distinguish_transitive(p, &Options { oracle_cap, seed: 0 })?.coloring)
    } else {
        Err(Error::CapExceeded {
            size: p.degree() as u128,
            cap: oracle_cap as u128,
        })
    }
}

/// Base for a module whose summand stabilizers act trivially on their
/// summands: `⌈log_{|V_1|} d(P)⌉` vectors read off a distinguishing
/// coloring of the summands.
pub fn triv_k1_base(m: &ImprimitiveModule, oracle_cap: usize) -> Result<BaseCertificate> {
    if m.bottom_images.iter().any(|k| !k.is_trivial()) {
        return Err(Error::Hypothesis("a summand stabilizer acts nontrivially on its summand".into()));
    }
    let alpha = top_coloring(&m.summand_action, oracle_cap)?;
    let q = m.summand_size();
    let b = ceil_log(alpha.color_count as u128, q as u128);

    // label vectors of every summand consistently along H-orbits; 0 keeps label 0
    let n = m.group.degree();
    let t = m.summands.len();
    let mut owner = vec![usize::MAX; n];
    for (i, s) in m.summands.iter().enumerate() {
        for &x in &s[1..] {
            owner[x] = i;
        }
    }
    let mut labelled = vec![false; n];
    let mut by_label = vec![vec![0usize; q]; t];
    let mut used = vec![vec![false; q]; t];
    for s in &m.summands {
        for &x in &s[1..] {
            if labelled[x] {
                continue;
            }
            let orbit = m.group.orbit(x);
            let mut met: Vec<usize> = orbit.iter().map(|&y| owner[y]).collect();
            met.sort_unstable();
            if met.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Hypothesis("an orbit meets a summand twice".into()));
            }
            let label = (1..q)
                .find(|&a| met.iter().all(|&i| !used[i][a]))
                .ok_or_else(|| Error::Structure("no free label for an orbit".into()))?;
            for &y in &orbit {
                labelled[y] = true;
                used[owner[y]][label] = true;
                by_label[owner[y]][label] = y;
            }
        }
    }
    let points: Vec<usize> = (0..b)
        .map(|s| {
            m.add_points((0..t).map(|i| {
                let digit = (alpha.colors[i] as usize / q.pow(s as u32)) % q;
                by_label[i][digit]
            }))
        })
        .collect();
    let residual = m.group.pointwise_stabilizer(&points)?;
    if !residual.is_trivial() {
        return Err(Error::Verification("summand-coloring vectors do not form a base".into()));
    }
    Ok(BaseCertificate {
        points,
        residual_order: 1,
        exact: false,
    })
}

/// A minimal base of `K_1` on `V_1`, as points of `V`.
pub fn summand_base(m: &ImprimitiveModule) -> Vec<usize> {
    let nonzero = &m.summands[0][1..];
    exact_min_base(&m.bottom_images[0])
        .points
        .into_iter()
        .map(|i| nonzero[i])
        .collect()
}

#[derive(Clone, Debug)]
pub struct BoundedK1Base {
    pub certificate: BaseCertificate,
    /// Length of the supplied base of `K_1`.
    pub b: usize,
    /// `b + 1 + log 48 + log|P| / log|V|`, logarithms base 2.
    pub bound: f64,
}

/// Sums transported bases of the `K_i` into `b` vectors, then finishes
/// with [`triv_k1_base`] on their pointwise stabilizer.
pub fn bounded_k1_base(
    m: &ImprimitiveModule,
    v1_base: &[usize],
    oracle_cap: usize,
) -> Result<BoundedK1Base> {
    let nonzero = &m.summands[0][1..];
    let local: Vec<usize> = v1_base
        .iter()
        .map(|x| {
            nonzero
                .binary_search(x)
                .map_err(|_| Error::Invalid(format!("point {x} is not a nonzero vector of V_1")))
        })
        .collect::<Result<_>>()?;
    if !m.bottom_images[0].pointwise_stabilizer(&local)?.is_trivial() {
        return Err(Error::Hypothesis("supplied vectors are not a base of K_1".into()));
    }
    let reps = m.summand_transversal()?;
    let sums: Vec<usize> = v1_base
        .iter()
        .map(|&v| m.add_points(reps.iter().map(|g| g.apply(v))))
        .collect();
    let l = m.group.pointwise_stabilizer(&sums)?;
    let residual = ImprimitiveModule::from_parts(l, m.index, m.summands.clone())?;
    let tail = triv_k1_base(&residual, oracle_cap)
        .map_err(|e| Error::Structure(format!("residual group: {e}")))?;
    let mut points = sums;
    points.extend(tail.points);
    if !m.group.pointwise_stabilizer(&points)?.is_trivial() {
        return Err(Error::Verification("combined vectors do not form a base".into()));
    }
    let log_v = (m.group.degree() as f64).log2();
    let bound = v1_base.len() as f64 + 1.0 + 48f64.log2()
        + (m.summand_action.order() as f64).log2() / log_v;
    Ok(BoundedK1Base {
        certificate: BaseCertificate {
            points,
            residual_order: 1,
            exact: false,
        },
        b: v1_base.len(),
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::gf::{monomial, permutation_module, DEFAULT_POINT_CAP};

    fn module(h: &MatrixGroup) -> ImprimitiveModule {
        ImprimitiveModule::new(h, DEFAULT_POINT_CAP).unwrap()
    }

    #[test]
    fn permutation_matrices() {
        let m = module(&permutation_module(&families::symmetric(3), 2).unwrap());
        assert_eq!(m.summand_action.order(), 6);
        assert!(m.bottom_images.iter().all(PermGroup::is_trivial));
        let cert = triv_k1_base(&m, 12).unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(exact_min_base(&m.group).len(), 2);

        let m = module(&permutation_module(&families::symmetric(4), 3).unwrap());
        assert_eq!(triv_k1_base(&m, 12).unwrap().len(), 2);
        assert_eq!(exact_min_base(&m.group).len(), 2);
    }

    #[test]
    fn trivial_top_needs_no_vectors() {
        let h = permutation_module(&PermGroup::trivial(2), 3).unwrap();
        assert_eq!(triv_k1_base(&module(&h), 12).unwrap().len(), 0);
    }

    #[test]
    fn monomial_groups() {
        let m = module(&monomial(3, &families::symmetric(2)).unwrap());
        assert!(triv_k1_base(&m, 12).is_err());
        let base = summand_base(&m);
        assert_eq!(base.len(), 1);
        let r = bounded_k1_base(&m, &base, 12).unwrap();
        assert!(r.certificate.len() <= 2);

        let m = module(&monomial(5, &families::symmetric(3)).unwrap());
        let r = bounded_k1_base(&m, &summand_base(&m), 12).unwrap();
        assert!(r.certificate.len() <= 1 + 1);
        assert!((r.certificate.len() as f64) <= r.bound);
    }

    #[test]
    fn rejects_non_base() {
        let m = module(&monomial(5, &families::symmetric(2)).unwrap());
        assert!(matches!(bounded_k1_base(&m, &[], 12), Err(Error::Hypothesis(_))));
    }
}
