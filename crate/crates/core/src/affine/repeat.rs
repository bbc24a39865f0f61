use crate::base::{exact_min_base, BaseCertificate};
use crate::gf::{as_permutation_group, encode, MatrixGroup, VectorDomain};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct RepeatedBase {
    /// Points of `W^l`, coded over the concatenated coordinates.
    pub certificate: BaseCertificate,
    /// Minimal base size of `L` on `W`.
    pub w_base_len: usize,
    pub vectors: Vec<Vec<u32>>,
}

/// Packs a minimal base of `L` on `W` into `⌈b/l⌉` vectors of `W^l`,
/// copy `c` of `W` holding the base vector with index `c` in each chunk.
pub fn repeated_module_base(l: &MatrixGroup, copies: usize, cap: u128) -> Result<RepeatedBase> {
    if copies == 0 {
        return Err(Error::Invalid("multiplicity must be at least 1".into()));
    }
    let (g, index) = as_permutation_group(l, VectorDomain::All, cap)?;
    let w_base = exact_min_base(&g);
    let dim = l.dim;
    let vectors: Vec<Vec<u32>> = w_base
        .points
        .chunks(copies)
        .map(|chunk| {
            let mut v = vec![0; dim * copies];
            for (c, &x) in chunk.iter().enumerate() {
                v[c * dim..(c + 1) * dim].copy_from_slice(&index.vector_of(x));
            }
            v
        })
        .collect();
    let points: Vec<usize> = vectors.iter().map(|v| encode(l.p, v) as usize).collect();
    let (big, _) = as_permutation_group(&l.power(copies)?, VectorDomain::All, cap)?;
    let residual = big.pointwise_stabilizer(&points)?;
    if !residual.is_trivial() {
        return Err(Error::Verification("packed vectors are not a base of the power".into()));
    }
    Ok(RepeatedBase {
        certificate: BaseCertificate {
            points,
            residual_order: 1,
            exact: false,
        },
        w_base_len: w_base.len(),
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{general_linear, DEFAULT_POINT_CAP};

    #[test]
    fn gl22() {
        let l = general_linear(2, 2).unwrap();
        let one = repeated_module_base(&l, 1, DEFAULT_POINT_CAP).unwrap();
        assert_eq!((one.w_base_len, one.certificate.len()), (2, 2));
        let two = repeated_module_base(&l, 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(two.certificate.len(), 1);
        assert_eq!(two.vectors[0][..2], one.vectors[0][..]);
        assert_eq!(two.vectors[0][2..], one.vectors[1][..]);
    }

    #[test]
    fn padding() {
        let l = general_linear(2, 3).unwrap();
        let r = repeated_module_base(&l, 2, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(r.w_base_len, 3);
        assert_eq!(r.certificate.len(), 2);
        assert!(r.vectors[1][3..].iter().all(|&x| x == 0));
        assert!(repeated_module_base(&l, 0, DEFAULT_POINT_CAP).is_err());
    }
}
