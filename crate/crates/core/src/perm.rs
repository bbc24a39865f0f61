//! Permutations of `{0, .., n-1}` stored as image vectors.

use std::fmt;
use std::ops::Mul;

use crate::{Error, Result};

/// A bijection of `{0, .., n-1}`, stored as the sequence of images.
///
/// Composition follows the functional convention: `a * b` maps `x` to
/// `a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: TryInto<u32>,
    {
        let images: Vec<u32> = images
            .into_iter()
            .map(|x| x.try_into().map_err(|_| Error::NotBijective))
            .collect::<Result<_>>()?;
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::NotBijective);
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^-1 * other^-1 * self * other`
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        let a = self.inverse();
        let b = other.inverse();
        a.compose_unchecked(&b)
            .compose_unchecked(self)
            .compose_unchecked(other)
    }

    /// `by * self * by^-1`
    pub fn conjugate_by(&self, by: &Permutation) -> Permutation {
        by.compose_unchecked(self).compose_unchecked(&by.inverse())
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// First point moved by the permutation, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn fixes_all(&self, points: &[usize]) -> bool {
        points.iter().all(|&x| self.apply(x) == x)
    }

    /// Maps every point of `set` into `set`.
    pub fn stabilizes_set(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.degree()];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&x| member[self.apply(x)])
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut l: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a checked variant.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let a = cyc(3, &[&[0, 1]]);
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
    }

    #[test]
    fn square_of_three_cycle() {
        let a = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(a.compose(&a).unwrap(), cyc(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn product_of_transpositions() {
        // (0 1)(1 2): 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        let c = a.compose(&b).unwrap();
        assert_eq!(c.apply(1), 2);
        assert_eq!(c.apply(2), 0);
        assert_eq!(c.apply(0), 1);
        assert_eq!(c.images(), &[1, 2, 0]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images([0u32, 0, 1]).is_err());
        assert!(Permutation::from_images([0u32, 3, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let a = cyc(6, &[&[0, 1, 2], &[3, 4]]);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(a.order(), 6);
        assert_eq!(a.pow(6), Permutation::identity(6));
        assert!(!a.is_even());
        assert_eq!(format!("{a}"), "(0 1 2)(3 4)");
    }
}
