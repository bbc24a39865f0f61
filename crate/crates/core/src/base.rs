//! Bases: verification, greedy and exact minimal bases, bases modulo a
//! normal subgroup, and bases for the action on colorings.

use crate::distinguish;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};

/// A point sequence together with the order of its pointwise stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCertificate {
    pub points: Vec<usize>,
    pub residual_order: u128,
    /// Set when no shorter sequence works.
    pub exact: bool,
}

impl BaseCertificate {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Recomputes the residual stabilizer and checks it lies in `modulo`.
    pub fn verify(&self, g: &PermGroup, modulo: Option<&PermGroup>) -> Result<()> {
        let stab = g.pointwise_stabilizer(&self.points)?;
        if stab.order() != self.residual_order {
            return Err(Error::Verification(format!(
                "residual order {} recorded, {} found",
                self.residual_order,
                stab.order()
            )));
        }
        if !within(&stab, modulo) {
            return Err(Error::Verification("stabilizer not contained in the kernel".into()));
        }
        Ok(())
    }
}

fn within(s: &PermGroup, modulo: Option<&PermGroup>) -> bool {
    match modulo {
        None => s.is_trivial(),
        Some(n) => s.is_subgroup_of(n),
    }
}

fn check_modulo(g: &PermGroup, modulo: Option<&PermGroup>) -> Result<()> {
    match modulo {
        Some(n) if n.degree() != g.degree() => Err(Error::DegreeMismatch {
            left: g.degree(),
            right: n.degree(),
        }),
        Some(n) if !g.is_normal_subgroup(n) => Err(Error::NotNormal),
        _ => Ok(()),
    }
}

/// Does `∩ G_x` over `pts` lie in `modulo` (in the trivial group if `None`)?
pub fn is_base(g: &PermGroup, pts: &[usize], modulo: Option<&PermGroup>) -> Result<bool> {
    check_modulo(g, modulo)?;
    Ok(within(&g.pointwise_stabilizer(pts)?, modulo))
}

/// Orbit representatives (least points) of the nontrivial orbits, by
/// decreasing orbit length then least point.
fn branch_points(s: &PermGroup) -> Vec<(usize, usize)> {
    let mut reps: Vec<(usize, usize)> = s
        .orbits()
        .into_iter()
        .filter(|o| o.len() > 1)
        .map(|o| (o[0], o.len()))
        .collect();
    reps.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    reps
}

pub fn greedy_base(g: &PermGroup) -> BaseCertificate {
    greedy_base_mod(g, None).expect("no kernel to check")
}

/// Greedy base: repeatedly fix a point in a largest orbit of the current
/// stabilizer, least point first among ties.
pub fn greedy_base_mod(g: &PermGroup, modulo: Option<&PermGroup>) -> Result<BaseCertificate> {
    check_modulo(g, modulo)?;
    let mut points = Vec::new();
    let mut s = g.clone();
    while !within(&s, modulo) {
        let (x, _) = branch_points(&s)[0];
        points.push(x);
        s = g.pointwise_stabilizer(&points)?;
    }
    Ok(BaseCertificate {
        points,
        residual_order: s.order(),
        exact: false,
    })
}

pub fn exact_min_base(g: &PermGroup) -> BaseCertificate {
    exact_min_base_mod(g, None).expect("no kernel to check")
}

/// A shortest base modulo `modulo`, by iterative deepening over orbit
/// representatives of the current stabilizer.
pub fn exact_min_base_mod(g: &PermGroup, modulo: Option<&PermGroup>) -> Result<BaseCertificate> {
    let greedy = greedy_base_mod(g, modulo)?;
    let kernel_order = modulo.map_or(1, PermGroup::order);
    for depth in 0..greedy.len() {
        let mut chosen = Vec::with_capacity(depth);
        if let Some(s) = search(g, g, modulo, kernel_order, depth, &mut chosen)? {
            return Ok(BaseCertificate {
                points: chosen,
                residual_order: s.order(),
                exact: true,
            });
        }
    }
    Ok(BaseCertificate {
        exact: true,
        ..greedy
    })
}

fn search(
    g: &PermGroup,
    s: &PermGroup,
    modulo: Option<&PermGroup>,
    kernel_order: u128,
    remaining: usize,
    chosen: &mut Vec<usize>,
) -> Result<Option<PermGroup>> {
    if within(s, modulo) {
        return Ok(Some(s.clone()));
    }
    if remaining == 0 {
        return Ok(None);
    }
    let reps = branch_points(s);
    let max_orbit = reps[0].1 as u128;
    let reachable = max_orbit
        .checked_pow(remaining as u32)
        .and_then(|x| x.checked_mul(kernel_order));
    if reachable.is_some_and(|r| s.order() > r) {
        return Ok(None);
    }
    for (x, len) in reps {
        if remaining == 1 && modulo.is_none() && len as u128 != s.order() {
            continue;
        }
        chosen.push(x);
        let next = g.pointwise_stabilizer(chosen)?;
        if let Some(found) = search(g, &next, modulo, kernel_order, remaining - 1, chosen)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

/// Action of `g` on the `q^n` functions `Ω -> {0..q-1}`, a function `f`
/// being the point `Σ f(x) q^x` and `g` sending `f` to `f ∘ g⁻¹`.
pub fn function_action(g: &PermGroup, q: usize, cap: u128) -> Result<PermGroup> {
    let n = g.degree();
    let size = (q as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let size = size as usize;
    let powers: Vec<usize> = (0..n).map(|x| q.pow(x as u32)).collect();
    let gens = g
        .nontrivial_generators()
        .map(|p| {
            let images = (0..size)
                .map(|f| {
                    let mut code = 0;
                    let mut rest = f;
                    for x in 0..n {
                        let digit = rest % q;
                        rest /= q;
                        code += digit * powers[p.apply(x)];
                    }
                    code as u32
                })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    PermGroup::new(size, gens)
}

/// Least `b` with `q^b >= d`.
pub fn ceil_log(d: u128, q: u128) -> usize {
    let mut b = 0;
    let mut reach = 1u128;
    while reach < d {
        reach = reach.saturating_mul(q);
        b += 1;
    }
    b
}

/// Minimal base size on functions into `q` values, from the distinguishing
/// number: `⌈log_q d(G)⌉`.
pub fn base_on_partitions(g: &PermGroup, q: usize, oracle_cap: usize) -> Result<usize> {
    if q < 2 {
        return Err(Error::Invalid("q must be at least 2".into()));
    }
    let (d, _) = distinguish::exact_dist_number(g, None, oracle_cap)?;
    Ok(ceil_log(d as u128, q as u128))
}

/// Minimal base size on functions into `q` values, by exact search on the
/// function action.
pub fn base_on_partitions_direct(g: &PermGroup, q: usize, point_cap: u128) -> Result<usize> {
    if q < 2 {
        return Err(Error::Invalid("q must be at least 2".into()));
    }
    Ok(exact_min_base(&function_action(g, q, point_cap)?).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn sym4_bases() {
        let s4 = families::symmetric(4);
        assert!(is_base(&s4, &[0, 1, 2], None).unwrap());
        assert!(!is_base(&s4, &[0, 1], None).unwrap());
        let a4 = families::alternating(4);
        assert!(!is_base(&s4, &[0, 1], Some(&a4)).unwrap());
        assert!(is_base(&s4, &[], Some(&s4)).unwrap());
        let stab = s4.pointwise_stabilizer(&[0]).unwrap();
        assert_eq!(is_base(&s4, &[0], Some(&stab)), Err(Error::NotNormal));
    }

    #[test]
    fn exact_values() {
        for n in 2..7 {
            assert_eq!(exact_min_base(&families::symmetric(n)).len(), n - 1);
        }
        assert_eq!(exact_min_base(&families::cyclic(7)).len(), 1);
        assert_eq!(exact_min_base(&families::dihedral(4)).len(), 2);
        assert_eq!(exact_min_base(&PermGroup::trivial(3)).len(), 0);
        assert_eq!(exact_min_base(&PermGroup::trivial(1)).len(), 0);
        assert_eq!(exact_min_base(&families::alternating(5)).len(), 3);
    }

    #[test]
    fn greedy_is_a_base() {
        let w = families::wreath(&families::symmetric(3), &families::symmetric(2));
        let gr = greedy_base(&w);
        gr.verify(&w, None).unwrap();
        let ex = exact_min_base(&w);
        ex.verify(&w, None).unwrap();
        assert!(gr.len() >= ex.len());
        assert_eq!(greedy_base(&families::cyclic(5)).len(), 1);
    }

    #[test]
    fn modulo_kernel() {
        let w = families::wreath(&families::symmetric(2), &families::symmetric(3));
        let kernel = crate::blocks::block_action(&w, &crate::BlockSystem::consecutive(2, 3))
            .unwrap()
            .kernel;
        // the top group Sym(3) needs two blocks fixed
        let cert = exact_min_base_mod(&w, Some(&kernel)).unwrap();
        assert_eq!(cert.len(), 2);
        cert.verify(&w, Some(&kernel)).unwrap();
    }

    #[test]
    fn partitions_bridge() {
        let s3 = families::symmetric(3);
        assert_eq!(base_on_partitions(&s3, 2, 12).unwrap(), 2);
        assert_eq!(base_on_partitions_direct(&s3, 2, 1 << 20).unwrap(), 2);
        assert_eq!(base_on_partitions(&PermGroup::trivial(3), 2, 12).unwrap(), 0);
        assert_eq!(base_on_partitions_direct(&PermGroup::trivial(3), 3, 1 << 20).unwrap(), 0);
        let s5 = families::symmetric(5);
        assert_eq!(base_on_partitions(&s5, 2, 12).unwrap(), 3);
        assert_eq!(base_on_partitions_direct(&s5, 2, 1 << 20).unwrap(), 3);
    }

    #[test]
    fn ceil_logs() {
        assert_eq!(ceil_log(1, 2), 0);
        assert_eq!(ceil_log(3, 2), 2);
        assert_eq!(ceil_log(4, 2), 2);
        assert_eq!(ceil_log(5, 2), 3);
        assert_eq!(ceil_log(9, 3), 2);
    }
}
