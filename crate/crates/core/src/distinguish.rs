//! Distinguishing colorings: an exact oracle and constructions from a
//! block system.
//!
//! Multi-digit colors are written least significant digit first, and a
//! pair of colorings `(inner, outer)` is packed as `inner_count * outer + inner`.

use std::collections::VecDeque;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::backtrack::{coloring_automorphism_outside, coloring_stabilizer};
use crate::blocks::{block_action, smallest_nontrivial_blocks, BlockActionData, BlockSystem};
use crate::group::PermGroup;
use crate::linking::{linking_structure, LinkingStructure};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Default largest degree handled by [`exact_dist_number`].
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// How a coloring was obtained, with its component colorings.
#[derive(Clone, Debug, PartialEq)]
pub enum Trace {
    Given,
    Oracle,
    Sampled,
    Distinct,
    /// `n - 1` colors for a natural alternating group.
    Natural,
    /// Block colors copied onto their points.
    Lifted { top: Box<Coloring> },
    /// Block `j` gets `j` points of color 1.
    Staircase,
    TrivialBottom { alpha: Box<Coloring> },
    SmallBottom { chi: Box<Coloring>, lambda: Box<Coloring> },
    LargeBottom {
        chi: Box<Coloring>,
        beta: Option<Box<Coloring>>,
        lambda: Box<Coloring>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub color_count: usize,
    pub trace: Trace,
    /// Set once the stabilizer has been checked against the kernel.
    pub verified: bool,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, color_count: usize, trace: Trace) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c as usize >= color_count) {
            return Err(Error::Invalid(format!(
                "color {c} out of range for {color_count} colors"
            )));
        }
        Ok(Coloring {
            colors,
            color_count,
            trace,
            verified: false,
        })
    }

    pub fn uniform(n: usize) -> Self {
        Coloring::new(vec![0; n], 1, Trace::Given).expect("zero is a valid color")
    }

    pub fn used_colors(&self) -> usize {
        let mut seen = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Checks that the stabilizer lies in `kernel` (is trivial if `None`)
    /// and marks the coloring verified.
    pub fn verify(mut self, g: &PermGroup, kernel: Option<&PermGroup>) -> Result<Self> {
        if self.colors.len() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: self.colors.len(),
            });
        }
        if let Some(w) = coloring_automorphism_outside(g, &self.colors, kernel) {
            return Err(Error::Verification(format!(
                "coloring is preserved by {w}"
            )));
        }
        self.verified = true;
        Ok(self)
    }
}

/// The subgroup of `g` preserving every color class.
pub fn stabilizer_of_coloring(g: &PermGroup, col: &Coloring) -> PermGroup {
    coloring_stabilizer(g, &col.colors)
}

/// Least `c >= 1` with `c^m >= d`.
pub fn ceil_root(d: usize, m: usize) -> usize {
    let mut c = 1usize;
    while (c as u128).checked_pow(m as u32).is_some_and(|v| v < d as u128) {
        c += 1;
    }
    c
}

fn digit(x: usize, base: usize, index: usize) -> u32 {
    let mut x = x;
    for _ in 0..index {
        x /= base;
    }
    (x % base) as u32
}

/// Restricted growth strings of length `n` using exactly `c` values.
struct GrowthStrings {
    n: usize,
    c: usize,
    word: Vec<u32>,
    started: bool,
}

impl GrowthStrings {
    fn new(n: usize, c: usize) -> Self {
        GrowthStrings {
            n,
            c,
            word: vec![0; n],
            started: false,
        }
    }

    /// Completes positions `from..` with the least valid suffix given the
    /// prefix maximum.
    fn fill_least(&mut self, from: usize) -> bool {
        let mut top = self.word[..from].iter().max().map_or(-1, |&m| m as i64);
        for i in from..self.n {
            let missing = (self.c as i64 - 1) - top;
            let left = (self.n - i) as i64;
            if missing >= left {
                top += 1;
                self.word[i] = top as u32;
            } else {
                self.word[i] = 0;
            }
        }
        top == self.c as i64 - 1
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return self.n > 0 && self.c <= self.n && self.c >= 1 && self.fill_least(1);
        }
        for i in (1..self.n).rev() {
            let top = self.word[..i].iter().max().copied().unwrap_or(0);
            let limit = (top + 1).min(self.c as u32 - 1);
            if self.word[i] < limit {
                self.word[i] += 1;
                let new_top = top.max(self.word[i]) as i64;
                let missing = (self.c as i64 - 1) - new_top;
                if missing <= (self.n - i - 1) as i64 && self.fill_least(i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

fn check_kernel(g: &PermGroup, modulo: Option<&PermGroup>) -> Result<()> {
    if let Some(n) = modulo {
        if n.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: n.degree(),
            });
        }
        if !g.is_normal_subgroup(n) {
            return Err(Error::NotNormal);
        }
    }
    Ok(())
}

/// Least number of colors whose stabilizer lies in `modulo`, with a witness.
///
/// Colorings are enumerated canonically: the least point has color 0 and
/// new colors appear in order of first occurrence.
pub fn exact_dist_number(
    g: &PermGroup,
    modulo: Option<&PermGroup>,
    cap: usize,
) -> Result<(usize, Coloring)> {
    let n = g.degree();
    if n > cap {
        return Err(Error::CapExceeded {
            size: n as u128,
            cap: cap as u128,
        });
    }
    check_kernel(g, modulo)?;
    for c in 1..=n.max(1) {
        let mut words = GrowthStrings::new(n, c);
        while words.advance() {
            if coloring_automorphism_outside(g, &words.word, modulo).is_none() {
                let col = Coloring::new(words.word.clone(), c, Trace::Oracle)?;
                return Ok((c, Coloring { verified: true, ..col }));
            }
        }
        if n == 0 {
            break;
        }
    }
    // only the empty domain reaches here
    Ok((1, Coloring { verified: true, ..Coloring::uniform(n) }))
}

/// Seeded random search for a distinguishing coloring with at most
/// `max_colors` colors.
pub fn sample_distinguishing(
    g: &PermGroup,
    max_colors: usize,
    attempts: usize,
    seed: u64,
) -> Option<Coloring> {
    let mut rng = StdRng::seed_from_u64(seed);
    for c in 2..=max_colors {
        for _ in 0..attempts {
            let colors: Vec<u32> = (0..g.degree()).map(|_| rng.gen_range(0..c as u32)).collect();
            if coloring_automorphism_outside(g, &colors, None).is_none() {
                let col = Coloring::new(colors, c, Trace::Sampled).ok()?;
                return Some(Coloring { verified: true, ..col });
            }
        }
    }
    None
}

/// Elements `g_j` of `g` with `g_j(block 0) = block j`.
fn block_transversal(g: &PermGroup, blocks: &BlockSystem) -> Result<Vec<Permutation>> {
    let k = blocks.block_count;
    let mut reps: Vec<Option<Permutation>> = vec![None; k];
    reps[0] = Some(Permutation::identity(g.degree()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        let u = reps[j].clone().expect("queued blocks have representatives");
        for s in g.nontrivial_generators() {
            let image = blocks.assignment[s.apply(blocks.blocks[j][0])];
            if reps[image].is_none() {
                reps[image] = Some(s.compose_unchecked(&u));
                queue.push_back(image);
            }
        }
    }
    reps.into_iter()
        .map(|r| r.ok_or(Error::Intransitive))
        .collect()
}

/// Copies a coloring of block 0 (indexed by sorted position) to every block
/// along a block transversal.
pub fn transport(g: &PermGroup, blocks: &BlockSystem, local: &[u32]) -> Result<Vec<u32>> {
    let reps = block_transversal(g, blocks)?;
    let mut colors = vec![0u32; g.degree()];
    for rep in &reps {
        for (i, &y) in blocks.blocks[0].iter().enumerate() {
            colors[rep.apply(y)] = local[i];
        }
    }
    Ok(colors)
}

fn check_distinguishes(top: &PermGroup, alpha: &Coloring) -> Result<()> {
    if alpha.colors.len() != top.degree() {
        return Err(Error::DegreeMismatch {
            left: top.degree(),
            right: alpha.colors.len(),
        });
    }
    if coloring_automorphism_outside(top, &alpha.colors, None).is_some() {
        return Err(Error::Hypothesis("block coloring does not distinguish the top action".into()));
    }
    Ok(())
}

/// Coloring for a group whose block stabilizers act trivially on their
/// blocks, from a distinguishing coloring `alpha` of the blocks.
pub fn construct_trivial_bottom(g: &PermGroup, b: &BlockSystem, alpha: &Coloring) -> Result<Coloring> {
    let data = block_action(g, b)?;
    construct_trivial_bottom_with(g, b, &data, alpha)
}

fn construct_trivial_bottom_with(
    g: &PermGroup,
    b: &BlockSystem,
    data: &BlockActionData,
    alpha: &Coloring,
) -> Result<Coloring> {
    if data.block_stabilizer_images.iter().any(|h| !h.is_trivial()) {
        return Err(Error::Hypothesis("a block stabilizer acts nontrivially on its block".into()));
    }
    check_distinguishes(&data.top_group, alpha)?;
    let m = b.block_size;
    let mut f = vec![usize::MAX; g.degree()];
    let mut used = vec![vec![false; m]; b.block_count];
    for orbit in g.orbits() {
        let mut met: Vec<usize> = orbit.iter().map(|&x| b.assignment[x]).collect();
        met.sort_unstable();
        if met.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Hypothesis("an orbit meets a block twice".into()));
        }
        let pos = (0..m)
            .find(|&i| met.iter().all(|&j| !used[j][i]))
            .ok_or_else(|| Error::Structure("no free block position for an orbit".into()))?;
        for &j in &met {
            used[j][pos] = true;
        }
        for &x in &orbit {
            f[x] = pos;
        }
    }
    let c = ceil_root(alpha.color_count, m);
    let colors = (0..g.degree())
        .map(|x| digit(alpha.colors[b.assignment[x]] as usize, c, f[x]))
        .collect();
    let trace = Trace::TrivialBottom {
        alpha: Box::new(alpha.clone()),
    };
    Coloring::new(colors, c, trace)?.verify(g, None)
}

fn pack(inner: &[u32], inner_count: usize, outer: &[u32]) -> Vec<u32> {
    inner
        .iter()
        .zip(outer)
        .map(|(&i, &o)| inner_count as u32 * o + i)
        .collect()
}

/// Pairs a per-block coloring `chi` that kills every block action with a
/// trivial-bottom coloring of the `chi`-stabilizer: `μ = |χ|·λ + χ`.
pub fn construct_small_bottom(
    g: &PermGroup,
    b: &BlockSystem,
    chi: &Coloring,
    lambda_top: &Coloring,
) -> Result<Coloring> {
    let t = coloring_stabilizer(g, &chi.colors);
    let data = block_action(&t, b)?;
    if data.block_stabilizer_images.iter().any(|h| !h.is_trivial()) {
        return Err(Error::Hypothesis(
            "per-block coloring leaves a nontrivial block action".into(),
        ));
    }
    let lambda = construct_trivial_bottom_with(&t, b, &data, lambda_top)?;
    let colors = pack(&chi.colors, chi.color_count, &lambda.colors);
    let count = chi.color_count * lambda.color_count;
    let trace = Trace::SmallBottom {
        chi: Box::new(chi.clone()),
        lambda: Box::new(lambda),
    };
    Coloring::new(colors, count, trace)?.verify(g, None)
}

/// Construction for a large bottom action with nontrivial kernel, using the
/// linking classes and coordinates of `l`.
pub fn construct_large_bottom(
    g: &PermGroup,
    b: &BlockSystem,
    l: &LinkingStructure,
    lambda_top: &Coloring,
) -> Result<Coloring> {
    let m = b.block_size;
    if m < 5 || m == 6 {
        return Err(Error::Hypothesis(format!("large bottom needs m >= 5, m != 6; got {m}")));
    }
    let t = l.linking_factor;
    let n = g.degree();
    let mut chi = vec![0u32; n];
    let mut beta = vec![0u32; n];
    let c_beta = ceil_root(m, t);
    for class in &l.classes {
        for (pos, &j) in class.iter().enumerate() {
            let w = pos + 1;
            for (i, &x) in l.coordinates[j].iter().enumerate() {
                chi[x] = u32::from(i < w && (t < m || w <= m));
                beta[x] = digit(i, c_beta, w - 1);
            }
        }
    }
    let chi = Coloring::new(chi, 2, Trace::Given)?;
    let (inner, inner_count, beta) = if t >= m {
        (chi.colors.clone(), 2, None)
    } else {
        let beta = Coloring::new(beta, c_beta, Trace::Given)?;
        (pack(&chi.colors, 2, &beta.colors), 2 * c_beta, Some(Box::new(beta)))
    };
    let stab = coloring_stabilizer(g, &inner);
    let data = block_action(&stab, b)?;
    let lambda = construct_trivial_bottom_with(&stab, b, &data, lambda_top)?;
    let colors = pack(&inner, inner_count, &lambda.colors);
    let count = inner_count * lambda.color_count;
    let trace = Trace::LargeBottom {
        chi: Box::new(chi),
        beta,
        lambda: Box::new(lambda),
    };
    Coloring::new(colors, count, trace)?.verify(g, None)
}

/// Block `j` gets its `j` least points colored 1; distinguishing when the
/// kernel on blocks is trivial and `m >= k - 1`.
pub fn staircase(g: &PermGroup, b: &BlockSystem) -> Result<Coloring> {
    if b.block_size + 1 < b.block_count {
        return Err(Error::Hypothesis("blocks too small for a staircase".into()));
    }
    let mut colors = vec![0u32; g.degree()];
    for (j, block) in b.blocks.iter().enumerate() {
        for &x in &block[..j] {
            colors[x] = 1;
        }
    }
    let count = if b.block_count > 1 { 2 } else { 1 };
    Coloring::new(colors, count, Trace::Staircase)?.verify(g, None)
}

/// Colors each point by the color of its block.
pub fn lift_top(g: &PermGroup, b: &BlockSystem, alpha: &Coloring) -> Result<Coloring> {
    let colors = (0..g.degree()).map(|x| alpha.colors[b.assignment[x]]).collect();
    let trace = Trace::Lifted {
        top: Box::new(alpha.clone()),
    };
    Coloring::new(colors, alpha.color_count, trace)?.verify(g, None)
}

/// `48 |G|^{1/n}` as a float, for reporting.
pub fn upper_bound(order: u128, n: usize) -> f64 {
    48.0 * (order as f64).powf(1.0 / n as f64)
}

/// Exact test of `d <= 48 |G|^{1/n}`, i.e. `d^n <= 48^n |G|`.
pub fn within_upper_bound(d: usize, order: u128, n: usize) -> bool {
    if d <= 48 {
        return true;
    }
    // d^n / 48^n <= |G| with (d/48)^n > 1
    let mut lhs = 1u128;
    let mut rhs = order;
    for _ in 0..n {
        lhs = match lhs.checked_mul(d as u128) {
            Some(v) => v,
            None => return false,
        };
        rhs = match rhs.checked_mul(48) {
            Some(v) => v,
            None => return true,
        };
    }
    lhs <= rhs
}

/// Exact test of `|G|^{1/n} < d`, i.e. `|G| < d^n`.
pub fn above_lower_bound(d: usize, order: u128, n: usize) -> bool {
    match (d as u128).checked_pow(n as u32) {
        Some(v) => order < v,
        None => true,
    }
}

/// Settings for [`distinguish_transitive`].
#[derive(Clone, Debug)]
pub struct Options {
    pub oracle_cap: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            oracle_cap: DEFAULT_ORACLE_CAP,
            seed: 0,
        }
    }
}

/// A verified distinguishing coloring of a transitive group, with the
/// `48 |G|^{1/n}` bound evaluated on it.
#[derive(Clone, Debug)]
pub struct Report {
    pub coloring: Coloring,
    pub bound: f64,
    pub within_bound: bool,
}

pub fn distinguish_transitive(g: &PermGroup, opts: &Options) -> Result<Report> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let coloring = distinguish(g, opts)?;
    let n = g.degree();
    Ok(Report {
        within_bound: within_upper_bound(coloring.color_count, g.order(), n),
        bound: upper_bound(g.order(), n),
        coloring,
    })
}

fn better(best: Option<Coloring>, candidate: Result<Coloring>) -> Option<Coloring> {
    match (best, candidate) {
        (None, Ok(c)) => Some(c),
        (Some(b), Ok(c)) if c.color_count < b.color_count => Some(c),
        (best, _) => best,
    }
}

fn distinct(g: &PermGroup) -> Coloring {
    let n = g.degree();
    let col = Coloring::new((0..n as u32).collect(), n.max(1), Trace::Distinct)
        .expect("distinct colors are in range");
    Coloring { verified: true, ..col }
}

fn distinguish(g: &PermGroup, opts: &Options) -> Result<Coloring> {
    let n = g.degree();
    if g.is_trivial() {
        return Coloring::uniform(n).verify(g, None);
    }
    let oracle = || exact_dist_number(g, None, opts.oracle_cap).map(|r| r.1);
    let Some(blocks) = smallest_nontrivial_blocks(g)? else {
        return primitive(g, opts);
    };
    let mut best = None;
    best = better(best, imprimitive(g, &blocks, opts));
    if n <= opts.oracle_cap {
        best = better(best, oracle());
    }
    Ok(best.unwrap_or_else(|| distinct(g)))
}

fn primitive(g: &PermGroup, opts: &Options) -> Result<Coloring> {
    let n = g.degree();
    if n <= opts.oracle_cap {
        return exact_dist_number(g, None, opts.oracle_cap).map(|r| r.1);
    }
    if g.contains_alternating() {
        if g.order() == (2..=n as u128).product::<u128>() {
            return Ok(distinct(g));
        }
        let colors = (0..n).map(|x| x.saturating_sub(1) as u32).collect();
        return Coloring::new(colors, n - 1, Trace::Natural)?.verify(g, None);
    }
    Ok(sample_distinguishing(g, 4, 256, opts.seed).unwrap_or_else(|| distinct(g)))
}

fn imprimitive(g: &PermGroup, blocks: &BlockSystem, opts: &Options) -> Result<Coloring> {
    let data = block_action(g, blocks)?;
    let m = blocks.block_size;
    let top = distinguish(&data.top_group, opts)?;
    let bottom = &data.block_stabilizer_images[0];
    let kernel_trivial = data.kernel.is_trivial();
    let large = m >= 5 && bottom.contains_alternating();

    let mut best = None;
    if kernel_trivial {
        best = better(best, lift_top(g, blocks, &top));
        if m + 1 >= blocks.block_count {
            best = better(best, staircase(g, blocks));
        }
    }
    if large && !kernel_trivial && m != 6 {
        if let Ok(l) = linking_structure(&data.kernel, blocks) {
            best = better(best, construct_large_bottom(g, blocks, &l, &top));
        }
    }
    let local = distinguish(bottom, opts)?;
    let chi = Coloring::new(transport(g, blocks, &local.colors)?, local.color_count, Trace::Given)?;
    best = better(best, construct_small_bottom(g, blocks, &chi, &top));
    best.ok_or_else(|| Error::Structure("no construction applied".into()))
}
