//! Verification campaigns over the built-in corpora.
//!
//! Each campaign is a list of independent items producing one record each.
//! Items that hit a size cap are recorded as skipped; any other error is a
//! failure.

use std::sync::Arc;
use std::time::Instant;

use pgt_core::affine::{
    alt_induced_base, alt_induced_pipeline, bounded_k1_base, repeated_module_base, summand_base, triv_k1_base,
    ImprimitiveModule,
};
use pgt_core::base::{
    base_on_partitions, base_on_partitions_direct, ceil_log, exact_min_base, greedy_base, is_base,
};
use pgt_core::blocks::{block_action, is_primitive, smallest_nontrivial_blocks};
use pgt_core::distinguish::{
    above_lower_bound, ceil_root, construct_large_bottom, construct_small_bottom, construct_trivial_bottom,
    distinguish_transitive, exact_dist_number, stabilizer_of_coloring, transport, upper_bound, within_upper_bound,
    Options, Trace,
};
use pgt_core::gf::{affine_group, as_permutation_group, VectorDomain};
use pgt_core::linking::linking_structure;
use pgt_core::{BlockSystem, Coloring, PermGroup};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::{self, Entry};
use crate::record::{ResultRecord, Status};
use crate::spec::{Group, GroupSpec};
use crate::CliError;

pub const CAMPAIGNS: [&str; 10] = [
    "lemma21",
    "thm12",
    "lemma_colors",
    "seress_dolfi",
    "bases",
    "trivK1",
    "thm_boundedK1",
    "lemma_alt",
    "repeat",
    "affine",
];

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    pub oracle_cap: usize,
    pub point_cap: u128,
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Only groups of at most this degree (vectors for matrix groups).
    pub max_degree: Option<usize>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            oracle_cap: pgt_core::distinguish::DEFAULT_ORACLE_CAP,
            point_cap: pgt_core::gf::DEFAULT_POINT_CAP,
            seed: 0,
            jobs: 0,
            max_degree: None,
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, Default)]
pub struct Check {
    pub value: Value,
    pub witness: Value,
    pub bound: Option<f64>,
    pub failure: Option<String>,
}

impl Check {
    fn new(value: Value) -> Self {
        Check {
            value,
            ..Check::default()
        }
    }

    fn witness(mut self, w: Value) -> Self {
        self.witness = w;
        self
    }

    fn bound(mut self, b: f64) -> Self {
        self.bound = Some(b);
        self
    }

    /// Records `msg` as the failure unless `ok` holds; earlier failures win.
    fn require(mut self, ok: bool, msg: impl FnOnce() -> String) -> Self {
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
        self
    }
}

type CheckFn = dyn Fn(&Group, &CampaignOptions) -> Result<Check, CliError> + Send + Sync;

pub struct Item {
    pub label: String,
    pub operation: String,
    pub spec: GroupSpec,
    check: Arc<CheckFn>,
}

fn item<F>(label: impl Into<String>, operation: &str, spec: &GroupSpec, f: F) -> Item
where
    F: Fn(&Group, &CampaignOptions) -> Result<Check, CliError> + Send + Sync + 'static,
{
    Item {
        label: label.into(),
        operation: operation.to_string(),
        spec: spec.clone(),
        check: Arc::new(f),
    }
}

fn degree_of(g: &Group) -> usize {
    match g {
        Group::Perm(p) => p.degree(),
        Group::Matrix(h) => h.vector_count().min(usize::MAX as u128) as usize,
    }
}

impl Item {
    /// Runs the item, or returns `None` when the degree filter excludes it.
    pub fn run(&self, opts: &CampaignOptions) -> Option<ResultRecord> {
        let start = Instant::now();
        let group = match self.spec.resolve() {
            Ok(g) => g,
            Err(e) => {
                let mut rec = ResultRecord::new("unresolved", &self.label, &self.operation);
                rec.status = Status::Fail;
                rec.detail = Some(e.to_string());
                return Some(rec);
            }
        };
        if opts.max_degree.is_some_and(|d| degree_of(&group) > d) {
            return None;
        }
        let mut rec = ResultRecord::new(&group.id(), &self.label, &self.operation);
        match (self.check)(&group, opts) {
            Ok(c) => {
                rec.value = c.value;
                rec.witness = c.witness;
                rec.bound_checked = c.bound.is_some();
                rec.bound_value = c.bound;
                if let Some(msg) = c.failure {
                    rec.status = Status::Fail;
                    rec.detail = Some(msg);
                }
            }
            Err(CliError::Group(e @ pgt_core::Error::CapExceeded { .. })) => {
                rec.status = Status::Skipped;
                rec.detail = Some(e.to_string());
            }
            Err(e) => {
                rec.status = Status::Fail;
                rec.detail = Some(e.to_string());
            }
        }
        rec.elapsed_ms = start.elapsed().as_millis() as u64;
        Some(rec)
    }
}

fn resolved_degree(spec: &GroupSpec) -> usize {
    spec.resolve().map_or(usize::MAX, |g| degree_of(&g))
}

fn perm(g: &Group, opts: &CampaignOptions) -> Result<PermGroup, CliError> {
    g.to_perm(opts.point_cap)
}

fn lemma21() -> Vec<Item> {
    let mut items = Vec::new();
    for e in corpus::transitive().into_iter().filter(|e| resolved_degree(&e.spec) <= 7) {
        for q in [2usize, 3] {
            items.push(item(format!("{} q={q}", e.name), "partition_base", &e.spec, move |g, o| {
                let g = perm(g, o)?;
                let direct = base_on_partitions_direct(&g, q, o.point_cap)?;
                let formula = base_on_partitions(&g, q, o.oracle_cap)?;
                Ok(Check::new(json!(direct))
                    .witness(json!({ "q": q, "formula": formula }))
                    .require(direct == formula, || format!("direct {direct} != formula {formula}")))
            }));
        }
    }
    items
}

fn thm12() -> Vec<Item> {
    corpus::transitive()
        .into_iter()
        .map(|e| {
            item(e.name, "dist_bounds", &e.spec, |g, o| {
                let g = perm(g, o)?;
                let n = g.degree();
                let order = g.order();
                let (d, col) = exact_dist_number(&g, None, o.oracle_cap)?;
                let report = distinguish_transitive(
                    &g,
                    &Options {
                        oracle_cap: o.oracle_cap,
                        seed: o.seed,
                    },
                )?;
                let built = report.coloring.color_count;
                let recheck = stabilizer_of_coloring(&g, &report.coloring).is_trivial();
                Ok(Check::new(json!(d))
                    .witness(json!({ "oracle": col.colors, "constructed": report.coloring.colors, "constructed_count": built }))
                    .bound(upper_bound(order, n))
                    .require(g.is_transitive(), || "not transitive".into())
                    .require(above_lower_bound(d, order, n), || format!("|G|^(1/n) >= d = {d}"))
                    .require(within_upper_bound(d, order, n), || format!("d = {d} above 48 |G|^(1/n)"))
                    .require(report.coloring.verified && recheck, || "constructed coloring does not distinguish".into())
                    .require(built >= d, || format!("constructed {built} colors below the oracle value {d}"))
                    .require(report.within_bound, || format!("constructed {built} colors above the bound")))
            })
        })
        .collect()
}

fn seress_dolfi() -> Vec<Item> {
    corpus::primitive_non_alternating()
        .into_iter()
        .map(|e| {
            item(e.name, "dist_primitive", &e.spec, |g, o| {
                let g = perm(g, o)?;
                let (d, col) = exact_dist_number(&g, None, o.oracle_cap)?;
                Ok(Check::new(json!(d))
                    .witness(json!(col.colors))
                    .bound(4.0)
                    .require(g.is_transitive() && is_primitive(&g)?, || "not primitive".into())
                    .require(!g.contains_alternating(), || "contains the alternating group".into())
                    .require(d <= 4, || format!("d = {d} > 4")))
            })
        })
        .collect()
}

fn columns(n: usize, rows: usize) -> Result<BlockSystem, CliError> {
    let blocks = (0..n).map(|c| (0..rows).map(|r| r * n + c).collect()).collect();
    Ok(BlockSystem::from_blocks(n * rows, blocks)?)
}

fn coloring_json(c: &Coloring) -> Value {
    json!({ "colors": c.colors, "count": c.color_count })
}

fn lemma_colors() -> Vec<Item> {
    let mut items = Vec::new();
    for (e, n, rows) in corpus::trivial_bottom_instances() {
        items.push(item(e.name, "trivial_bottom", &e.spec, move |g, o| {
            let g = perm(g, o)?;
            let b = columns(n, rows)?;
            let top = block_action(&g, &b)?.top_group;
            let (d, alpha) = exact_dist_number(&top, None, o.oracle_cap)?;
            let col = construct_trivial_bottom(&g, &b, &alpha)?;
            let bound = ceil_root(d, b.block_size);
            Ok(Check::new(json!(col.color_count))
                .witness(coloring_json(&col))
                .bound(bound as f64)
                .require(stabilizer_of_coloring(&g, &col).is_trivial(), || "not distinguishing".into())
                .require(col.color_count <= bound, || format!("{} colors > {bound}", col.color_count)))
        }));
    }
    let large: Vec<String> = corpus::large_bottom_instances().into_iter().map(|e| e.name).collect();
    let imprimitive = |e: &Entry| {
        e.spec
            .resolve()
            .and_then(|g| g.to_perm(pgt_core::gf::DEFAULT_POINT_CAP))
            .is_ok_and(|g| matches!(smallest_nontrivial_blocks(&g), Ok(Some(_))))
    };
    for e in corpus::transitive()
        .into_iter()
        .filter(|e| !large.contains(&e.name) && imprimitive(e))
    {
        items.push(item(e.name, "small_bottom", &e.spec, |g, o| {
            let g = perm(g, o)?;
            let b = smallest_nontrivial_blocks(&g)?.ok_or_else(|| CliError::Spec("primitive group".into()))?;
            let data = block_action(&g, &b)?;
            let m = b.block_size;
            let bottom = &data.block_stabilizer_images[0];
            let (d, lambda_top) = exact_dist_number(&data.top_group, None, o.oracle_cap)?;
            let (c, local) = exact_dist_number(bottom, None, o.oracle_cap)?;
            let chi = Coloring::new(transport(&g, &b, &local.colors)?, c, Trace::Given)?;
            let col = construct_small_bottom(&g, &b, &chi, &lambda_top)?;
            let bound = c.max(4) * ceil_root(d, m);
            Ok(Check::new(json!(col.color_count))
                .witness(coloring_json(&col))
                .bound(bound as f64)
                .require(stabilizer_of_coloring(&g, &col).is_trivial(), || "not distinguishing".into())
                .require(col.color_count <= bound, || format!("{} colors > {bound}", col.color_count)))
        }));
    }
    for e in corpus::large_bottom_instances() {
        items.push(item(e.name, "large_bottom", &e.spec, |g, o| {
            let g = perm(g, o)?;
            let b = large_blocks(&g)?;
            let data = block_action(&g, &b)?;
            let m = b.block_size;
            let l = linking_structure(&data.kernel, &b)?;
            let (d, lambda_top) = exact_dist_number(&data.top_group, None, o.oracle_cap)?;
            let col = construct_large_bottom(&g, &b, &l, &lambda_top)?;
            let bound = 3 * ceil_root(m, l.linking_factor) * ceil_root(d, m);
            Ok(Check::new(json!(col.color_count))
                .witness(json!({ "coloring": coloring_json(&col), "linking_factor": l.linking_factor }))
                .bound(bound as f64)
                .require(bottom_is_large(&data.block_stabilizer_images[0]), || "bottom is not large".into())
                .require(!data.kernel.is_trivial(), || "kernel on blocks is trivial".into())
                .require(stabilizer_of_coloring(&g, &col).is_trivial(), || "not distinguishing".into())
                .require(col.color_count <= bound, || format!("{} colors > {bound}", col.color_count)))
        }));
    }
    items
}

fn bottom_is_large(h: &PermGroup) -> bool {
    h.degree() >= 5 && h.contains_alternating()
}

/// The coarsest invariant system of consecutive blocks with a large bottom.
fn large_blocks(g: &PermGroup) -> Result<BlockSystem, CliError> {
    let n = g.degree();
    for m in (5..n).rev().filter(|m| n.is_multiple_of(*m)) {
        let b = BlockSystem::consecutive(m, n / m);
        if b.is_invariant_under(g) && bottom_is_large(&block_action(g, &b)?.block_stabilizer_images[0]) {
            return Ok(b);
        }
    }
    Err(CliError::Spec("no consecutive blocks with a large bottom".into()))
}

fn all_perm_entries() -> Vec<Entry> {
    let mut v = corpus::transitive();
    v.extend(corpus::primitive_non_alternating());
    v.extend(corpus::trivial_bottom_instances().into_iter().map(|(e, _, _)| e));
    v.extend(corpus::large_bottom_instances());
    v
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn bases() -> Vec<Item> {
    all_perm_entries()
        .into_iter()
        .map(|e| {
            item(e.name, "base_fundamentals", &e.spec, |g, o| {
                let g = perm(g, o)?;
                let n = g.degree();
                let exact = exact_min_base(&g);
                let greedy = greedy_base(&g);
                let b = exact.len();
                let reach = (n as u128).checked_pow(b as u32);
                let mut check = Check::new(json!(b))
                    .witness(json!({ "exact": exact.points, "greedy": greedy.points }))
                    .require(reach.is_none_or(|r| g.order() <= r), || format!("|G| > n^{b}"))
                    .require(is_base(&g, &exact.points, None)?, || "exact certificate is not a base".into())
                    .require(is_base(&g, &greedy.points, None)?, || "greedy certificate is not a base".into())
                    .require(greedy.len() >= b, || "greedy shorter than exact".into());
                if n <= 8 && b > 0 {
                    let mut shorter = false;
                    for s in subsets(n, b - 1) {
                        if g.pointwise_stabilizer(&s)?.is_trivial() {
                            shorter = true;
                            break;
                        }
                    }
                    check = check.require(!shorter, || format!("a base of size {} exists", b - 1));
                }
                Ok(check)
            })
        })
        .collect()
}

fn module(g: &Group, opts: &CampaignOptions) -> Result<ImprimitiveModule, CliError> {
    Ok(ImprimitiveModule::new(g.as_matrix()?, opts.point_cap)?)
}

fn triv_k1() -> Vec<Item> {
    use corpus::{permutation_module, sym};
    [
        ("Sym(3) over GF(2)", permutation_module(2, sym(3))),
        ("Sym(4) over GF(3)", permutation_module(3, sym(4))),
        ("Sym(4) over GF(2)", permutation_module(2, sym(4))),
    ]
    .into_iter()
    .map(|(name, c)| {
        item(name, "trivK1_base", &c.into(), |g, o| {
            let m = module(g, o)?;
            let cert = triv_k1_base(&m, o.oracle_cap)?;
            let exact = exact_min_base(&m.group);
            Ok(Check::new(json!(cert.len()))
                .witness(json!({ "vectors": cert.points, "exact": exact.points }))
                .require(m.group.pointwise_stabilizer(&cert.points)?.is_trivial(), || "not a base".into())
                .require(cert.len() == exact.len(), || {
                    format!("construction gives {}, exact minimum {}", cert.len(), exact.len())
                }))
        })
    })
    .collect()
}

fn bounded_k1() -> Vec<Item> {
    use corpus::{cyclic, monomial, permutation_module, sym};
    [
        ("GF(3)^x wr Sym(2)", monomial(3, sym(2), 2)),
        ("GF(5)^x wr Sym(3)", monomial(5, sym(3), 3)),
        ("GF(3)^x wr Sym(3)", monomial(3, sym(3), 3)),
        ("GF(5)^x wr C4", monomial(5, cyclic(4), 4)),
        ("Sym(4) over GF(3)", permutation_module(3, sym(4))),
    ]
    .into_iter()
    .map(|(name, c)| {
        item(name, "boundedK1_base", &c.into(), |g, o| {
            let m = module(g, o)?;
            let v1 = summand_base(&m);
            let r = bounded_k1_base(&m, &v1, o.oracle_cap)?;
            let (d, _) = exact_dist_number(&m.summand_action, None, o.oracle_cap)?;
            let limit = r.b + ceil_log(d as u128, m.summand_size() as u128);
            let len = r.certificate.len();
            Ok(Check::new(json!(len))
                .witness(json!({ "vectors": r.certificate.points, "b": r.b }))
                .bound(r.bound)
                .require(m.group.pointwise_stabilizer(&r.certificate.points)?.is_trivial(), || "not a base".into())
                .require(len as f64 <= r.bound, || format!("{len} > {}", r.bound))
                .require(len <= limit, || format!("{len} > b + log d(P) = {limit}")))
        })
    })
    .collect()
}

fn digit_vectors(colors: &[u32], p: u32, count: usize) -> Vec<Vec<u32>> {
    (0..count)
        .map(|s| colors.iter().map(|&c| (c as u64 / (p as u64).pow(s as u32) % p as u64) as u32).collect())
        .collect()
}

fn lemma_alt() -> Vec<Item> {
    use corpus::{sym, wreath};
    [(1usize, 3u32), (1, 7), (2, 2), (2, 3)]
        .into_iter()
        .map(|(t, p)| {
            let spec: GroupSpec = if t == 1 { sym(7) } else { wreath(sym(7), sym(2)) }.into();
            item(format!("k=7 t={t} p={p}"), "alt_induced_base", &spec, move |g, o| {
                let h = perm(g, o)?;
                let opts = Options {
                    oracle_cap: o.oracle_cap,
                    seed: o.seed,
                };
                let col = if h.degree() <= o.oracle_cap {
                    exact_dist_number(&h, None, o.oracle_cap)?.1
                } else {
                    distinguish_transitive(&h, &opts)?.coloring
                };
                let b_u = ceil_log(col.color_count as u128, p as u128);
                let base = alt_induced_base(&h, 7, p, &digit_vectors(&col.colors, p, b_u))?;
                let pipe = alt_induced_pipeline(&h, 7, p, &opts)?;
                Ok(Check::new(json!(base.len()))
                    .witness(json!({
                        "b_u": b_u,
                        "quotient": base.quotient,
                        "vectors": base.v_vectors,
                        "pipeline": pipe.achieved,
                    }))
                    .bound(pipe.bound)
                    .require(base.len() == 2 * b_u + 3, || format!("{} != 2 * {b_u} + 3", base.len()))
                    .require(base.residual_order == 1, || "residual stabilizer is nontrivial".into())
                    .require(pipe.base.residual_order == 1, || "pipeline base does not verify".into())
                    .require(pipe.within_bound, || format!("pipeline size {} > {}", pipe.achieved, pipe.bound)))
            })
        })
        .collect()
}

fn repeat() -> Vec<Item> {
    let mut items = Vec::new();
    for e in corpus::repeat_groups() {
        for l in 1..=3usize {
            items.push(item(format!("{} l={l}", e.name), "repeated_base", &e.spec, move |g, o| {
                let h = g.as_matrix()?;
                let r = repeated_module_base(h, l, o.point_cap)?;
                let (power, _) = as_permutation_group(&h.power(l)?, VectorDomain::All, o.point_cap)?;
                let exact = exact_min_base(&power).len();
                let formula = r.w_base_len.div_ceil(l);
                Ok(Check::new(json!(r.certificate.len()))
                    .witness(json!({ "vectors": r.vectors, "b_w": r.w_base_len, "exact": exact }))
                    .require(r.certificate.len() == formula, || format!("{} != ceil(b_W / l) = {formula}", r.certificate.len()))
                    .require(exact == formula, || format!("exact {exact} != ceil(b_W / l) = {formula}")))
            }));
        }
    }
    items
}

fn affine() -> Vec<Item> {
    corpus::affine_linear_parts()
        .into_iter()
        .map(|e| {
            item(e.name, "affine_base", &e.spec, |g, o| {
                let h = g.as_matrix()?;
                let full = affine_group(h, o.point_cap)?;
                let (linear, _) = as_permutation_group(h, VectorDomain::All, o.point_cap)?;
                let b_full = exact_min_base(&full);
                let b_lin = exact_min_base(&linear);
                Ok(Check::new(json!(b_full.len()))
                    .witness(json!({ "affine": b_full.points, "linear": b_lin.points }))
                    .require(full.order() == h.vector_count() * linear.order(), || "|V ⋊ H| != |V| |H|".into())
                    .require(b_full.len() == b_lin.len() + 1, || {
                        format!("b(V ⋊ H) = {} but b_V(H) + 1 = {}", b_full.len(), b_lin.len() + 1)
                    }))
            })
        })
        .collect()
}

pub fn items(name: &str) -> Result<Vec<Item>, CliError> {
    Ok(match name {
        "lemma21" => lemma21(),
        "thm12" => thm12(),
        "lemma_colors" => lemma_colors(),
        "seress_dolfi" => seress_dolfi(),
        "bases" => bases(),
        "trivK1" => triv_k1(),
        "thm_boundedK1" => bounded_k1(),
        "lemma_alt" => lemma_alt(),
        "repeat" => repeat(),
        "affine" => affine(),
        _ => return Err(CliError::UnknownCampaign(name.to_string())),
    })
}

/// Runs every item of a campaign in a worker pool; records come back
/// sorted by group id, then label.
pub fn run_campaign(name: &str, opts: &CampaignOptions) -> Result<Vec<ResultRecord>, CliError> {
    let items = items(name)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Spec(e.to_string()))?;
    let mut records: Vec<ResultRecord> = pool.install(|| items.par_iter().filter_map(|it| it.run(opts)).collect());
    records.sort_by(|a, b| (&a.group_id, &a.label).cmp(&(&b.group_id, &b.label)));
    Ok(records)
}
