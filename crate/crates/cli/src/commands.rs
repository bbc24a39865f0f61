//! Single-group operations producing one [`ResultRecord`] each.

use std::time::Instant;

use pgt_core::base::{base_on_partitions, base_on_partitions_direct, exact_min_base_mod, greedy_base_mod};
use pgt_core::blocks::smallest_nontrivial_blocks;
use pgt_core::distinguish::{distinguish_transitive, exact_dist_number, Options};
use pgt_core::PermGroup;
use serde_json::{json, Value};

use crate::record::{verify_witness, Cache, ResultRecord, Status};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Order,
    Base,
    Greedy,
    Dist,
    Blocks,
    Color,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Order => "order",
            Operation::Base => "base",
            Operation::Greedy => "greedy",
            Operation::Dist => "dist",
            Operation::Blocks => "blocks",
            Operation::Color => "color",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandOptions {
    pub oracle_cap: usize,
    pub point_cap: u128,
    /// Number of parts for the base on partitions (with `base`).
    pub q: Option<usize>,
    pub seed: u64,
}

impl Default for CommandOptions {
    fn default() -> Self {
        CommandOptions {
            oracle_cap: pgt_core::distinguish::DEFAULT_ORACLE_CAP,
            point_cap: pgt_core::gf::DEFAULT_POINT_CAP,
            q: None,
            seed: 0,
        }
    }
}

fn as_json_points(pts: &[usize]) -> Value {
    json!(pts)
}

pub fn run(
    op: Operation,
    g: &PermGroup,
    modulo: Option<&PermGroup>,
    group_id: &str,
    opts: &CommandOptions,
) -> Result<ResultRecord, CliError> {
    let start = Instant::now();
    let mut rec = ResultRecord::new(group_id, "", op.name());
    match op {
        Operation::Order => {
            rec.value = json!(g.order().to_string());
            rec.witness = as_json_points(&g.base());
        }
        Operation::Base => match opts.q {
            Some(q) => {
                rec.operation = "partition_base".into();
                let direct = base_on_partitions_direct(g, q, opts.point_cap)?;
                let formula = base_on_partitions(g, q, opts.oracle_cap)?;
                rec.value = json!(direct);
                rec.witness = json!({ "q": q, "formula": formula });
                if direct != formula {
                    rec.status = Status::Fail;
                    rec.detail = Some(format!("direct search gives {direct}, formula gives {formula}"));
                }
            }
            None => {
                let cert = exact_min_base_mod(g, modulo)?;
                rec.value = json!(cert.len());
                rec.witness = as_json_points(&cert.points);
            }
        },
        Operation::Greedy => {
            let cert = greedy_base_mod(g, modulo)?;
            rec.value = json!(cert.len());
            rec.witness = as_json_points(&cert.points);
        }
        Operation::Dist => {
            let (d, col) = exact_dist_number(g, modulo, opts.oracle_cap)?;
            rec.value = json!(d);
            rec.witness = json!(col.colors);
        }
        Operation::Blocks => match smallest_nontrivial_blocks(g)? {
            Some(b) => {
                rec.value = json!(b.block_size);
                rec.witness = json!(b.blocks);
            }
            None => rec.value = json!(g.degree()),
        },
        Operation::Color => {
            let report = distinguish_transitive(
                g,
                &Options {
                    oracle_cap: opts.oracle_cap,
                    seed: opts.seed,
                },
            )?;
            rec.value = json!(report.coloring.color_count);
            rec.witness = json!(report.coloring.colors);
            rec.bound_checked = true;
            rec.bound_value = Some(report.bound);
            if !report.within_bound {
                rec.status = Status::Fail;
                rec.detail = Some("coloring exceeds 48 |G|^(1/n)".into());
            }
        }
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(rec)
}

fn cache_key(op: Operation, group_id: &str, modulo: Option<&PermGroup>, opts: &CommandOptions) -> String {
    let modulo_id = modulo.map_or_else(|| "none".to_string(), |n| crate::Group::Perm(n.clone()).id());
    format!(
        "{group_id}-{}-{modulo_id}-q{}-s{}-c{}",
        op.name(),
        opts.q.unwrap_or(0),
        opts.seed,
        opts.oracle_cap
    )
}

/// [`run`] through the cache; cached records are used only after their
/// witness re-verifies.
pub fn run_cached(
    op: Operation,
    g: &PermGroup,
    modulo: Option<&PermGroup>,
    group_id: &str,
    opts: &CommandOptions,
    cache: &Cache,
) -> Result<ResultRecord, CliError> {
    let key = cache_key(op, group_id, modulo, opts);
    let checkable = opts.q.is_none() || op != Operation::Base;
    if checkable {
        if let Some(hit) = cache.load(&key) {
            if hit.group_id == group_id && verify_witness(&hit, g, modulo) {
                return Ok(hit);
            }
        }
    }
    let rec = run(op, g, modulo, group_id, opts)?;
    if checkable {
        // a cache that cannot be written only costs recomputation
        let _ = cache.store(&key, &rec);
    }
    Ok(rec)
}
