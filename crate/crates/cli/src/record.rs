//! Result records, witness re-verification and the on-disk cache.

use std::path::PathBuf;

use pgt_core::base::is_base;
use pgt_core::distinguish::{stabilizer_of_coloring, Trace};
use pgt_core::{BlockSystem, Coloring, PermGroup};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub group_id: String,
    #[serde(default)]
    pub label: String,
    pub operation: String,
    pub value: Value,
    pub witness: Value,
    pub bound_checked: bool,
    pub bound_value: Option<f64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl ResultRecord {
    pub fn new(group_id: &str, label: &str, operation: &str) -> Self {
        ResultRecord {
            group_id: group_id.to_string(),
            label: label.to_string(),
            operation: operation.to_string(),
            value: Value::Null,
            witness: Value::Null,
            bound_checked: false,
            bound_value: None,
            status: Status::Pass,
            detail: None,
            elapsed_ms: 0,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.status == Status::Fail
    }
}

fn points(v: &Value) -> Option<Vec<usize>> {
    v.as_array()?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize))
        .collect()
}

/// Re-checks the witness of a record against the group it claims to be about.
pub fn verify_witness(rec: &ResultRecord, g: &PermGroup, modulo: Option<&PermGroup>) -> bool {
    match rec.operation.as_str() {
        "order" => rec.value.as_str() == Some(g.order().to_string().as_str()),
        "base" | "greedy" => {
            let Some(pts) = points(&rec.witness) else { return false };
            rec.value.as_u64() == Some(pts.len() as u64)
                && pts.iter().all(|&x| x < g.degree())
                && is_base(g, &pts, modulo).unwrap_or(false)
        }
        "dist" | "color" => {
            let (Some(colors), Some(count)) = (points(&rec.witness), rec.value.as_u64()) else {
                return false;
            };
            let colors: Vec<u32> = colors.into_iter().map(|c| c as u32).collect();
            if colors.len() != g.degree() {
                return false;
            }
            let Ok(col) = Coloring::new(colors, count as usize, Trace::Given) else {
                return false;
            };
            let stab = stabilizer_of_coloring(g, &col);
            match (rec.operation.as_str(), modulo) {
                ("dist", Some(n)) => stab.is_subgroup_of(n),
                _ => stab.is_trivial(),
            }
        }
        "blocks" => match &rec.witness {
            Value::Null => pgt_core::blocks::is_primitive(g).unwrap_or(false) || g.degree() <= 1,
            w => {
                let Some(blocks) = w
                    .as_array()
                    .and_then(|bs| bs.iter().map(points).collect::<Option<Vec<_>>>())
                else {
                    return false;
                };
                BlockSystem::from_blocks(g.degree(), blocks)
                    .map(|b| b.is_invariant_under(g))
                    .unwrap_or(false)
            }
        },
        _ => false,
    }
}

/// JSON records keyed by group, operation and parameters, stored one per
/// file under `PGT_CACHE_DIR` (default: `pgt-cache` in the temp dir).
#[derive(Clone, Debug)]
pub struct Cache {
    pub dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Self {
        let dir = std::env::var_os("PGT_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("pgt-cache"));
        Cache { dir }
    }

    fn path(&self, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}.json"))
    }

    pub fn load(&self, key: &str) -> Option<ResultRecord> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, rec: &ResultRecord) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let text = serde_json::to_string(rec).map_err(std::io::Error::other)?;
        std::fs::write(self.path(key), text)
    }
}
