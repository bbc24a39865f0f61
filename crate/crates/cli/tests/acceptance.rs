//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pgt::campaign::{run_campaign, CampaignOptions};
use pgt::corpus;
use pgt::{ResultRecord, Status};

struct Outcome {
    ok: bool,
    summary: String,
}

fn campaign(name: &str) -> Vec<ResultRecord> {
    run_campaign(name, &CampaignOptions::default()).unwrap_or_else(|e| panic!("campaign {name}: {e}"))
}

/// Every record passed, none skipped, and the expected number ran.
fn all_pass(records: &[ResultRecord], min_items: usize) -> Result<(), String> {
    if records.len() < min_items {
        return Err(format!("{} items, expected at least {min_items}", records.len()));
    }
    let bad: Vec<String> = records
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} [{:?}: {}]", r.label, r.status, r.detail.clone().unwrap_or_default()))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    match result {
        Ok(s) if elapsed <= limit => Outcome {
            ok: true,
            summary: format!("{s} in {:.1}s", elapsed.as_secs_f64()),
        },
        Ok(s) => Outcome {
            ok: false,
            summary: format!("{s} but took {:.1}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()),
        },
        Err(e) => Outcome {
            ok: false,
            summary: e,
        },
    }
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn degree(e: &corpus::Entry) -> usize {
    e.spec.resolve().unwrap().to_perm(1 << 20).unwrap().degree()
}

fn partition_bridge() -> Outcome {
    timed(minutes(10), || {
        let records = campaign("lemma21");
        let groups = corpus::transitive().iter().filter(|e| degree(e) <= 7).count();
        if groups < 20 {
            return Err(format!("only {groups} transitive groups of degree <= 7"));
        }
        all_pass(&records, 2 * groups)?;
        Ok(format!("{groups} groups x q in {{2,3}} agree"))
    })
}

fn dist_bounds() -> Outcome {
    timed(minutes(15), || {
        let entries = corpus::transitive();
        if entries.iter().any(|e| degree(e) > 10) {
            return Err("corpus group above degree 10".into());
        }
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        for (family, marker) in [
            ("Sym", "Sym("),
            ("Alt", "Alt("),
            ("cyclic", "C"),
            ("dihedral", "D"),
            ("wreath", " wr "),
            ("diagonal", " diag"),
        ] {
            if !names.iter().any(|n| if marker.len() == 1 { n.starts_with(marker) } else { n.contains(marker) }) {
                return Err(format!("no {family} group in the corpus"));
            }
        }
        let records = campaign("thm12");
        all_pass(&records, 30.max(entries.len()))?;
        Ok(format!("{} groups within |G|^(1/n) < d <= 48 |G|^(1/n)", records.len()))
    })
}

fn lemma_colors() -> Outcome {
    timed(minutes(10), || {
        let records = campaign("lemma_colors");
        all_pass(&records, 1)?;
        let kinds: BTreeSet<&str> = records.iter().map(|r| r.operation.as_str()).collect();
        for k in ["trivial_bottom", "small_bottom", "large_bottom"] {
            if !kinds.contains(k) {
                return Err(format!("no {k} instance ran"));
            }
        }
        Ok(format!("{} constructed colorings within their bounds", records.len()))
    })
}

fn seress_dolfi() -> Outcome {
    timed(minutes(5), || {
        let records = campaign("seress_dolfi");
        all_pass(&records, corpus::primitive_non_alternating().len())?;
        Ok(format!("{} primitive groups with d <= 4", records.len()))
    })
}

fn base_fundamentals() -> Outcome {
    timed(minutes(10), || {
        let records = campaign("bases");
        all_pass(&records, 60)?;
        Ok(format!("{} groups: |G| <= n^b, greedy >= exact, subset minimality", records.len()))
    })
}

fn imprimitive_modules() -> Outcome {
    timed(minutes(5), || {
        let triv = campaign("trivK1");
        all_pass(&triv, 3)?;
        let bounded = campaign("thm_boundedK1");
        all_pass(&bounded, 3)?;
        Ok(format!("{} exact matches, {} bounded constructions", triv.len(), bounded.len()))
    })
}

fn alternating_induced() -> Outcome {
    timed(minutes(20), || {
        let records = campaign("lemma_alt");
        all_pass(&records, 4)?;
        Ok("(7,1,3) (7,1,7) (7,2,2) (7,2,3) give 2b+3 and stay within 17 + 2 log|H|/log|V|".into())
    })
}

fn repeated_modules() -> Outcome {
    timed(minutes(5), || {
        let records = campaign("repeat");
        all_pass(&records, 15)?;
        Ok("5 groups x l in {1,2,3} match ceil(b_W / l)".into())
    })
}

fn affine_bridge() -> Outcome {
    timed(minutes(5), || {
        let records = campaign("affine");
        all_pass(&records, 10)?;
        Ok(format!("{} affine groups with b(V ⋊ H) = b_V(H) + 1", records.len()))
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("partition bridge", partition_bridge),
        ("distinguishing number bounds", dist_bounds),
        ("per-construction color counts", lemma_colors),
        ("primitive groups need at most 4 colors", seress_dolfi),
        ("base fundamentals", base_fundamentals),
        ("imprimitive module bases", imprimitive_modules),
        ("alternating-induced bases", alternating_induced),
        ("repeated modules", repeated_modules),
        ("affine bridge", affine_bridge),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {} ({name}): {}", i + 1, outcome.summary);
        if !outcome.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all 9 criteria passed");
        ExitCode::SUCCESS
    }
}
