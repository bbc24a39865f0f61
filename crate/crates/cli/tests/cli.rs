use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;
use std::process::Command;

use pgt::commands::{run, run_cached, CommandOptions, Operation};
use pgt::corpus;
use pgt::record::{verify_witness, Cache};
use pgt::{parse_group, parse_spec, CliError, Group, GroupSpec};

fn elements(gens: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn perm_generators(g: &Group) -> (usize, Vec<Vec<usize>>) {
    let p = g.to_perm(1 << 20).unwrap();
    let gens = p
        .generators()
        .iter()
        .map(|x| x.images().iter().map(|&i| i as usize).collect())
        .collect();
    (p.degree(), gens)
}

/// Smallest c admitting a coloring fixed only by the identity.
fn brute_dist(gens: &[Vec<usize>], n: usize) -> usize {
    let elts = elements(gens, n);
    for c in 1..=n {
        let total = c.pow(n as u32);
        for code in 0..total {
            let col: Vec<usize> = (0..n).map(|i| code / c.pow(i as u32) % c).collect();
            let fixed = elts
                .iter()
                .filter(|g| (0..n).all(|i| col[g[i]] == col[i]))
                .count();
            if fixed == 1 {
                return c;
            }
        }
    }
    n
}

fn matrix_group_order(p: u32, gens: &[Vec<Vec<u32>>]) -> usize {
    let dim = gens[0].len();
    let id: Vec<Vec<u32>> = (0..dim).map(|i| (0..dim).map(|j| u32::from(i == j)).collect()).collect();
    let mul = |a: &Vec<Vec<u32>>, b: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| (0..dim).map(|k| a[i][k] * b[k][j]).sum::<u32>() % p).collect())
            .collect()
    };
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn order(g: &Group) -> u128 {
    g.to_perm(1 << 20).unwrap().order()
}

#[test]
fn parses_documented_examples() {
    let c3 = parse_group(r#"{"kind":"perm","degree":3,"generators":[[1,2,0]]}"#).unwrap();
    assert_eq!(order(&c3), 3);

    let wr = parse_group(
        r#"{"kind":"constructor","name":"wreath","inner":{"name":"sym","n":2},"top":{"name":"sym","n":3}}"#,
    )
    .unwrap();
    assert_eq!(wr.to_perm(1 << 20).unwrap().degree(), 6);
    assert_eq!(order(&wr), 48);

    let doc = r#"{"kind":"matrix","p":3,"dim":2,"generators":[[[0,1],[1,0]],[[2,0],[0,1]]]}"#;
    let m = parse_group(doc).unwrap();
    assert_eq!(m.as_matrix().unwrap().dim, 2);
    assert_eq!(order(&m), 8);
    assert_eq!(matrix_group_order(3, &[vec![vec![0, 1], vec![1, 0]], vec![vec![2, 0], vec![0, 1]]]), 8);
}

#[test]
fn rejects_bad_documents() {
    let bad = [
        r#"{"kind":"perm","degree":3,"generators":[[0,0,1]]}"#,
        r#"{"kind":"perm","degree":3,"generators":[[0,1,3]]}"#,
        r#"{"kind":"matrix","p":4,"dim":1,"generators":[[[1]]]}"#,
        r#"{"kind":"matrix","p":3,"dim":2,"generators":[[[1,1],[1,1]]]}"#,
        r#"{"kind":"perm","degree":3}"#,
        r#"{"kind":"constructor","name":"no_such_group"}"#,
    ];
    for doc in bad {
        assert!(parse_group(doc).is_err(), "{doc}");
    }
    assert!(matches!(parse_group("/nonexistent/group.json"), Err(CliError::Io(_))));
}

#[test]
fn specs_round_trip() {
    let mut specs: Vec<GroupSpec> = corpus::transitive().into_iter().map(|e| e.spec).collect();
    specs.extend(corpus::affine_linear_parts().into_iter().map(|e| e.spec));
    specs.push(GroupSpec::Matrix {
        p: 3,
        dim: 2,
        generators: vec![vec![vec![0, 1], vec![1, 0]]],
        decomposition: None,
    });
    for spec in specs {
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(parse_spec(&text).unwrap(), spec, "{text}");
    }
}

#[test]
fn group_id_ignores_generator_order() {
    let a = parse_group(r#"{"kind":"perm","degree":4,"generators":[[1,0,2,3],[1,2,3,0]]}"#).unwrap();
    let b = parse_group(r#"{"kind":"perm","degree":4,"generators":[[1,2,3,0],[1,0,2,3],[1,0,2,3]]}"#).unwrap();
    let c = parse_group(r#"{"kind":"perm","degree":4,"generators":[[1,2,3,0]]}"#).unwrap();
    assert_eq!(a.id(), b.id());
    assert_ne!(a.id(), c.id());
}

#[test]
fn corpus_is_transitive_with_correct_orders() {
    for e in corpus::transitive() {
        let g = e.spec.resolve().unwrap();
        let (n, gens) = perm_generators(&g);
        assert!(g.to_perm(1 << 20).unwrap().is_transitive(), "{}", e.name);
        if n <= 7 {
            assert_eq!(elements(&gens, n).len() as u128, order(&g), "{}", e.name);
        }
    }
    let fano = Group::Perm(corpus::fano().resolve().unwrap().to_perm(1 << 20).unwrap());
    assert_eq!(order(&fano), 168);
}

#[test]
fn frozen_distinguishing_numbers() {
    // values confirmed by `brute_dist` below
    let frozen = [
        ("Sym(4)", 4),
        ("Alt(4)", 3),
        ("C4", 2),
        ("D4", 3),
        ("V4", 2),
        ("D5", 3),
        ("AGL(1,5)", 3),
        ("D6", 2),
        ("Sym(3) wr Sym(2)", 4),
        ("PSL(2,5)", 3),
        ("Sym(4) on pairs", 3),
        ("PSL(3,2)", 4),
    ];
    let entries = corpus::transitive();
    for (name, d) in frozen {
        let e = entries.iter().find(|e| e.name == name).unwrap();
        let g = e.spec.resolve().unwrap();
        let (n, gens) = perm_generators(&g);
        assert_eq!(brute_dist(&gens, n), d, "brute {name}");
        let rec = run(Operation::Dist, &g.to_perm(1 << 20).unwrap(), None, &g.id(), &CommandOptions::default()).unwrap();
        assert_eq!(rec.value, serde_json::json!(d), "{name}");
    }
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pgt-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn cache_hits_are_reverified() {
    let cache = Cache {
        dir: scratch_dir("cache"),
    };
    let g = corpus::sym(4).resolve().unwrap();
    let p = g.to_perm(1 << 20).unwrap();
    let opts = CommandOptions::default();
    let first = run_cached(Operation::Base, &p, None, &g.id(), &opts, &cache).unwrap();
    assert_eq!(first.value, serde_json::json!(3));

    let files: Vec<PathBuf> = std::fs::read_dir(&cache.dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let mut forged = first.clone();
    forged.value = serde_json::json!(1);
    forged.witness = serde_json::json!([0]);
    assert!(!verify_witness(&forged, &p, None));
    std::fs::write(&files[0], serde_json::to_string(&forged).unwrap()).unwrap();

    let second = run_cached(Operation::Base, &p, None, &g.id(), &opts, &cache).unwrap();
    assert_eq!(second.value, serde_json::json!(3));
    assert!(verify_witness(&second, &p, None));
    let _ = std::fs::remove_dir_all(&cache.dir);
}

fn pgt(args: &[&str], cache: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pgt"))
        .args(args)
        .env("PGT_CACHE_DIR", scratch_dir(cache))
        .output()
        .unwrap()
}

#[test]
fn binary_emits_json_lines() {
    let out = pgt(&["order", "--group", r#"{"kind":"constructor","name":"dihedral","n":5}"#], "bin-order");
    assert!(out.status.success());
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["value"], "10");
    assert_eq!(rec["status"], "pass");

    let out = pgt(
        &["base", "--group", r#"{"kind":"constructor","name":"sym","n":5}"#, "--q", "2"],
        "bin-q",
    );
    assert!(out.status.success());
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["operation"], "partition_base");
    assert_eq!(rec["value"], 3);

    let out = pgt(&["dist", "--group", r#"{"kind":"perm","degree":2,"generators":[[0,0]]}"#], "bin-bad");
    assert_eq!(out.status.code(), Some(2));

    let out = pgt(&["campaign", "nope"], "bin-campaign");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_campaign_through_binary() {
    let out = pgt(&["campaign", "seress_dolfi", "--jobs", "2"], "bin-sd");
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), corpus::primitive_non_alternating().len());
    let ids: Vec<&str> = lines.iter().map(|r| r["group_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(lines.iter().all(|r| r["status"] == "pass" && r["value"].as_u64().unwrap() <= 4));
}
