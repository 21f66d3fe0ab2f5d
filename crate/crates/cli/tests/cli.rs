use std::collections::{HashMap, HashSet};
use std::process::{Command, Output};

use proptest::prelude::*;

use perfcode_cli::dsl::{Atom, GroupSpec};
use perfcode_cli::record::VerdictRecord;

fn perfcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<VerdictRecord> {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("record parses"))
        .collect()
}

fn atom() -> impl Strategy<Value = Atom> {
    let n = 1u64..40;
    prop_oneof![
        n.clone().prop_map(Atom::Sym),
        n.clone().prop_map(Atom::Alt),
        n.clone().prop_map(Atom::Cyclic),
        n.clone().prop_map(Atom::Dihedral),
        n.clone().prop_map(Atom::Quaternion),
        n.clone().prop_map(Atom::Semidihedral),
        n.clone().prop_map(Atom::Modular),
        (n.clone(), n.clone()).prop_map(|(p, k)| Atom::Elemab { p, k }),
        n.clone().prop_map(Atom::Psl2),
        n.clone().prop_map(Atom::Pgl2),
        n.clone().prop_map(Atom::Sl2),
        n.clone().prop_map(Atom::Gl2),
        n.clone().prop_map(Atom::Psigmal2),
        n.clone().prop_map(Atom::Pgammal2),
        (n.clone(), 0u64..5).prop_map(|(q, k)| Atom::Ext { q, k }),
        n.clone().prop_map(Atom::Agl1),
        n.prop_map(Atom::Agl2),
        Just(Atom::M10),
    ]
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    atom()
        .prop_map(GroupSpec::Atom)
        .prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| GroupSpec::Direct(Box::new(a), Box::new(b))),
                (inner, 2u64..5).prop_map(|(a, t)| GroupSpec::Wreath(Box::new(a), t)),
            ]
        })
}

proptest! {
    #[test]
    fn dsl_round_trip(t in spec()) {
        let printed = t.to_string();
        let parsed: GroupSpec = printed.parse().unwrap();
        prop_assert_eq!(&parsed, &t);
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn dsl_accepts_extra_whitespace_and_parens(t in spec()) {
        let loose = format!(" ( {} ) ", t.to_string().replace(' ', "   "));
        let parsed: GroupSpec = loose.parse().unwrap();
        prop_assert_eq!(parsed.to_string(), t.to_string());
    }
}

#[test]
fn spec_examples() {
    let r = records(&perfcode(&[
        "check",
        "--group",
        "psl2:23",
        "--subgroup",
        "maximal:d-1",
    ]));
    assert_eq!(r.len(), 1);
    assert!(!r[0].is_perfect_code);

    let r = records(&perfcode(&[
        "check",
        "--group",
        "pgl2:9",
        "--subgroup",
        "all-maximal",
    ]));
    assert!(!r.is_empty() && r.iter().all(|x| x.is_perfect_code));

    let r = records(&perfcode(&[
        "check",
        "--group",
        "cyclic:4",
        "--subgroup",
        "sylow2",
    ]));
    assert!(r[0].is_perfect_code && r[0].subgroup_order == 4);

    let r = records(&perfcode(&["survey", "--group", "elemab:2^3"]));
    assert_eq!(r.len(), 16);
    assert!(r.iter().all(|x| x.is_perfect_code));

    // quaternion:16: only the trivial group and the whole group
    let r = records(&perfcode(&["survey", "--group", "quaternion:16"]));
    let yes: Vec<usize> = r
        .iter()
        .filter(|x| x.is_perfect_code)
        .map(|x| x.subgroup_order)
        .collect();
    assert_eq!(yes, vec![1, 16]);
    assert!(r
        .iter()
        .all(|x| x.trace.last() == Some(&format!("oracle={}", x.is_perfect_code))));
}

#[test]
fn json_is_deterministic_across_runs_and_jobs() {
    let args = [
        "check",
        "--group",
        "psl2:7",
        "--subgroup",
        "all",
        "--method",
        "transversal",
    ];
    let a = perfcode(&args);
    let b = perfcode(&args);
    let one = perfcode(&[&args[..], &["--jobs", "1"]].concat());
    let four = perfcode(&[&args[..], &["--jobs", "4"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, one.stdout);
    assert_eq!(a.stdout, four.stdout);
    assert_eq!(records(&a).len(), 179);
}

#[test]
fn exit_codes() {
    assert_eq!(
        perfcode(&["check", "--group", "sym:3 x", "--subgroup", "all"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        perfcode(&["check", "--group", "sym:4", "--subgroup", "maximal:"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        perfcode(&[
            "check",
            "--group",
            "sym:6",
            "--subgroup",
            "all",
            "--max-order",
            "100"
        ])
        .status
        .code(),
        Some(3)
    );
    let out = perfcode(&[
        "check",
        "--group",
        "sl2:5",
        "--subgroup",
        "all",
        "--method",
        "transversal",
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = perfcode(&[
        "check",
        "--group",
        "psl2:7",
        "--subgroup",
        "all",
        "--seedless",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        perfcode(&["experiment", "no-such-experiment"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn every_method_agrees_through_the_binary() {
    let mut seen: Option<Vec<bool>> = None;
    for m in [
        "auto",
        "elementwise",
        "doublecoset",
        "transversal",
        "sylow",
        "oracle",
    ] {
        let r = records(&perfcode(&[
            "check",
            "--group",
            "sym:4 x cyclic:2",
            "--subgroup",
            "all",
            "--method",
            m,
        ]));
        let v: Vec<bool> = r.iter().map(|x| x.is_perfect_code).collect();
        match &seen {
            Some(s) => assert_eq!(s, &v, "{m}"),
            None => seen = Some(v),
        }
    }
}

#[test]
fn cache_hits_are_revalidated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let args = [
        "check",
        "--group",
        "sym:4",
        "--subgroup",
        "all",
        "--method",
        "transversal",
        "--cache",
        p,
    ];
    let first = perfcode(&args);
    assert!(String::from_utf8_lossy(&first.stderr).contains("0 hits"));
    let second = perfcode(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("30 hits, 0 misses, 0 rejected"));

    // corrupt every stored transversal: swap in the identity twice
    let text = std::fs::read_to_string(&path).unwrap();
    let mut tampered = String::new();
    let mut changed = 0;
    for line in text.lines() {
        let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
        let ev = &mut v["record"]["evidence"];
        if ev["kind"] == "transversal" && ev["elements"].as_array().unwrap().len() > 1 {
            ev["elements"][1] = serde_json::json!(0);
            changed += 1;
        }
        tampered.push_str(&serde_json::to_string(&v).unwrap());
        tampered.push('\n');
    }
    assert!(changed > 0);
    std::fs::write(&path, tampered).unwrap();
    let third = perfcode(&args);
    assert_eq!(first.stdout, third.stdout);
    let err = String::from_utf8_lossy(&third.stderr);
    assert!(err.contains(&format!("{changed} rejected")), "{err}");
}

#[test]
fn emitted_graph_has_the_subgroup_as_perfect_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.txt");
    let out = perfcode(&[
        "oracle",
        "--group",
        "psl2:7",
        "--subgroup",
        "maximal:s4",
        "--emit-graph",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let edges: Vec<(u32, u32)> = std::fs::read_to_string(&path)
        .unwrap()
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse::<u32>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    let mut adj: HashMap<u32, HashSet<u32>> = HashMap::new();
    for &(u, v) in &edges {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    // rebuild H from the record to check the code independently of the engine
    let r = records(&perfcode(&[
        "check",
        "--group",
        "psl2:7",
        "--subgroup",
        "maximal:s4",
        "--method",
        "elementwise",
    ]));
    let b = "psl2:7".parse::<GroupSpec>().unwrap().build().unwrap();
    let perms: Vec<perfcode::Permutation> = r[0]
        .subgroup_generators
        .iter()
        .map(|g| perfcode::Permutation::from_images(g.clone()).unwrap())
        .collect();
    let h = perfcode::Subgroup::from_permutations(&b.group, &perms).unwrap();
    let code: HashSet<u32> = h.members().iter().copied().collect();
    assert_eq!(code.len(), 24);
    for v in 0..168u32 {
        let nbrs = adj.get(&v).cloned().unwrap_or_default();
        let hits = nbrs.iter().filter(|w| code.contains(w)).count();
        if code.contains(&v) {
            assert_eq!(hits, 0, "code vertex {v} has a code neighbour");
        } else {
            assert_eq!(hits, 1, "vertex {v} sees {hits} code vertices");
        }
    }
}

#[test]
fn whole_group_has_empty_connection_set() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.txt");
    let out = perfcode(&[
        "oracle",
        "--group",
        "cyclic:4",
        "--subgroup",
        "sylow2",
        "--emit-graph",
        path.to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("|H| = 4") && text.contains("degree 0"),
        "{text}"
    );
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "");
}

#[test]
fn tables_report_matches() {
    let out = perfcode(&["tables", "--q", "5,7,8,9,11,13"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("MISMATCH"));
    assert!(text.contains("| PSL2(13) | d-1 | 12 | 12 | C2^2 | C2^2 |"));
    assert!(text.contains("| PGL2(7) | d+1 | 16 | 16 | D16 | D16 |"));
    assert!(text.contains("| PSL2(5) | borel | 10 | 10 | C2 | C2 |"));
}
