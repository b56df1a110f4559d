use std::process::{Command, Output};

use pjl::json::{tree_from_json, tree_to_json};
use pjl::verify::{brute_member, run_suite, SuiteParams};
use pjl_core::intersection::{pick_generic_xi, random_monic_corpus};
use pjl_core::rational::int;
use pjl_core::tree::{expand_adaptive, ExpandOptions};
use serde_json::Value;

fn pjl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pjl")).args(args).env_remove("PJL_SEED").output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn tree_json_round_trip() {
    for (k, f) in random_monic_corpus(11, 12, 4, 3, 4).into_iter().enumerate() {
        let xi = pick_generic_xi(&f, k as u64).unwrap().xi;
        let t = expand_adaptive(&f, &xi, &ExpandOptions::new(int(2))).unwrap();
        let doc = tree_to_json(&t);
        let back = tree_from_json(&doc).unwrap();
        assert_eq!(back.split_formula(), t.split_formula(), "{f}");
        assert_eq!(back.nodes.len(), t.nodes.len());
        assert_eq!(tree_to_json(&back), doc, "{f}");
    }
}

#[test]
fn tree_subcommand_reads_expand_output() {
    let dir = std::env::temp_dir().join(format!("pjl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tree.json");
    let o = pjl(&["expand", "y^3 - x*y + x^2", "--xi", "5", "--json"]);
    assert!(o.status.success());
    std::fs::write(&path, &o.stdout).unwrap();
    let expanded = stdout_json(&o);

    let o = pjl(&["tree", path.to_str().unwrap(), "--g", "y^2 + x", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let re = stdout_json(&o);
    assert_eq!(re["split_formula"], expanded["split_formula"]);
    assert_eq!(re["nodes"], expanded["nodes"]);
    let kinds: Vec<&str> =
        re["classification"].as_array().unwrap().iter().map(|c| c["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["major", "major"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn documents_carry_schema_and_kind() {
    let o = pjl(&["expand", "y^2 - x", "--xi", "1", "--json"]);
    let v = stdout_json(&o);
    assert_eq!(v["schema"], "pjl/1");
    assert_eq!(v["kind"], "root_tree");
    assert_eq!(v["split_formula"], "1");
    let o = pjl(&["caselab", "analyze", "--case", "99x66", "--no-obstruction", "--json"]);
    let v = stdout_json(&o);
    assert_eq!(v["kind"], "case_verdict");
    assert_eq!(v["arithmetic_survivors"].as_array().unwrap().len(), 1);
}

#[test]
fn intersect_routes_agree() {
    let o = pjl(&["intersect", "y^3 - x*y + x^2", "y^2 + x", "--xi", "5", "--json"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["i_f_g"]["values"]["resultant"], "4");
    assert_eq!(v["i_f_g"]["values"]["root_orders"], "4");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| pjl(args).status.code().unwrap();
    assert_eq!(code(&["caselab", "analyze", "--case", "75x50"]), 1);
    assert_eq!(code(&["caselab", "analyze", "--case", "99x66"]), 1);
    assert_eq!(code(&["caselab", "analyze", "--case", "99x66", "--no-obstruction"]), 0);
    assert_eq!(code(&["caselab", "analyze", "--case", "64x48"]), 2);
    assert_eq!(code(&["caselab", "list"]), 0);
    assert_eq!(code(&["verify", "no-such-suite"]), 2);
    assert_eq!(code(&["verify", "caselab"]), 0);
    assert_eq!(code(&["expand", "x*y^2 - 1"]), 2);
    assert_eq!(code(&["expand", "y^2 - x +"]), 2);
    assert_eq!(code(&["expand", "y^4 + x^2*y^2", "--xi", "1", "--cutoff", "1/2"]), 2);
    assert_eq!(code(&["expand", "y^2 - x", "--cutoff", "-1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn seed_from_environment() {
    let xi = |o: Output| stdout_json(&o)["xi"].clone();
    let by_flag = xi(pjl(&["expand", "y^2 - x", "--seed", "42", "--json"]));
    let by_env = xi(Command::new(env!("CARGO_BIN_EXE_pjl"))
        .args(["expand", "y^2 - x", "--json"])
        .env("PJL_SEED", "42")
        .output()
        .unwrap());
    assert_eq!(by_flag, by_env);
    let again = xi(pjl(&["expand", "y^2 - x", "--seed", "42", "--json"]));
    assert_eq!(by_flag, again);
}

#[test]
fn semigroup_and_ode_commands() {
    let o = pjl(&["semigroup", "6", "4", "--member", "9"]);
    assert!(o.status.success());
    let o = pjl(&["semigroup", "6", "4", "--member", "10", "--json"]);
    assert_eq!(stdout_json(&o)["member"], true);
    let o = pjl(&["ode", "pi^2 - 1", "--l", "2", "--c", "2", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn small_suites_pass() {
    for s in ["membership", "semigroup-lemma", "ode", "caselab"] {
        let r = run_suite(s, &SuiteParams { count: Some(5), ..SuiteParams::new(3) }).unwrap();
        assert!(r.ok(), "{}", r.summary());
    }
    assert!(brute_member(10, &[4, 6]) && !brute_member(9, &[4, 6]));
}
