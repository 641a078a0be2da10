use std::process::{Command, Output};

use serde_json::Value;
use spine::homology::{abelian_invariants, abelianization_order};
use spine::presentations::{build_family, FamilySpec};
use spine::whitehead::{face_census, is_planar, planar_embedding, whitehead_graph};

fn spine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spine")).args(args).env_remove("SPINE_MAX_COSETS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = spine(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn bad_family_is_a_usage_error() {
    let o = spine(&["family", "G:0,1,4,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k, l >= 1"));
    assert_eq!(spine(&["family", "Q:1"]).status.code(), Some(2));
    assert_eq!(spine(&["certify", "1", "1"]).status.code(), Some(2));
    assert_eq!(spine(&["resultant", "1,x", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn family_listing() {
    let o = spine(&["family", "H:3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with('r')).count(), 4);
    assert!(text.contains("x0 x1 x2"));

    let o = spine(&["family", "G:5,2,12,0"]);
    let first = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(first.contains("x0^2 x1^5 x2^-2"), "{first}");
}

#[test]
fn family_json_matches_library() {
    let (code, v) = json(&["family", "G:3,1,4,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let p = build_family(FamilySpec::G { k: 3, l: 1, n: 4, f: 1 }).unwrap();
    assert_eq!(v["relators"], serde_json::to_value(p.relators()).unwrap());
}

#[test]
fn whitehead_reports() {
    let o = spine(&["whitehead", "F:1,1,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("non-planar"));

    let (_, v) = json(&["whitehead", "F:1,1,6", "--census"]);
    assert_eq!(v["planar"], true);
    assert_eq!(v["pattern"], "II.11");
    let g = whitehead_graph(&build_family(FamilySpec::F { k: 1, l: 1, n: 6 }).unwrap());
    let census = face_census(&planar_embedding(&g).unwrap()).unwrap();
    let total: u64 = v["census"].as_object().unwrap().values().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total as usize, census.face_count());
    assert_eq!(v["edges"].as_array().unwrap().len(), g.edges().len());

    let dot = stdout(&spine(&["whitehead", "H:3,4", "--dot"]));
    assert!(dot.starts_with("graph") && dot.contains("--"), "{dot}");
}

#[test]
fn abelian_json_matches_library() {
    for spec in ["G:2,1,4,0", "G:2,1,4,2", "H:3,4", "G:4,1,4,1", "F:1,1,7"] {
        let (code, v) = json(&["abelian", spec]);
        assert_eq!(code, 0, "{spec}");
        let p = build_family(spec.parse().unwrap()).unwrap();
        let inv = abelian_invariants(&p);
        let torsion: Vec<String> = inv.torsion.iter().map(|d| d.to_string()).collect();
        assert_eq!(v["torsion"], serde_json::to_value(&torsion).unwrap(), "{spec}");
        assert_eq!(v["free_rank"], inv.free_rank, "{spec}");
        assert_eq!(v["order"], abelianization_order(&p).to_string(), "{spec}");
    }
}

#[test]
fn resultant_and_lemma() {
    let (_, v) = json(&["resultant", "1,1,-1", "--n", "4", "--split"]);
    assert_eq!(v["resultant"], "5");
    assert_eq!(v["split"]["minus"], "1");
    assert_eq!(v["split"]["plus"], "5");
    let o = spine(&["lemma42", "2", "1", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, v) = json(&["lemma42", "2", "1", "4"]);
    assert_eq!(v["direct_f0_plus"], "8");
    assert_eq!(v["distinguishes"], true);
}

#[test]
fn certify_spine() {
    let o = spine(&["certify", "1", "1", "6", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("II.11"));
    assert!(text.contains("chi = 0"));
    assert!(text.contains("verdict: spine"));
}

#[test]
fn certify_obstruction() {
    let (code, v) = json(&["certify", "4", "1", "4", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "not a spine");
    let stage = v["stages"].as_array().unwrap().iter().find(|s| s["name"] == "obstruction").unwrap();
    assert_eq!(stage["status"], "pass");
    assert_eq!(stage["value"], 2);
}

#[test]
fn certify_enumerates_odd_n() {
    let o = spine(&["certify", "3", "1", "3", "0", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("order 3528"), "{text}");
    let g = whitehead_graph(&build_family(FamilySpec::G { k: 3, l: 1, n: 3, f: 0 }).unwrap());
    let (_, v) = json(&["certify", "3", "1", "3", "0"]);
    assert_eq!(v["stages"][0]["value"]["generic"], is_planar(&g));
}

#[test]
fn enumerate_command() {
    let (code, v) = json(&["enumerate", "F:1,1,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], "8");
    let (_, v) = json(&["enumerate", "E:3,1,3,0"]);
    assert_eq!(v["order"], "10584");
    let (_, v) = json(&["enumerate", "H:2,4", "--max-cosets", "500"]);
    assert_eq!(v["outcome"], "EXCEEDED");
    let o = Command::new(env!("CARGO_BIN_EXE_spine"))
        .args(["--json", "enumerate", "H:2,4"])
        .env("SPINE_MAX_COSETS", "300")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_cosets"], 300);
    assert_eq!(spine(&["enumerate", "F:1,1,3", "--strategy", "bogus"]).status.code(), Some(2));
}

#[test]
fn scheme_build_and_verify() {
    let dir = std::env::temp_dir().join(format!("spine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("scheme.json");
    let cert = dir.join("cert.json");
    let file_s = file.to_str().unwrap();
    assert_eq!(spine(&["scheme", "build", "G:2,1,4,0", "--out", file_s]).status.code(), Some(0));
    let o = spine(&["scheme", "verify", file_s, "--spec", "G:2,1,4,0", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["passed"], true);
    assert_eq!(c["euler_characteristic"], 0);
    assert_eq!(c["cells"]["E"], 4);
    let o = spine(&["scheme", "verify", file_s, "--spec", "G:2,1,4,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(spine(&["scheme", "build", "G:4,1,4,1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn heegaard_command() {
    let (code, v) = json(&["heegaard", "3", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["lens_space"], true);
}

#[test]
fn sweep_csv() {
    let o = spine(&["sweep", "--k", "2", "--l", "1", "--n", "4", "--f", "0,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("k,l,n,f,"));
    assert!(lines[1].starts_with("2,1,4,0,") && lines[1].ends_with("spine,true"));
    assert!(lines[2].starts_with("2,1,4,2,"));
}
