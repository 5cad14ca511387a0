use std::process::{Command, Output};

use serde_json::Value;

fn vagroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vagroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = vagroup(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn catalog_list_has_every_entry() {
    let v = json(&["catalog", "list"]);
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 22);
    assert_eq!(names[0], "p1");
    assert!(names.contains(&"swap-pair-g2"));
}

#[test]
fn fingerprint_fields() {
    let v = json(&["fingerprint", "p4gm"]);
    assert_eq!(v["hirsch_length"], 2);
    assert_eq!(v["point_group_order_recovered"], 8);
    assert_eq!(v["h1"]["display"], "Z2 x Z4");
    assert_eq!(v["has_torsion"], true);
    assert_eq!(v["crystal_like"]["status"], "yes");

    let v = json(&["fingerprint", "pg"]);
    assert_eq!(v["point_group_order_recovered"], 2);
    assert_eq!(v["h1"]["display"], "Z x Z2");
    assert_eq!(v["has_torsion"], false);
    assert_eq!(v["reference_k_theory"]["k0"]["display"], "Z");
}

#[test]
fn fingerprint_is_byte_identical_across_runs() {
    let a = vagroup(&["--format", "json", "fingerprint", "p6mm"]);
    let b = vagroup(&["--format", "json", "fingerprint", "p6mm"]);
    assert_eq!(a.stdout, b.stdout);
    let a = vagroup(&["fingerprint", "cm"]);
    let b = vagroup(&["fingerprint", "cm"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fingerprint_from_definition_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2gg.toml");
    let out = vagroup(&["catalog", "export", "p2gg"]);
    std::fs::write(&path, &out.stdout).unwrap();
    let from_file = json(&["fingerprint", path.to_str().unwrap()]);
    let from_name = json(&["fingerprint", "p2gg"]);
    assert_eq!(from_file["h1"], from_name["h1"]);
    assert_eq!(from_file["orbit_censuses"], from_name["orbit_censuses"]);
    assert!(from_file["reference_k_theory"].is_null());
}

#[test]
fn lattice_only_definition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2.toml");
    std::fs::write(&path, "rank = 2\n").unwrap();
    let v = json(&["fingerprint", path.to_str().unwrap()]);
    assert_eq!(v["hirsch_length"], 2);
    assert_eq!(v["point_group_order_recovered"], 1);
    assert_eq!(v["h1"]["display"], "Z^2");
    assert_eq!(v["has_torsion"], false);
}

#[test]
fn compare_cm_pg() {
    let v = json(&["compare", "cm", "pg"]);
    let row = |name: &str| {
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["invariant"] == name)
            .unwrap()
            .clone()
    };
    assert_eq!(row("H1")["equal"], true);
    assert_eq!(row("has torsion")["equal"], false);
    assert_eq!(row("has torsion")["provenance"], "group invariant only");
    assert_eq!(row("K0")["provenance"], "reference data");
    assert_eq!(v["verdict"], "separated_by_reference_k_theory");

    let text = String::from_utf8(vagroup(&["compare", "p2", "pm"]).stdout).unwrap();
    assert!(text.contains("verdict: separated by computed C*-invariants (first: H1)"));
}

#[test]
fn census_with_short_flag() {
    let v = json(&["census", "p2", "-N", "3"]);
    assert_eq!(v["orbits"]["1"], 1);
    assert_eq!(v["orbits"]["2"], 4);
    assert_eq!(v["dimensions"]["2"], 4);
}

#[test]
fn principal_char_exit_codes() {
    let v = json(&["principal-char", "not-crystal-like"]);
    assert_eq!(v["result"]["status"], "no");
    assert_eq!(v["result"]["orbit_size_bound"], 3);

    let out = vagroup(&["--prime-bound", "3", "principal-char", "p6mm"]);
    assert_eq!(out.status.code(), Some(2));

    let out = vagroup(&[
        "principal-char",
        "nonabelian-centralizer",
        "--lattice",
        "centralizer",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let out = vagroup(&["--budget", "10", "census", "p4", "-N", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn induce_reports_irreducibility() {
    let v = json(&["induce", "p4", "--char", "1/3,1/5"]);
    assert_eq!(v["dimension"], 4);
    assert!(v["irreducibility"]
        .as_str()
        .unwrap()
        .starts_with("irreducible"));
    let v = json(&["induce", "p2", "--char", "0,0"]);
    assert!(v["irreducibility"]
        .as_str()
        .unwrap()
        .starts_with("reducible"));
}

#[test]
fn survey_separates_every_pair() {
    let v = json(&["survey-wallpaper"]);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 136);
    assert_eq!(v["all_separated"], true);
    let k: Vec<Value> = v["k_theory_dependent"].as_array().unwrap().clone();
    assert!(k.contains(&serde_json::json!(["pg", "cm"])));
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(
        vagroup(&["fingerprint", "no-such-group"]).status.code(),
        Some(1)
    );
    assert_eq!(
        vagroup(&["induce", "p4", "--char", "1/3"]).status.code(),
        Some(1)
    );
    assert_eq!(vagroup(&["census", "p2"]).status.code(), Some(1));
    assert_eq!(vagroup(&["--help"]).status.code(), Some(0));
}
