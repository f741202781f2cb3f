use std::process::{Command, Output};

use charzeta_core::pipeline::{PipelineReport, SCHEMA_VERSION};
use serde_json::Value;

fn charzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charzeta"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, Output) {
    let out = charzeta(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out)
}

#[test]
fn charvar_json_lists_components() {
    let (v, out) = json(&["charvar", "--preset", "weeks", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(v["schema"], SCHEMA_VERSION);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 8);
    let irreducible: Vec<_> = comps.iter().filter(|c| c["irreducible"] == true).collect();
    assert_eq!(irreducible.len(), 1);
    assert_eq!(irreducible[0]["field_poly"], serde_json::json!(["-1", "-1", "0", "1"]));
    assert_eq!(v["canonical_candidates"], serde_json::json!([7]));
    assert!(v["zeta"].is_null());
}

#[test]
fn zeta_exits_zero_when_the_comparison_holds() {
    let (v, out) = json(&["zeta", "--preset", "weeks", "--prime-bound", "100", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["zeta"]["theorem_holds"], true);
    assert_eq!(v["zeta"]["bad_set"], serde_json::json!([23]));
    assert_eq!(v["reference"]["verdict"], "certified");
    assert_eq!(v["component_count"]["pass"], true);
}

#[test]
fn special_value_reports_a_small_rational() {
    let (v, out) = json(&[
        "zeta",
        "--preset",
        "weeks",
        "--special-value",
        "--volume",
        "0.9427073628",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let sv = &v["special_value"];
    let residual: f64 = sv["residual"].as_str().unwrap().parse().unwrap();
    assert!(residual < 1e-5);
    let den: u64 = sv["nearest_rational"].as_str().unwrap().split('/').nth(1).unwrap_or("1").parse().unwrap();
    assert!(den <= 48);
}

#[test]
fn special_value_needs_a_volume() {
    assert_eq!(charzeta(&["zeta", "--preset", "weeks", "--special-value"]).status.code(), Some(2));
}

#[test]
fn preset_without_presentation_is_a_parse_error() {
    let out = charzeta(&["charvar", "--preset", "m004m61"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m004m61"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = std::env::temp_dir().join(format!("charzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "gens: a b; rels: aXb").unwrap();
    assert_eq!(charzeta(&["charvar", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn positive_dimensional_variety_is_refused() {
    let dir = std::env::temp_dir().join(format!("charzeta-cli-dim-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free.txt");
    // the commutator relator leaves a surface of characters
    std::fs::write(&path, "gens: a b; rels: abAB").unwrap();
    let out = charzeta(&["tracefield", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires dim 0"));
}

#[test]
fn out_of_range_component_is_rejected() {
    let out = charzeta(&["tracefield", "--preset", "weeks", "--component", "99"]);
    assert!(!out.status.success());
}

#[test]
fn holonomy_json_has_a_candidate_character() {
    let (v, out) = json(&["holonomy", "--preset", "weeks", "--format", "json"]);
    assert!(out.status.success());
    let classes = v["holonomy"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["candidate"], true);
    assert_eq!(classes[0]["field_poly"], serde_json::json!(["1", "0", "-1", "1"]));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["zeta", "--preset", "meyerhoff", "--prime-bound", "60", "--format", "json"];
    let a = charzeta(&args);
    let b = charzeta(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_round_trips_through_the_report_type() {
    let out = charzeta(&["zeta", "--preset", "m010m12", "--prime-bound", "50", "--format", "json"]);
    assert!(out.status.success());
    let report: PipelineReport = serde_json::from_slice(&out.stdout).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), String::from_utf8_lossy(&out.stdout).trim_end());
    assert_eq!(report.h1_c2_order, 2);
}

#[test]
fn text_output_names_the_fields() {
    let out = charzeta(&["tracefield", "--preset", "weeks"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("trace field: ℚ[T]/(T^3 - T - 1)"));
    assert!(text.contains("disc(h) = -23"));
    assert!(text.contains("isomorphic (certified)"));
}
