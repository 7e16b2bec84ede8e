//! Binary-level behaviour: exit codes, deterministic output, and schema
//! conformance of the JSON report.

use std::process::Command;

fn wres() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wres"))
}

#[test]
fn verify_traces_suite_exits_zero() {
    let out = wres()
        .args(["verify", "--suite", "traces", "--dim", "4"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("suite traces"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = wres().args(["verify", "--no-such-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_output_is_byte_for_byte_deterministic() {
    let run = || {
        wres()
            .args(["verify", "--suite", "wres", "--format", "json"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn boundary_cases_print_exact_values() {
    let out = wres()
        .args(["boundary", "--case", "thm-2.10", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], "0");
    assert_eq!(v["status"], "match");

    let out = wres()
        .args(["boundary", "--case", "prop-2.15"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Tr[c_4Psi]"), "{text}");

    let out = wres()
        .args(["boundary", "--case", "thm-3.2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let total = v["total"].as_str().unwrap();
    assert!(
        total.contains("e_4(g)") && total.contains("e_4(f)"),
        "{total}"
    );
}

#[test]
fn wres_subcommand_prints_density() {
    let out = wres()
        .args([
            "wres",
            "--perturbation",
            "one-form",
            "--dim",
            "4",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let density = v["density"].as_str().unwrap();
    // one-form interior density at n=4: -(16π²/12) s = -4/3 π² s
    assert!(density.contains("s"), "{density}");
    assert!(density.contains("pi^2"), "{density}");
    assert!(
        !density.contains("b_"),
        "one-form density must not depend on the one-form: {density}"
    );
}

#[test]
fn torus_smoke_run_small_window() {
    let out = wres()
        .args([
            "torus",
            "--perturbation",
            "scalar",
            "--value",
            "0.3",
            "--cutoff",
            "16",
            "--tmin",
            "0.08",
            "--tmax",
            "0.35",
            "--steps",
            "10",
            "--tail-tol",
            "1e-6",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rel = v["rel_err_a2"].as_f64().unwrap();
    assert!(rel < 0.05, "rel_err_a2 = {rel}");
}

// -- minimal JSON-schema conformance ---------------------------------------

fn check_schema(value: &serde_json::Value, schema: &serde_json::Value, path: &str) {
    if let Some(ty) = schema["type"].as_str() {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            other => panic!("unsupported schema type {other}"),
        };
        assert!(ok, "{path}: expected {ty}, got {value}");
    }
    if let Some(vals) = schema["enum"].as_array() {
        assert!(vals.contains(value), "{path}: {value} not in enum");
    }
    if let Some(req) = schema["required"].as_array() {
        for key in req {
            let key = key.as_str().unwrap();
            assert!(
                value.get(key).is_some(),
                "{path}: missing required field {key}"
            );
        }
    }
    if let Some(props) = schema["properties"].as_object() {
        for (key, sub) in props {
            if let Some(v) = value.get(key) {
                check_schema(v, sub, &format!("{path}.{key}"));
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                check_schema(v, items, &format!("{path}[{i}]"));
            }
        }
    }
}

#[test]
fn json_report_validates_against_shipped_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let out = wres()
        .args(["verify", "--suite", "all", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    check_schema(&report, &schema, "$");
    // every catalogue entry appears exactly once
    let records = report["records"].as_array().unwrap();
    let mut ids: Vec<&str> = records
        .iter()
        .map(|r| r["check_id"].as_str().unwrap())
        .collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n, "duplicate check ids in the report");
}

#[test]
fn report_subcommand_writes_combined_artifact() {
    let dir = std::env::temp_dir().join("wres-report-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = wres()
        .args(["report", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["verification"]["summary"]["mismatched"], 0);
    let cases: Vec<&str> = v["boundary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["case"].as_str().unwrap())
        .collect();
    assert_eq!(cases, vec!["thm-2.10", "prop-2.15", "thm-3.2"]);
    for b in v["boundary"].as_array().unwrap() {
        assert_eq!(b["status"], "match");
    }
}

#[test]
fn torus_output_is_bit_stable_across_worker_counts() {
    // slab partials combine in a fixed order, so the two-form lattice sum
    // must not depend on the rayon pool size
    let run = |threads: &str| {
        wres()
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "torus",
                "--perturbation",
                "two-form",
                "--value",
                "0.1",
                "--cutoff",
                "10",
                "--tmin",
                "0.25",
                "--tmax",
                "0.6",
                "--steps",
                "6",
                "--tail-tol",
                "1e-6",
            ])
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert!(b.status.success());
    assert_eq!(a.stdout, b.stdout, "lattice sums must be bit-stable");
}
