use std::f64::consts::PI;
use std::process::{Command, Output};

fn radharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radharm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a CSV output (comment and header lines skipped).
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn value(cell: &str) -> f64 {
    cell.parse().unwrap_or_else(|_| panic!("not a number: {cell:?}"))
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn phi_table_s3() {
    let o = radharm(&["phi-table", "S3", "0.3", "1.5", "5", "0.7854"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    let config = lines.next().unwrap();
    assert!(config.starts_with("# radharm command=phi-table model=S3"), "{config}");
    assert!(config.contains("seed=42") && config.contains("precision=12"));
    assert_eq!(
        lines.next().unwrap(),
        "r,theta,phi1,phi0_closed,phi0_numeric_diff,laplacian_residual"
    );
    let rows = rows(&text);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let r = value(&row[0]);
        assert!((value(&row[1]) - r.sin().powi(2)).abs() < 1e-11);
        assert!((value(&row[2]) * r.sin().powi(2) - 1.0).abs() < 1e-11);
        assert!((value(&row[3]) + r.cos() / r.sin()).abs() < 1e-11);
        assert!(value(&row[5]) < 1e-5, "{row:?}");
    }
    // The numeric difference is anchored at r_ref.
    let closed_ref = -(0.7854f64.cos() / 0.7854f64.sin());
    for row in &rows {
        let diff = value(&row[3]) - closed_ref;
        assert!((value(&row[4]) - diff).abs() < 1e-9, "{row:?}");
    }
}

#[test]
fn phi_table_flat_plane_is_log() {
    let o = radharm(&["phi-table", "E2", "0.5", "2", "4", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    for row in rows {
        let r = value(&row[0]);
        assert!((value(&row[3]) - r.ln()).abs() < 1e-12);
    }
}

#[test]
fn phi_table_requires_closed_form_or_flag() {
    let o = radharm(&["phi-table", "S9", "0.3", "1.0", "3", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no closed form; numeric only with --numeric-only"));
    assert!(o.stdout.is_empty());

    let o = radharm(&["phi-table", "S9", "0.3", "1.0", "3", "0.5", "--numeric-only"]);
    assert_eq!(o.status.code(), Some(0));
    for row in rows(&stdout(&o)) {
        assert_eq!(row[3], "");
        assert!(value(&row[5]) < 1e-5, "{row:?}");
    }
}

#[test]
fn phi_table_usage_errors() {
    for args in [
        vec!["phi-table", "S3", "0.3", "3.5", "4", "1.0"],
        vec!["phi-table", "S3", "0.3", "1.5", "4", "0"],
        vec!["phi-table", "S3", "1.5", "0.3", "4", "1.0"],
        vec!["phi-table", "X7", "0.3", "1.5", "4", "1.0"],
        vec!["phi-table", "S3", "0.3", "1.5", "0", "1.0"],
        vec!["phi-table", "S3", "0.3", "1.5", "4", "1.0", "--precision", "5"],
        vec!["phi-table", "S3", "0.3", "1.5", "4", "1.0", "--precision", "18"],
    ] {
        let o = radharm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn precision_controls_digits() {
    let o = radharm(&["phi-table", "E3", "1", "1", "1", "1", "--precision", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = rows(&stdout(&o));
    assert_eq!(rows[0][0], "1.000000e0");
    assert_eq!(rows[0][3], "-1.000000e0");
}

#[test]
fn verify_all_passes() {
    let o = radharm(&["verify", "all"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.starts_with("# radharm command=verify scope=all"));
    let tables = text.lines().filter(|l| l.split(' ').nth(1) == Some("table")).count();
    assert!(tables >= 17, "{tables}");
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
    // The octonion bound note is surfaced as a warning, not a failure.
    assert!(text.lines().any(|l| l.starts_with("WARN bounds hOP2 statement_discrepancy")));
    assert!(text.lines().any(|l| l.starts_with("PASS group lens")));
    assert!(text.lines().any(|l| l.starts_with("PASS group cpq")));
}

#[test]
fn verify_single_model() {
    let o = radharm(&["verify", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let checks: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|l| l.split(' ').nth(2) == Some("S3")));

    // Passing or corrected, but never a silent failure.
    let o = radharm(&["verify", "hS5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS table hS5") || l.starts_with("WARN table hS5")));

    let o = radharm(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quotient_klein_caption() {
    let o = radharm(&["quotient", "klein", "0,0.25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let second = text.lines().nth(1).unwrap();
    assert!(second.starts_with("# iota=0.5590169"), "{second}");
    assert!(!rows(&text).is_empty());
}

#[test]
fn quotient_lens_and_cp() {
    let o = radharm(&["quotient", "lens"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# iota=0.7853981"), "{text}");
    let volume = text
        .lines()
        .find_map(|l| l.strip_prefix("# domain_volume="))
        .and_then(|rest| rest.split(' ').next())
        .map(value)
        .unwrap();
    assert!((volume - PI * PI / 2.0).abs() < 0.1);

    let o = radharm(&["quotient", "cpq", "1,0.5,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# iota=0.7853981"));
    let o = radharm(&["quotient", "rp3", "0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# iota=1.5707963"));
}

#[test]
fn quotient_torus_cut_locus_is_the_square() {
    let o = radharm(&["quotient", "torus", "0,0", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let spacing = 2.0 / 100.0;
    let rows = rows(&stdout(&o));
    assert!(rows.len() > 100);
    for row in rows {
        let (x, y) = (value(&row[0]), value(&row[1]));
        let gap = (x.abs() - 0.5).abs().min((y.abs() - 0.5).abs());
        assert!(gap <= 2.0 * spacing, "({x}, {y})");
    }
}

#[test]
fn quotient_svg_carries_config() {
    let o = radharm(&["quotient", "torus", "0,0", "--svg"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    let meta_start = svg.find("<metadata>").unwrap();
    let meta_end = svg.find("</metadata>").unwrap();
    let meta = &svg[meta_start..meta_end];
    assert!(meta.contains("radharm command=quotient group=torus basepoint=0,0"));
    assert!(meta.contains("svg=true"));
    assert!(meta.contains("iota=0.500000000000"));
    assert!(svg.contains("#1f3b73"));

    let o = radharm(&["quotient", "lens", "1,0,0,0", "60", "--svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("<circle"));
}

#[test]
fn quotient_usage_errors() {
    for args in [
        vec!["quotient", "mobius"],
        vec!["quotient", "klein", "0"],
        vec!["quotient", "klein", "a,b"],
        vec!["quotient", "lens", "1,0,0"],
        vec!["quotient", "lens0"],
        vec!["quotient", "torus", "0,0", "0"],
        vec!["quotient", "torus", "0,0", "--tol", "-1"],
    ] {
        let o = radharm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bounds_reports() {
    let vol_cp2 = PI * PI / 2.0;
    let o = radharm(&["bounds", "hCP2", "--orientable", "true"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["model"], "hCP2");
    assert_eq!(j["dual"], "CP2");
    assert_eq!(j["euler"], 3);
    assert_eq!(j["signature"], 1);
    assert!((j["gb_bound"].as_f64().unwrap() - vol_cp2 / 3.0).abs() < 1e-12);
    assert!((j["sig_bound"].as_f64().unwrap() - vol_cp2).abs() < 1e-12);
    assert!(j["config"].as_str().unwrap().starts_with("radharm command=bounds model=hCP2"));
    for key in ["dual_volume", "epsilon", "notes"] {
        assert!(!j[key].is_null(), "{key}");
    }

    let o = radharm(&["bounds", "hCP2", "--orientable", "false"]);
    let j = json(&o);
    assert_eq!(j["epsilon"], 0.5);
    assert!((j["sig_bound"].as_f64().unwrap() - vol_cp2 / 2.0).abs() < 1e-12);

    let o = radharm(&["bounds", "hS4"]);
    let j = json(&o);
    assert!((j["gb_bound"].as_f64().unwrap() - 4.0 * PI * PI / 3.0).abs() < 1e-12);
    assert!(j["sig_bound"].is_null());

    let o = radharm(&["bounds", "hOP2"]);
    let j = json(&o);
    assert_eq!(j["notes"][0]["code"], "statement_discrepancy");

    for bad in ["CP2", "E4", "hS3x"] {
        let o = radharm(&["bounds", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["phi-table", "hCP3", "0.2", "2.0", "7", "1.0"],
        vec!["quotient", "lens", "--seed", "7"],
        vec!["verify", "all"],
        vec!["bounds", "hHP2"],
    ] {
        let a = radharm(&args);
        let b = radharm(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = stdout(&radharm(&["quotient", "lens", "--seed", "7"]));
    let b = stdout(&radharm(&["quotient", "lens", "--seed", "8"]));
    assert_ne!(a, b);
    assert!(a.starts_with("# radharm") && a.lines().next().unwrap().contains("seed=7"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let o = radharm(&["phi-table", "S2", "0.5", "1.0", "3", "0.7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().next().unwrap().contains(&format!("out={}", path.display())));
    assert_eq!(rows(&text).len(), 3);

    let missing = dir.path().join("no/such/dir.csv");
    let o = radharm(&["bounds", "hS2", "--out", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
