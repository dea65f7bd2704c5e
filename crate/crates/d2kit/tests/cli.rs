use std::process::Command;

use d2kit::checks::CheckLevel;
use d2kit::cli::{gallery, json, markdown, parse, parse_spec, run, validate, JobSpec, Overrides, Status, Task};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_d2kit"))
}

fn tmp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("d2kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn job_text(example: &str, tasks: &str) -> String {
    format!(r#"{{"example": "{example}", "tasks": {tasks}}}"#)
}

#[test]
fn identical_job_and_seed_give_identical_json() {
    for name in ["kC2-in-kC4", "scalars-in-QxQ", "random-non-D2"] {
        let j = parse(&job_text(name, r#"["all"]"#), Overrides { seed: Some(5), ..Default::default() }).unwrap();
        let (a, b) = (json(&run(&j)), json(&run(&j)));
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn fast_mode_is_deterministic_too() {
    let o = Overrides { seed: Some(3), check_level: Some(CheckLevel::Fast), ..Default::default() };
    let j = parse(&job_text("scalars-in-M2", r#"["weakhopf"]"#), o).unwrap();
    let r = run(&j);
    assert_eq!(r.check_level, CheckLevel::Fast);
    assert_eq!(json(&r), json(&run(&j)));
    assert_eq!(r.exit_code(), 0, "{:?}", r.failures());
}

#[test]
fn printed_gallery_job_reproduces_the_report() {
    for name in gallery::names() {
        let printed = serde_json::to_string_pretty(&gallery::job(name).unwrap()).unwrap();
        let from_print = run(&parse(&printed, Overrides::default()).unwrap());
        let by_reference = run(&parse(&format!(r#"{{"example": "{name}"}}"#), Overrides::default()).unwrap());
        assert_eq!(json(&from_print), json(&by_reference), "{name}");
    }
}

#[test]
fn re_rendered_job_is_a_fixed_point() {
    let spec: JobSpec = gallery::job("kC3-in-kS3").unwrap();
    let again = parse_spec(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(spec, again);
}

#[test]
fn empty_task_list_gives_header_only() {
    let r = run(&parse(&job_text("kC2-in-kC4", "[]"), Overrides::default()).unwrap());
    assert!(r.profile.is_none() && r.sections.is_empty() && r.witnesses.is_empty());
    let v: serde_json::Value = serde_json::from_str(&json(&r)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["name", "field", "seed", "checkLevel", "tasks", "sections"]);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn upper_triangular_analyze_matches_the_counterexample() {
    let r = run(&parse(&job_text("upper_triangular_in_M2", r#"["analyze"]"#), Overrides::default()).unwrap());
    let p = r.profile.as_ref().unwrap();
    assert_eq!((p.dims.r, p.dims.a, p.dims.end_m_n), (1, 1, 4));
    for (flag, want) in [
        ("hSeparable", Some(true)),
        ("leftD2", Some(true)),
        ("rightD2", Some(true)),
        ("balanced", Some(false)),
        ("frobenius", Some(false)),
        ("leftQF", Some(false)),
        ("rightQF", Some(false)),
        ("invariantsEqualN", Some(false)),
    ] {
        assert_eq!(p.value(flag), want, "{flag}");
    }
    assert!(p.flag("frobenius").unwrap().evidence.starts_with("certified none"));
    assert_eq!(r.witnesses["oneTensorOneIsCentral"], serde_json::Value::Bool(true));
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn group_pipeline_verifies_everything_requested() {
    let r = run(&parse(&job_text("kC2_in_kC4", r#"["d2", "bialgebroid", "frobenius"]"#), Overrides::default()).unwrap());
    assert_eq!(r.tasks, vec![Task::D2, Task::Bialgebroid, Task::Frobenius]);
    for s in &r.sections {
        assert_eq!(s.status, Status::Ok, "{:?}", s);
        assert!(!s.checks.is_empty());
    }
}

#[test]
fn weak_hopf_report_for_q_times_q() {
    let r = run(&parse(&job_text("scalars-in-QxQ", r#"["weakhopf"]"#), Overrides::default()).unwrap());
    let s = r.section(Task::Weakhopf).unwrap();
    assert_eq!(s.status, Status::Ok, "{:?}", r.failures());
    assert_eq!(s.info["aWeak"], serde_json::Value::Bool(true));
    assert!(r.witnesses["weakHopf"]["antipodeA"].is_array());
}

/// Every scalar in the witnesses is an exact `p/q` (or integer) string.
#[test]
fn witnesses_are_exact_fractions() {
    fn walk(v: &serde_json::Value, out: &mut Vec<String>) {
        match v {
            serde_json::Value::String(s) => out.push(s.clone()),
            serde_json::Value::Array(a) => a.iter().for_each(|x| walk(x, out)),
            serde_json::Value::Object(o) => o.values().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    let r = run(&parse(&job_text("kC3-in-kS3", r#"["all"]"#), Overrides::default()).unwrap());
    let mut all = Vec::new();
    walk(&serde_json::to_value(&r.witnesses).unwrap(), &mut all);
    assert!(!all.is_empty());
    let frac = |s: &str| {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        n.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) && !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) && d != "0"
    };
    assert!(all.iter().all(|s| frac(s)), "{:?}", all.iter().find(|s| !frac(s)));
    assert!(all.iter().any(|s| s.contains('/')), "expected a non-integer witness entry");
}

#[test]
fn markdown_has_summary_table_and_sections() {
    let r = run(&parse(&job_text("kC2-in-kC4", r#"["all"]"#), Overrides::default()).unwrap());
    let md = markdown(&r);
    assert!(md.contains("| quantity | value |"));
    assert!(md.contains("| dim R | 4 |"));
    for t in Task::ORDER {
        assert!(md.contains(&format!("## {}:", t.name())), "{}", t.name());
    }
    assert!(!json(&r).contains("timing"));
}

#[test]
fn binary_exit_codes() {
    let ok = tmp("ok.json", &job_text("kC2-in-kC4", r#"["analyze", "d2"]"#));
    let st = bin().args(["analyze", ok.to_str().unwrap()]).output().unwrap();
    assert_eq!(st.status.code(), Some(0), "{}", String::from_utf8_lossy(&st.stderr));
    let v: serde_json::Value = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(v["name"], "kC2-in-kC4");

    let refused = tmp("refused.json", &job_text("upper-triangular-in-M2", r#"["frobenius"]"#));
    assert_eq!(bin().args(["analyze", refused.to_str().unwrap()]).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["verify", refused.to_str().unwrap()]).output().unwrap().status.code(), Some(1));

    let bad = tmp("bad.json", r#"{"example": "kC2-in-kC4", "tasks": ["teleport"]}"#);
    let out = bin().args(["analyze", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tasks"));

    let capped = tmp("capped.json", &job_text("kC3-in-kS3", r#"["analyze"]"#));
    let out = bin().args(["analyze", capped.to_str().unwrap(), "--max-dim", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(bin().args(["analyze", "/nonexistent/job.json"]).output().unwrap().status.code(), Some(3));
}

#[test]
fn binary_examples_and_formats() {
    let list = bin().arg("examples").output().unwrap();
    assert!(list.status.success());
    let text = String::from_utf8_lossy(&list.stdout);
    for n in gallery::names() {
        assert!(text.contains(n));
    }
    let one = bin().args(["examples", "kC2_in_kC4"]).output().unwrap();
    let spec: JobSpec = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(spec, gallery::job("kC2-in-kC4").unwrap());
    assert_eq!(bin().args(["examples", "nope"]).output().unwrap().status.code(), Some(3));

    let p = tmp("md.json", &serde_json::to_string(&spec).unwrap().replace(r#"["all"]"#, r#"["analyze"]"#));
    let md = bin().args(["analyze", p.to_str().unwrap(), "--format", "md", "--seed", "9"]).output().unwrap();
    let md = String::from_utf8_lossy(&md.stdout);
    assert!(md.starts_with("# kC2-in-kC4") && md.contains("seed 9") && md.contains(" s)"));
}

#[test]
fn seed_override_is_reported() {
    let spec = gallery::job("scalars-in-M2").unwrap();
    let j = validate(&spec, Overrides { seed: Some(11), max_dim: Some(4), ..Default::default() }).unwrap();
    assert_eq!((j.seed, j.max_dim), (11, 4));
}
