use std::fmt::Write;

use super::report::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Md => markdown(r),
    }
}

/// Pretty JSON with a trailing newline; identical inputs give identical bytes.
pub fn json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Refused => "refused",
        Status::Failed => "FAILED",
    }
}

pub fn markdown(r: &Report) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "# {}\n", r.name);
    let tasks: Vec<&str> = r.tasks.iter().map(|t| t.name()).collect();
    let _ = writeln!(o, "field {} · seed {} · checks {:?} · tasks [{}]\n", r.field, r.seed, r.check_level, tasks.join(", "));
    if let Some(p) = &r.profile {
        let d = &p.dims;
        let _ = writeln!(o, "## Summary\n");
        let _ = writeln!(o, "| quantity | value |\n|---|---|");
        for (k, v) in [
            ("dim N", d.n),
            ("dim M", d.m),
            ("dim R", d.r),
            ("dim A", d.a),
            ("dim B", d.b),
            ("dim C", d.c),
            ("dim End M_N", d.end_m_n),
            ("dim M_1", d.m1),
            ("dim M_2", d.m2),
        ] {
            let _ = writeln!(o, "| {k} | {v} |");
        }
        for f in &p.flags {
            let _ = writeln!(o, "| {} | {} |", f.name, yes_no(f.value));
        }
        let _ = writeln!(o, "\n### Evidence\n");
        for f in &p.flags {
            let _ = writeln!(o, "- **{}**: {}", f.name, f.evidence);
        }
        let _ = writeln!(o);
    }
    for s in &r.sections {
        let secs = r.timings.iter().find(|(t, _)| *t == s.task).map(|(_, x)| format!(" ({x:.3} s)")).unwrap_or_default();
        let passed = s.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(o, "## {}: {}{}\n", s.task.name(), status(s.status), secs);
        if let Some(why) = &s.reason {
            let _ = writeln!(o, "{why}\n");
        }
        if !s.checks.is_empty() {
            let _ = writeln!(o, "{passed}/{} checks pass\n", s.checks.len());
            for c in &s.checks {
                let mark = if c.pass { "x" } else { " " };
                match &c.witness {
                    Some(w) => {
                        let _ = writeln!(o, "- [{mark}] {} (counterexample {w})", c.name);
                    }
                    None => {
                        let _ = writeln!(o, "- [{mark}] {}", c.name);
                    }
                }
            }
            let _ = writeln!(o);
        }
        for (k, v) in &s.info {
            let _ = writeln!(o, "- {k}: `{v}`");
        }
        if !s.info.is_empty() {
            let _ = writeln!(o);
        }
    }
    o
}
