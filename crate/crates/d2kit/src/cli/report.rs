use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::checks::{Check, CheckLevel, CheckList};
use crate::exactla::{Mat, Scalar};

use super::job::Task;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Refused,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Section {
    pub task: Task,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, Value>,
}

impl Section {
    pub fn new(task: Task) -> Section {
        Section { task, status: Status::Ok, reason: None, checks: Vec::new(), info: BTreeMap::new() }
    }

    pub fn add(&mut self, c: CheckList) {
        self.checks.extend(c.items);
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass, witness: None });
    }

    pub fn info(&mut self, key: &str, v: impl Serialize) {
        self.info.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn refuse(&mut self, why: impl Into<String>) {
        self.status = Status::Refused;
        self.reason = Some(why.into());
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.status = Status::Failed;
        self.reason = Some(why.into());
    }

    /// Marks the section failed if any check failed and it has not been refused.
    pub fn settle(&mut self) {
        if self.status == Status::Ok {
            let bad: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            if !bad.is_empty() {
                self.status = Status::Failed;
                self.reason = Some(format!("failed: {}", bad.join("; ")));
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Dims {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub a: usize,
    pub b: usize,
    /// The step-three centralizer `C = End_N(M ⊗_N M)_M`.
    pub c: usize,
    #[serde(rename = "endMN")]
    pub end_m_n: usize,
    pub m1: usize,
    pub m2: usize,
}

/// A flag with its witness (a key of `witnesses`) or the reason it is false or unknown.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Flag {
    pub name: String,
    /// `null` when undecided.
    pub value: Option<bool>,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Profile {
    pub dims: Dims,
    pub flags: Vec<Flag>,
}

impl Profile {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().find(|f| f.name == name)
    }

    pub fn value(&self, name: &str) -> Option<bool> {
        self.flag(name).and_then(|f| f.value)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub name: String,
    pub field: String,
    pub seed: u64,
    pub check_level: CheckLevel,
    pub tasks: Vec<Task>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, Value>,
    pub sections: Vec<Section>,
    /// Seconds per task; shown in markdown only.
    #[serde(skip)]
    pub timings: Vec<(Task, f64)>,
}

impl Report {
    pub fn section(&self, t: Task) -> Option<&Section> {
        self.sections.iter().find(|s| s.task == t)
    }

    /// 2 on any failure, 1 on any refusal, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.sections.iter().any(|s| s.status == Status::Failed) {
            2
        } else if self.sections.iter().any(|s| s.status == Status::Refused) {
            1
        } else {
            0
        }
    }

    pub fn failures(&self) -> Vec<(Task, &Check)> {
        self.sections.iter().flat_map(|s| s.checks.iter().filter(|c| !c.pass).map(move |c| (s.task, c))).collect()
    }
}

pub fn lits(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn mat_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

pub fn vec_value(v: &[Scalar]) -> Value {
    serde_json::to_value(lits(v)).expect("strings")
}

pub fn mat_value(m: &Mat) -> Value {
    serde_json::to_value(mat_rows(m)).expect("strings")
}
