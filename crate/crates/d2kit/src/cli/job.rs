use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algcore::{Algebra, AlgebraMap};
use crate::checks::CheckLevel;
use crate::exactla::{solve, Field, Mat, Scalar};
use crate::extcore::RingExtension;

use super::gallery;

pub const DEFAULT_MAX_DIM: usize = 32;

/// An input problem located at a JSON path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobError {
    pub path: String,
    pub message: String,
}

impl JobError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> JobError {
        JobError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for JobError {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

/// A scalar written as an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lit {
    Int(i64),
    Text(String),
}

impl Lit {
    pub fn of(s: &Scalar) -> Lit {
        Lit::Text(s.to_string())
    }

    fn parse(&self, field: Field, path: &str) -> Result<Scalar, JobError> {
        match self {
            Lit::Int(n) => Ok(field.int(*n)),
            Lit::Text(t) => field.parse(t.trim()).ok_or_else(|| JobError::new(path, format!("cannot read {t:?} as a scalar of {field}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraDef {
    /// `mult` entries `[i, j, k, c]` mean `e_i e_j` has coefficient `c` on `e_k`.
    Structure {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Vec<Lit>>,
        mult: Vec<(usize, usize, usize, Lit)>,
    },
    Matrix { n: usize },
    Group { table: Vec<Vec<usize>> },
    Product { of: Vec<String> },
    Tensor { of: Vec<String> },
    Opposite { of: String },
}

/// `map` has `dim over` rows and `dim sub` columns; column `j` is the image of the `j`-th basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDef {
    pub sub: String,
    pub over: String,
    pub map: Vec<Vec<Lit>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Analyze,
    D2,
    Morita,
    Bialgebroid,
    Frobenius,
    Qf,
    Weakhopf,
    Hopf,
    All,
}

impl Task {
    /// Concrete tasks in execution order.
    pub const ORDER: [Task; 8] = [Task::Analyze, Task::D2, Task::Morita, Task::Bialgebroid, Task::Frobenius, Task::Qf, Task::Weakhopf, Task::Hopf];

    pub fn name(self) -> &'static str {
        match self {
            Task::Analyze => "analyze",
            Task::D2 => "d2",
            Task::Morita => "morita",
            Task::Bialgebroid => "bialgebroid",
            Task::Frobenius => "frobenius",
            Task::Qf => "qf",
            Task::Weakhopf => "weakhopf",
            Task::Hopf => "hopf",
            Task::All => "all",
        }
    }
}

/// The job file as written.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// A gallery entry supplying the field, algebras and extension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tasks: Option<Vec<Task>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_level: Option<CheckLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub field: Field,
    pub ext: RingExtension,
    /// Concrete tasks, deduplicated, in execution order.
    pub tasks: Vec<Task>,
    pub seed: u64,
    pub check_level: CheckLevel,
    pub max_dim: usize,
}

/// Per-invocation overrides of the job file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub check_level: Option<CheckLevel>,
    pub max_dim: Option<usize>,
}

pub fn parse_spec(text: &str) -> Result<JobSpec, JobError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        JobError::new(path, format!("{inner}"))
    })
}

/// Parses and validates a job file.
pub fn parse(text: &str, o: Overrides) -> Result<Job, JobError> {
    validate(&parse_spec(text)?, o)
}

/// Fills in a gallery reference; explicit tasks, seed, check level and caps win.
pub fn expand(spec: &JobSpec) -> Result<JobSpec, JobError> {
    let Some(ex) = &spec.example else {
        return Ok(spec.clone());
    };
    if spec.field.is_some() || !spec.algebras.is_empty() || spec.extension.is_some() {
        return Err(JobError::new("example", "an example reference cannot be combined with field, algebras or extension"));
    }
    let g = gallery::job(ex).ok_or_else(|| JobError::new("example", format!("unknown example {ex:?}; known: {}", gallery::names().join(", "))))?;
    Ok(JobSpec {
        name: spec.name.clone().or(g.name),
        example: None,
        field: g.field,
        algebras: g.algebras,
        extension: g.extension,
        tasks: spec.tasks.clone().or(g.tasks),
        seed: spec.seed.or(g.seed),
        check_level: spec.check_level.or(g.check_level),
        max_dim: spec.max_dim.or(g.max_dim),
    })
}

pub fn validate(spec: &JobSpec, o: Overrides) -> Result<Job, JobError> {
    let spec = expand(spec)?;
    let max_dim = o.max_dim.or(spec.max_dim).unwrap_or(DEFAULT_MAX_DIM);
    if max_dim == 0 {
        return Err(JobError::new("maxDim", "the dimension cap must be positive"));
    }
    let field = match spec.field.clone().unwrap_or(FieldSpec::Rational) {
        FieldSpec::Rational => Field::Rational,
        FieldSpec::Prime { p } => Field::prime(p).map_err(|e| JobError::new("field.p", e.to_string()))?,
    };
    let ext_def = spec.extension.as_ref().ok_or_else(|| JobError::new("extension", "missing extension (or an example reference)"))?;
    let mut r = Resolver { field, defs: &spec.algebras, done: BTreeMap::new(), visiting: BTreeSet::new(), max_dim };
    let n = r.get(&ext_def.sub, "extension.sub")?;
    let m = r.get(&ext_def.over, "extension.over")?;
    let map = matrix(field, &ext_def.map, m.dim(), n.dim(), "extension.map")?;
    let ext = RingExtension::new(n, m, AlgebraMap::new(map)).map_err(|e| JobError::new("extension.map", e.to_string()))?;
    let requested = spec.tasks.clone().unwrap_or_else(|| vec![Task::Analyze]);
    let tasks = if requested.contains(&Task::All) {
        Task::ORDER.to_vec()
    } else {
        Task::ORDER.iter().copied().filter(|t| requested.contains(t)).collect()
    };
    Ok(Job {
        name: spec.name.clone().unwrap_or_else(|| format!("{} ⊂ {}", ext_def.sub, ext_def.over)),
        field,
        ext,
        tasks,
        seed: o.seed.or(spec.seed).unwrap_or(0),
        check_level: o.check_level.or(spec.check_level).unwrap_or_default(),
        max_dim,
    })
}

fn matrix(field: Field, rows: &[Vec<Lit>], nr: usize, nc: usize, path: &str) -> Result<Mat, JobError> {
    if rows.len() != nr {
        return Err(JobError::new(path, format!("expected {nr} rows (dimension of the larger algebra), found {}", rows.len())));
    }
    let mut out = Mat::zeros(field, nr, nc);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != nc {
            return Err(JobError::new(format!("{path}[{i}]"), format!("expected {nc} entries (dimension of the subalgebra), found {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            out.set(i, j, x.parse(field, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Ok(out)
}

struct Resolver<'a> {
    field: Field,
    defs: &'a BTreeMap<String, AlgebraDef>,
    done: BTreeMap<String, Algebra>,
    visiting: BTreeSet<String>,
    max_dim: usize,
}

impl Resolver<'_> {
    fn get(&mut self, name: &str, from: &str) -> Result<Algebra, JobError> {
        if let Some(a) = self.done.get(name) {
            return Ok(a.clone());
        }
        let def = self.defs.get(name).ok_or_else(|| JobError::new(from, format!("no algebra named {name:?}")))?;
        if !self.visiting.insert(name.to_string()) {
            return Err(JobError::new(format!("algebras.{name}"), "definition refers to itself"));
        }
        let path = format!("algebras.{name}");
        let a = self.build(def, &path)?;
        if a.dim() > self.max_dim {
            return Err(JobError::new(&path, format!("dimension {} exceeds the cap maxDim = {}", a.dim(), self.max_dim)));
        }
        self.visiting.remove(name);
        self.done.insert(name.to_string(), a.clone());
        Ok(a)
    }

    fn build(&mut self, def: &AlgebraDef, path: &str) -> Result<Algebra, JobError> {
        let f = self.field;
        let alg = |e: crate::algcore::AlgError| JobError::new(path, e.to_string());
        let max_dim = self.max_dim;
        let cap = |d: usize| -> Result<(), JobError> {
            if d > max_dim {
                Err(JobError::new(path, format!("dimension {d} exceeds the cap maxDim = {max_dim}")))
            } else {
                Ok(())
            }
        };
        match def {
            AlgebraDef::Structure { dim, unit, mult } => {
                cap(*dim)?;
                let mut consts = Vec::with_capacity(mult.len());
                for (t, (i, j, k, c)) in mult.iter().enumerate() {
                    if *i >= *dim || *j >= *dim || *k >= *dim {
                        return Err(JobError::new(format!("{path}.mult[{t}]"), format!("basis index out of range for dimension {dim}")));
                    }
                    consts.push((*i, *j, *k, c.parse(f, &format!("{path}.mult[{t}][3]"))?));
                }
                let unit = match unit {
                    Some(u) => {
                        if u.len() != *dim {
                            return Err(JobError::new(format!("{path}.unit"), format!("expected {dim} entries, found {}", u.len())));
                        }
                        u.iter().enumerate().map(|(i, x)| x.parse(f, &format!("{path}.unit[{i}]"))).collect::<Result<Vec<_>, _>>()?
                    }
                    None => find_unit(f, *dim, &consts).ok_or_else(|| JobError::new(format!("{path}.unit"), "no element satisfies the unit law 1·x = x = x·1"))?,
                };
                Algebra::from_constants(f, *dim, &consts, unit).map_err(alg)
            }
            AlgebraDef::Matrix { n } => {
                cap(n * n)?;
                if *n == 0 {
                    return Err(JobError::new(format!("{path}.n"), "must be positive"));
                }
                Ok(Algebra::matrix_algebra(f, *n))
            }
            AlgebraDef::Group { table } => {
                cap(table.len())?;
                Algebra::group_algebra(f, table).map_err(alg)
            }
            AlgebraDef::Product { of } | AlgebraDef::Tensor { of } => {
                let tensor = matches!(def, AlgebraDef::Tensor { .. });
                let mut acc: Option<Algebra> = None;
                for (i, name) in of.iter().enumerate() {
                    let x = self.get(name, &format!("{path}.of[{i}]"))?;
                    let next = match &acc {
                        None => x,
                        Some(a) => {
                            cap(if tensor { a.dim() * x.dim() } else { a.dim() + x.dim() })?;
                            if tensor {
                                a.tensor(&x)
                            } else {
                                a.product(&x)
                            }
                        }
                    };
                    acc = Some(next);
                }
                acc.ok_or_else(|| JobError::new(format!("{path}.of"), "needs at least one algebra"))
            }
            AlgebraDef::Opposite { of } => Ok(self.get(of, &format!("{path}.of"))?.opposite()),
        }
    }
}

/// The unique `u` with `u e_j = e_j = e_j u` for all `j`, if any.
fn find_unit(f: Field, dim: usize, consts: &[(usize, usize, usize, Scalar)]) -> Option<Vec<Scalar>> {
    let mut sys = Mat::zeros(f, 2 * dim * dim, dim);
    let mut rhs = vec![f.zero(); 2 * dim * dim];
    for j in 0..dim {
        rhs[j * dim + j] = f.one();
        rhs[dim * dim + j * dim + j] = f.one();
    }
    for (i, j, k, c) in consts {
        // u e_j: row (j, k) gains c·u_i; e_i u: row (i, k) gains c·u_j.
        let r1 = j * dim + k;
        sys.set(r1, *i, &sys.get(r1, *i).clone() + c);
        let r2 = dim * dim + i * dim + k;
        sys.set(r2, *j, &sys.get(r2, *j).clone() + c);
    }
    solve(&sys, &rhs).ok().flatten()
}

/// `a` as a structure definition in its own basis.
pub fn structure_def(a: &Algebra) -> AlgebraDef {
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.basis_product(i, j) {
                mult.push((i, j, *k, Lit::of(c)));
            }
        }
    }
    AlgebraDef::Structure { dim: n, unit: Some(a.one().iter().map(Lit::of).collect()), mult }
}

pub fn field_spec(f: Field) -> FieldSpec {
    match f {
        Field::Rational => FieldSpec::Rational,
        Field::Prime(p) => FieldSpec::Prime { p },
    }
}

/// A self-contained job for `ext`.
pub fn spec_of(name: &str, ext: &RingExtension, tasks: Vec<Task>, seed: u64) -> JobSpec {
    let f = ext.field();
    let def = |a: &Algebra| {
        if let Some(k) = (1..=a.dim()).find(|k| k * k == a.dim()).filter(|&k| *a == Algebra::matrix_algebra(f, k)) {
            AlgebraDef::Matrix { n: k }
        } else {
            structure_def(a)
        }
    };
    let map = (0..ext.dim_m()).map(|i| (0..ext.dim_n()).map(|j| Lit::of(ext.iota.matrix.get(i, j))).collect()).collect();
    let mut algebras = BTreeMap::new();
    algebras.insert("M".to_string(), def(&ext.m));
    algebras.insert("N".to_string(), def(&ext.n));
    JobSpec {
        name: Some(name.to_string()),
        example: None,
        field: Some(field_spec(f)),
        algebras,
        extension: Some(ExtensionDef { sub: "N".into(), over: "M".into(), map }),
        tasks: Some(tasks),
        seed: Some(seed),
        check_level: Some(CheckLevel::Full),
        max_dim: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "field": {"kind": "rational"},
        "algebras": {
            "M": {"kind": "matrix", "n": 2},
            "T": {"kind": "structure", "dim": 3, "unit": [1, 0, 1],
                  "mult": [[0,0,0,1],[0,1,1,1],[1,2,1,1],[2,2,2,1]]}
        },
        "extension": {"sub": "T", "over": "M", "map": [[1,0,0],[0,1,0],[0,0,0],[0,0,1]]},
        "tasks": ["analyze"]
    }"#;

    #[test]
    fn minimal_job() {
        let j = parse(MINIMAL, Overrides::default()).unwrap();
        assert_eq!((j.ext.dim_n(), j.ext.dim_m()), (3, 4));
        assert_eq!(j.tasks, vec![Task::Analyze]);
        assert_eq!(j.check_level, CheckLevel::Full);
        assert_eq!(j.max_dim, DEFAULT_MAX_DIM);
        assert!(j.ext.proper);
    }

    #[test]
    fn unit_is_found_when_omitted() {
        let j = parse(&MINIMAL.replace(r#""unit": [1, 0, 1],"#, ""), Overrides::default()).unwrap();
        assert_eq!(j.ext.n.one(), vec![Field::Rational.one(), Field::Rational.zero(), Field::Rational.one()]);
    }

    #[test]
    fn missing_unit_names_the_law() {
        let bad = r#"{"algebras": {"Z": {"kind": "structure", "dim": 2, "mult": [[0,0,0,1]]}},
                      "extension": {"sub": "Z", "over": "Z", "map": [[1,0],[0,1]]}}"#;
        let e = parse(bad, Overrides::default()).unwrap_err();
        assert_eq!(e.path, "algebras.Z.unit");
        assert!(e.message.contains("unit law"), "{e}");
        let wrong = bad.replace(r#""dim": 2,"#, r#""dim": 2, "unit": [1, 0],"#);
        let e = parse(&wrong, Overrides::default()).unwrap_err();
        assert!(e.message.contains("unit law"), "{e}");
    }

    #[test]
    fn schema_errors_carry_paths() {
        let e = parse_spec(r#"{"algebras": {"M": {"kind": "matrix", "n": "two"}}}"#).unwrap_err();
        assert_eq!(e.path, "algebras.M");
        assert!(e.message.contains("\"two\""), "{e}");
        let e = parse_spec(r#"{"seed": -1}"#).unwrap_err();
        assert_eq!(e.path, "seed");
        let e = parse_spec(r#"{"algebras": {"M": {"kind": "quiver"}}}"#).unwrap_err();
        assert!(e.message.contains("quiver"), "{e}");
        let e = parse(&MINIMAL.replace(r#""over": "M""#, r#""over": "X""#), Overrides::default()).unwrap_err();
        assert_eq!(e.path, "extension.over");
        let e = parse(&MINIMAL.replace("[0,0,1]]}", "[0,0,1],[0,0,0]]}"), Overrides::default()).unwrap_err();
        assert_eq!(e.path, "extension.map");
    }

    #[test]
    fn caps_are_enforced() {
        let e = parse(MINIMAL, Overrides { max_dim: Some(3), ..Default::default() }).unwrap_err();
        assert!(e.message.contains("exceeds the cap"), "{e}");
        let e = parse(MINIMAL, Overrides { max_dim: Some(0), ..Default::default() }).unwrap_err();
        assert_eq!(e.path, "maxDim");
    }

    #[test]
    fn gallery_reference_expands() {
        let j = parse(r#"{"example": "kC2_in_kC4", "tasks": ["d2", "analyze"]}"#, Overrides::default()).unwrap();
        assert_eq!((j.ext.dim_n(), j.ext.dim_m()), (2, 4));
        assert_eq!(j.tasks, vec![Task::Analyze, Task::D2]);
        let e = parse(r#"{"example": "nope"}"#, Overrides::default()).unwrap_err();
        assert_eq!(e.path, "example");
    }

    #[test]
    fn spec_round_trips_through_json() {
        for name in gallery::names() {
            let spec = gallery::job(name).unwrap();
            let text = serde_json::to_string_pretty(&spec).unwrap();
            assert_eq!(parse_spec(&text).unwrap(), spec);
            let a = validate(&spec, Overrides::default()).unwrap();
            let b = gallery::extension(name).unwrap();
            assert_eq!((a.ext.n, a.ext.m, a.ext.iota.matrix), (b.n, b.m, b.iota.matrix));
        }
    }
}
