//! Job files, the example gallery, the task pipeline and report rendering behind `d2kit`.

pub mod gallery;
mod job;
mod render;
mod report;
mod run;

pub use job::{
    expand, field_spec, parse, parse_spec, spec_of, structure_def, validate, AlgebraDef, ExtensionDef, FieldSpec, Job, JobError, JobSpec, Lit,
    Overrides, Task, DEFAULT_MAX_DIM,
};
pub use render::{json, markdown, render, Format};
pub use report::{Dims, Flag, Profile, Report, Section, Status};
pub use run::run;

/// Exit status for input errors.
pub const EXIT_INPUT: i32 = 3;
