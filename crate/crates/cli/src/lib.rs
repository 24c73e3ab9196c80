//! Batch front end for the resolution engine.

pub mod job;
pub mod report;

pub use job::{parse, Command, JobInput, JobSpec, Options};
pub use report::{execute, Report, Status};
