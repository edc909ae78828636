//! Command-line front end: germ files, the analysis pipeline and reports.

pub mod grammar;

pub use grammar::{Directive, GermFile, Statement};
pub mod pipeline;

pub use pipeline::{analyze, analyze_file, verify, Report, Settings};
pub mod app;

pub use app::{exit_code, main_with_args, Cli, FileReport, Format};
