//! Benchmark driver: test corpora, suite runner, CSV reports, the command
//! line and the HTTP service behind the ground-truth ordering tool.

pub mod cases;
pub mod cli;
pub mod report;
pub mod serve;
pub mod suite;

pub use cases::{CaseSource, CorpusEntry, Perturbation, Provenance, TestCase};
pub use report::{write_report, ReportFiles};
pub use suite::{run_case, run_suite, run_suite_on, Outcome, SuiteConfig, SuiteKind, SuiteReport};
