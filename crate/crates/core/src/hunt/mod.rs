//! Group files, the equivalence/contractibility filters, full reports, batch
//! runs over a directory, and DOT export.

pub mod batch;
pub mod construct;
pub mod dot;
pub mod filters;
pub mod parse;
pub mod report;

pub use batch::{run_batch, BatchOptions, BatchResult, BatchRow, BatchSummary, PrimeSelection, RowOutcome};
pub use dot::{export_dot, DotKind};
pub use filters::{filter_equivalence, filter_contractibility, EquivalenceCase, EquivalenceVerdict, ContractibilityCase, ContractibilityVerdict};
pub use parse::{parse_group_file, GroupFile};
pub use report::{analyze_file, analyze_group, AnalyzeOptions, Deadline, HomotopyReport, StepCount, SubgroupPosets};

/// The bundled fixture catalog shipped with this crate.
pub fn catalog_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")
}
