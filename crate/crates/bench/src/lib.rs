//! Shared inputs for the benchmarks.

use pspace::group::DEFAULT_MAX_ORDER;
use pspace::hunt::catalog_dir;
use pspace::{Group, GroupFile};

/// A bundled fixture by file stem, e.g. `"S3wrZ2"`.
pub fn fixture(name: &str) -> Group {
    let path = catalog_dir().join(format!("{name}.grp"));
    GroupFile::load(&path)
        .and_then(|f| f.group(DEFAULT_MAX_ORDER))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}
