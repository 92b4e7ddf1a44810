use std::collections::HashSet;

use pspace::group::DEFAULT_MAX_ORDER;
use pspace::hunt::batch::group_files;
use pspace::hunt::{catalog_dir, parse_group_file, GroupFile};

fn declared_order(text: &str) -> Option<usize> {
    text.lines()
        .find_map(|l| l.strip_prefix("# order:"))
        .and_then(|v| v.trim().parse().ok())
}

#[test]
fn every_fixture_has_its_declared_order() {
    let files = group_files(&catalog_dir()).unwrap();
    assert!(files.len() >= 60, "catalog has only {} files", files.len());
    let mut names = HashSet::new();
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let file = GroupFile::load(&path).unwrap();
        assert!(names.insert(file.name.clone()), "duplicate name {}", file.name);
        let g = file.group(DEFAULT_MAX_ORDER).unwrap();
        let want = declared_order(&text).unwrap_or_else(|| panic!("{} lacks an order line", path.display()));
        assert_eq!(g.order(), want, "{}", path.display());
    }
}

#[test]
fn fixtures_round_trip_through_text() {
    for path in group_files(&catalog_dir()).unwrap() {
        let file = GroupFile::load(&path).unwrap();
        let again = parse_group_file(&file.to_text()).unwrap();
        assert_eq!(again.name, file.name);
        assert_eq!(again.degree, file.degree);
        assert_eq!(again.generators, file.generators);
    }
}

#[test]
fn named_fixtures_are_present() {
    let dir = catalog_dir();
    for name in ["S3", "S4", "S5", "A4", "A5", "Q8", "D3", "D12", "S3xS3", "S3wrZ2", "D4xZ2", "SL2_3", "Dic12", "G576"] {
        assert!(dir.join(format!("{name}.grp")).is_file(), "{name}");
    }
}
