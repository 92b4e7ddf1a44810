//! The plain-text group file format.
//!
//! ```text
//! # name: S4
//! degree 4
//! gen (1 2)
//! gen (1 2 3 4)
//! ```
//!
//! Points are 1-based; other `#` lines are comments.

use std::fmt::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupFile {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Perm>) -> Self {
        Self {
            name: name.into(),
            degree,
            generators,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut file = parse_group_file(&text)?;
        if file.name.is_empty() {
            file.name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
        }
        Ok(file)
    }

    pub fn group(&self, max_order: usize) -> Result<Group> {
        Group::closure(self.degree, &self.generators, max_order)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            writeln!(out, "# name: {}", self.name).unwrap();
        }
        writeln!(out, "degree {}", self.degree).unwrap();
        for g in &self.generators {
            writeln!(out, "gen {g}").unwrap();
        }
        out
    }
}

/// Parses a group file. The name is empty when the file has no `# name:` line.
pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut name = String::new();
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let indent = raw.len() - raw.trim_start().len();
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim_start().strip_prefix("name:") {
                name = n.trim().to_string();
            }
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest_col = indent + keyword.len() + 1 + (rest.len() - rest.trim_start().len()) + 1;
        let rest = rest.trim();
        match keyword {
            "degree" => {
                let d: usize = rest.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    column: rest_col,
                    msg: format!("expected a positive degree, found {rest:?}"),
                })?;
                if d == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        column: rest_col,
                        msg: "degree must be positive".into(),
                    });
                }
                if let Some(prev) = degree {
                    if prev != d {
                        return Err(Error::DegreeMismatch {
                            expected: prev,
                            found: d,
                        });
                    }
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or(Error::Parse {
                    line: line_no,
                    column: indent + 1,
                    msg: "`gen` before `degree`".into(),
                })?;
                let largest = rest
                    .split(|c: char| !c.is_ascii_digit())
                    .filter_map(|t| t.parse::<usize>().ok())
                    .max()
                    .unwrap_or(0);
                if largest > d {
                    return Err(Error::DegreeMismatch {
                        expected: d,
                        found: largest,
                    });
                }
                let perm = Perm::parse_cycles(rest, d).map_err(|e| match e {
                    Error::Parse { column, msg, .. } => Error::Parse {
                        line: line_no,
                        column: rest_col + column - 1,
                        msg,
                    },
                    other => other,
                })?;
                generators.push(perm);
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    column: indent + 1,
                    msg: format!("unknown directive {other:?}"),
                })
            }
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        column: 1,
        msg: "missing `degree` line".into(),
    })?;
    Ok(GroupFile {
        name,
        degree,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_counterexample_generators() {
        let f = parse_group_file("# name: G576\ndegree 8\ngen (1 2 8 3)(4 7)\ngen (1 6 3 7 8 5)(2 4)\n")
            .unwrap();
        assert_eq!(f.name, "G576");
        assert_eq!(f.degree, 8);
        assert_eq!(f.generators.len(), 2);
        assert_eq!(f.generators[0].image(0), 1);
        assert_eq!(f.generators[0].image(2), 0);
        assert_eq!(f.group(4096).unwrap().order(), 576);
    }

    #[test]
    fn round_trip() {
        let f = parse_group_file("degree 4\ngen (1 2)\n  gen (1 2 3 4)\n\n# trailing\n").unwrap();
        assert_eq!(f.name, "");
        assert_eq!(f.group(100).unwrap().order(), 24);
        let again = parse_group_file(&f.to_text()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn repeated_point_is_rejected() {
        let err = parse_group_file("degree 3\ngen (1 2)(2 3)\n").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 11);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            parse_group_file("degree 3\ngen (1 4)\n"),
            Err(Error::DegreeMismatch { expected: 3, found: 4 })
        ));
        assert!(matches!(
            parse_group_file("degree 3\ndegree 4\n"),
            Err(Error::DegreeMismatch { expected: 3, found: 4 })
        ));
        assert!(matches!(
            parse_group_file("gen (1 2)\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_group_file("degree 3\ngen (1 2\n"),
            Err(Error::Parse { line: 2, column: 5, .. })
        ));
        assert!(matches!(
            parse_group_file("degree x\n"),
            Err(Error::Parse { line: 1, column: 8, .. })
        ));
        assert!(matches!(
            parse_group_file("order 3\n"),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
        assert!(parse_group_file("").is_err());
    }
}
