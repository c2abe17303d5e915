//! Shipped fixture files and where to read fixture files from.

use std::path::{Path, PathBuf};

use crate::error::InputError;

/// Every shipped fixture, keyed by file name.
pub const EMBEDDED: &[(&str, &str)] = &[
    ("h108.grp", include_str!("../fixtures/h108.grp")),
    ("k648.grp", include_str!("../fixtures/k648.grp")),
    ("c3.grp", include_str!("../fixtures/c3.grp")),
    ("alt6.grp", include_str!("../fixtures/alt6.grp")),
    ("table1.tsv", include_str!("../fixtures/table1.tsv")),
    ("table2.tsv", include_str!("../fixtures/table2.tsv")),
    ("table3.tsv", include_str!("../fixtures/table3.tsv")),
    ("table4.tsv", include_str!("../fixtures/table4.tsv")),
    ("h108.lambda", include_str!("../fixtures/h108.lambda")),
    ("k648.lambda", include_str!("../fixtures/k648.lambda")),
    ("h108.gamma.tsv", include_str!("../fixtures/h108.gamma.tsv")),
    ("h108.gram.tsv", include_str!("../fixtures/h108.gram.tsv")),
    ("k648.gamma.tsv", include_str!("../fixtures/k648.gamma.tsv")),
    ("h108.problem", include_str!("../fixtures/h108.problem")),
    ("k648.problem", include_str!("../fixtures/k648.problem")),
    ("c3.problem", include_str!("../fixtures/c3.problem")),
    ("thm108.elim", include_str!("../fixtures/thm108.elim")),
    ("frag1.elim", include_str!("../fixtures/frag1.elim")),
    ("frag2.elim", include_str!("../fixtures/frag2.elim")),
    ("frag3.elim", include_str!("../fixtures/frag3.elim")),
    ("frag4.elim", include_str!("../fixtures/frag4.elim")),
];

/// Resolves fixture names, either from the embedded set or a directory.
#[derive(Clone, Debug)]
pub enum Source {
    Embedded,
    /// Files in the directory win; missing ones fall back to the embedded set.
    Dir(PathBuf),
}

impl Source {
    /// The directory holding `path`, for resolving names relative to a file.
    pub fn beside(path: &Path) -> Source {
        Source::Dir(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    pub fn read(&self, name: &str) -> Result<String, InputError> {
        if let Source::Dir(dir) = self {
            let p = dir.join(name);
            if p.exists() {
                return std::fs::read_to_string(&p)
                    .map_err(|source| InputError::Io { path: p.display().to_string(), source });
            }
        }
        embedded(name).map(str::to_string).ok_or_else(|| InputError::Other(format!("fixture {name:?} not found")))
    }
}

pub fn embedded(name: &str) -> Option<&'static str> {
    EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Reads a file given on the command line: an existing path, or else the
/// name of an embedded fixture (with or without a `fixtures/` prefix).
pub fn read_path_or_fixture(arg: &str) -> Result<(String, Source), InputError> {
    let p = Path::new(arg);
    if p.exists() {
        let text = std::fs::read_to_string(p).map_err(|source| InputError::Io { path: arg.to_string(), source })?;
        return Ok((text, Source::beside(p)));
    }
    let name = p.file_name().and_then(|n| n.to_str()).unwrap_or(arg);
    embedded(name)
        .map(|t| (t.to_string(), Source::Embedded))
        .ok_or_else(|| InputError::Other(format!("{arg}: no such file or shipped fixture")))
}
