//! Bundled example inputs, addressed on the command line as `@name`.
//!
//! Setting `HYPERLAT_FIXTURES` to a directory makes `@name` read
//! `<dir>/<name>.json` instead.

use std::path::PathBuf;

pub const ENV_VAR: &str = "HYPERLAT_FIXTURES";

pub const BUNDLED: &[(&str, &str)] = &[
    ("u", include_str!("../fixtures/u.json")),
    ("u2", include_str!("../fixtures/u2.json")),
    ("u-a1", include_str!("../fixtures/u-a1.json")),
    ("z2", include_str!("../fixtures/z2.json")),
    ("u-identity", include_str!("../fixtures/u-identity.json")),
    ("u-swap", include_str!("../fixtures/u-swap.json")),
    ("u-double", include_str!("../fixtures/u-double.json")),
    ("z2-swap", include_str!("../fixtures/z2-swap.json")),
    ("z2-embedding", include_str!("../fixtures/z2-embedding.json")),
    ("salem", include_str!("../fixtures/salem.json")),
    ("salem-isometry", include_str!("../fixtures/salem-isometry.json")),
    ("salem-embedding", include_str!("../fixtures/salem-embedding.json")),
    ("rank22", include_str!("../fixtures/rank22.json")),
    ("rank22-isometry", include_str!("../fixtures/rank22-isometry.json")),
    ("rank22-embedding", include_str!("../fixtures/rank22-embedding.json")),
];

/// Where a fixture comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Bundled(&'static str),
    File(PathBuf),
}

pub fn override_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn lookup(name: &str) -> Option<Source> {
    if let Some(dir) = override_dir() {
        let path = dir.join(format!("{name}.json"));
        return path.is_file().then_some(Source::File(path));
    }
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| Source::Bundled(text))
}

/// Sorted fixture names from the active source.
pub fn names() -> std::io::Result<Vec<String>> {
    let mut out: Vec<String> = match override_dir() {
        Some(dir) => std::fs::read_dir(dir)?
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let p = e.path();
                (p.extension()? == "json").then(|| p.file_stem()?.to_str().map(str::to_owned))?
            })
            .collect(),
        None => BUNDLED.iter().map(|(n, _)| n.to_string()).collect(),
    };
    out.sort();
    Ok(out)
}
