//! Reading inputs (files or `@fixtures`) and writing results.

use std::io::Write;
use std::path::{Path, PathBuf};

use hyperlat::json::parse_vector;
use hyperlat::lattice::{EmbeddingFile, IsometryFile, LatticeFile};
use hyperlat::{Embedding, Isometry, Lattice, LatticeVector};
use serde::de::DeserializeOwned;

use crate::error::CliError;
use crate::fixtures::{self, Source};

/// Returns the text behind `input`, which is a path or `@name`.
pub fn read_input(input: &str) -> Result<String, CliError> {
    let path = match input.strip_prefix('@') {
        Some(name) => match fixtures::lookup(name) {
            Some(Source::Bundled(text)) => return Ok(text.to_string()),
            Some(Source::File(path)) => path,
            None => return Err(CliError::UnknownFixture(name.to_string())),
        },
        None => PathBuf::from(input),
    };
    std::fs::read_to_string(&path).map_err(|source| CliError::Io { path, source })
}

fn parse<T: DeserializeOwned>(input: &str, what: &str) -> Result<T, CliError> {
    let text = read_input(input)?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { what: format!("{what} {input}"), source })
}

pub fn load_lattice(input: &str) -> Result<Lattice, CliError> {
    let file: LatticeFile = parse(input, "lattice")?;
    Ok(Lattice::from_json(&file)?)
}

pub fn load_isometry(input: &str, lattice: &Lattice) -> Result<Isometry, CliError> {
    let file: IsometryFile = parse(input, "isometry")?;
    Ok(file.resolve(lattice)?)
}

pub fn load_embedding(input: &str, lattice: &Lattice) -> Result<Embedding, CliError> {
    let file: EmbeddingFile = parse(input, "embedding")?;
    Ok(file.resolve(lattice)?)
}

pub fn vector_arg(lattice: &Lattice, text: &str) -> Result<LatticeVector, CliError> {
    Ok(lattice.vector(parse_vector(text)?)?)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(text.as_bytes()).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
