//! On-disk cache of generated tables.
//!
//! One text file per `(m, budget)`:
//!
//! ```text
//! latticepath-cache v1
//! m 2 budget 7 rounds 1 gamma_only 0
//! <representative>\t<origin>\t<carrier>\t<witness>
//! ...
//! # sha256 <hex digest of every line above>
//! ```
//!
//! Operations are written in general form. A file whose version line is not
//! the current one is regenerated; a digest mismatch is an error.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use latticepath_core::hat::{GenStats, HatError, Orbit, Origin};
use latticepath_core::{generate, GenTable, PathOp, Witness};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const VERSION: u32 = 1;
const MAGIC: &str = "latticepath-cache";

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "LATTICEPATH_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: not a cache file")]
    NotACache { path: PathBuf },
    #[error("{path}: cache version {found}, expected {VERSION}")]
    Stale { path: PathBuf, found: String },
    #[error("{path}: checksum mismatch")]
    Checksum { path: PathBuf },
    #[error("{path}:{line}: {reason}")]
    Record { path: PathBuf, line: usize, reason: String },
    #[error("{path}: holds m={m} budget={budget}")]
    WrongKey { path: PathBuf, m: usize, budget: usize },
    #[error(transparent)]
    Table(#[from] HatError),
}

/// What [`load_or_generate`] did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Loaded,
    Generated,
    /// An older format was found and replaced.
    Regenerated,
}

pub fn file_name(m: usize, budget: usize) -> String {
    format!("hat-m{m}-b{budget}.v{VERSION}.txt")
}

pub fn path_for(dir: &Path, m: usize, budget: usize) -> PathBuf {
    dir.join(file_name(m, budget))
}

/// The file contents for `table`. Deterministic: orbits are written in key
/// order.
pub fn render(table: &GenTable) -> String {
    let stats = table.stats();
    let mut body = String::new();
    writeln!(body, "{MAGIC} v{VERSION}").unwrap();
    writeln!(body, "m {} budget {} rounds {} gamma_only {}", table.m(), table.budget(), stats.rounds, stats.gamma_only)
        .unwrap();
    for (rep, orbit) in table.orbits() {
        writeln!(
            body,
            "{}\t{}\t{}\t{}",
            rep.to_general(),
            orbit.origin.as_str(),
            orbit.carrier.to_general(),
            orbit.witness
        )
        .unwrap();
    }
    let digest = hex(&Sha256::digest(body.as_bytes()));
    writeln!(body, "# sha256 {digest}").unwrap();
    body
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

/// Parses file contents. `path` is only used in error messages.
pub fn parse(text: &str, path: &Path) -> Result<GenTable, CacheError> {
    let err_path = || path.to_path_buf();
    let first = text.lines().next().unwrap_or("");
    let version = first.strip_prefix(MAGIC).map(str::trim).ok_or_else(|| CacheError::NotACache { path: err_path() })?;
    if version != format!("v{VERSION}") {
        return Err(CacheError::Stale { path: err_path(), found: version.to_string() });
    }
    let cut = text.rfind("# sha256 ").ok_or_else(|| CacheError::Checksum { path: err_path() })?;
    let (body, trailer) = text.split_at(cut);
    let stored = trailer.trim_start_matches("# sha256 ").trim();
    if hex(&Sha256::digest(body.as_bytes())) != stored {
        return Err(CacheError::Checksum { path: err_path() });
    }

    let mut lines = body.lines().enumerate().skip(1);
    let record = |line: usize, reason: String| CacheError::Record { path: err_path(), line: line + 1, reason };
    let (n, header) = lines.next().ok_or_else(|| record(1, "missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let number = |key: &str| -> Result<usize, CacheError> {
        fields
            .iter()
            .position(|f| *f == key)
            .and_then(|i| fields.get(i + 1))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| record(n, format!("header lacks {key}")))
    };
    let (m, budget) = (number("m")?, number("budget")?);
    let stats = GenStats { rounds: number("rounds")?, gamma_only: number("gamma_only")? };

    let mut orbits = Vec::new();
    for (n, line) in lines {
        let parts: Vec<&str> = line.split('\t').collect();
        let [rep, origin, carrier, witness] = parts[..] else {
            return Err(record(n, "expected 4 tab-separated fields".into()));
        };
        let origin = Origin::from_name(origin).ok_or_else(|| record(n, format!("unknown origin {origin:?}")))?;
        let carrier = PathOp::parse(carrier).map_err(|e| record(n, e.to_string()))?;
        let rep = PathOp::parse(rep).map_err(|e| record(n, e.to_string()))?;
        if carrier.sigma_canonical().0 != rep {
            return Err(record(n, "carrier is not in the orbit of its key".into()));
        }
        let witness: Witness =
            witness.parse().map_err(|e: latticepath_core::hat::WitnessSyntax| record(n, e.to_string()))?;
        orbits.push(Orbit { carrier, witness, origin });
    }
    Ok(GenTable::from_orbits(m, budget, stats, orbits)?)
}

/// Writes through a temporary file and a rename.
pub fn save(table: &GenTable, dir: &Path) -> Result<PathBuf, CacheError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CacheError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = path_for(dir, table.m(), table.budget());
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, render(table)).map_err(io_err(&tmp))?;
    fs::rename(&tmp, &path).map_err(io_err(&path))?;
    Ok(path)
}

/// Reads the table for `(m, budget)`; `Ok(None)` if there is no file.
pub fn load(dir: &Path, m: usize, budget: usize) -> Result<Option<GenTable>, CacheError> {
    let path = path_for(dir, m, budget);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(CacheError::Io { path, source }),
    };
    let table = parse(&text, &path)?;
    if table.m() != m || table.budget() != budget {
        return Err(CacheError::WrongKey { path, m: table.m(), budget: table.budget() });
    }
    Ok(Some(table))
}

/// Loads the cached table, generating and saving it when it is missing or
/// in an older format.
pub fn load_or_generate(dir: &Path, m: usize, budget: usize) -> Result<(GenTable, Source), CacheError> {
    let source = match load(dir, m, budget) {
        Ok(Some(t)) => return Ok((t, Source::Loaded)),
        Ok(None) => Source::Generated,
        Err(CacheError::Stale { .. }) => Source::Regenerated,
        Err(e) => return Err(e),
    };
    let table = generate(m, budget)?;
    save(&table, dir)?;
    Ok((table, source))
}
