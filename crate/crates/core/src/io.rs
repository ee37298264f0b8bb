//! Text formats, run manifests and the on-disk Jacobi basis cache.
//!
//! Siegel coefficient files are line oriented:
//!
//! ```text
//! # siegel weight=10 precision=3
//! 0 0 0 0/1
//! 0 0 1 0/1
//! ...
//! ```
//!
//! one `n r m num/den` record per reduced `T` in `(m, n, r)` order, zeros
//! included. Jacobi basis files carry `i n r num/den` records for the
//! nonzero canonical coefficients of element `i`. All output is UTF-8 with
//! LF line endings; rationals are in lowest terms with a leading `-` on
//! negative numerators.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::formal_fj::{extract_siegel_fourier, FMBasis, JacobiSource, SiegelFourier};
use crate::jacobi::{jacobi_basis, JacobiBasis};
use crate::linalg::{CoeffVector, EchelonBasis, Rational};

pub const MANIFEST_FORMAT: &str = "siegel-fj-manifest/1";
pub const MANIFEST_NAME: &str = "manifest.toml";

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let den = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(num, den))
}

fn parse_int(field: &str, what: &str, line: usize) -> Result<i64> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {field:?}")))
}

/// Parses `# <kind> key=value ...` into the values for `keys`, in order.
fn parse_header(text: &str, kind: &str, keys: &[&str]) -> Result<Vec<i64>> {
    let first = text.lines().next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut fields = first.split_whitespace();
    if fields.next() != Some("#") || fields.next() != Some(kind) {
        return Err(Error::parse(1, format!("expected header `# {kind} ...`")));
    }
    let pairs: Vec<(&str, &str)> = fields.filter_map(|f| f.split_once('=')).collect();
    keys.iter()
        .map(|key| {
            let value = pairs
                .iter()
                .find(|(k, _)| k == key)
                .ok_or_else(|| Error::parse(1, format!("header is missing `{key}`")))?
                .1;
            parse_int(value, key, 1)
        })
        .collect()
}

/// Records after the header, with 1-based line numbers; blank lines and
/// `#` comments are skipped.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(i, line)| (i, line.split_whitespace().collect()))
}

pub fn serialize_siegel(sf: &SiegelFourier) -> String {
    let mut out = format!("# siegel weight={} precision={}\n", sf.weight(), sf.precision());
    for ((n, r, m), c) in sf.entries() {
        writeln!(out, "{n} {r} {m} {}", format_rational(c)).expect("write to String");
    }
    out
}

pub fn deserialize_siegel(text: &str) -> Result<SiegelFourier> {
    let header = parse_header(text, "siegel", &["weight", "precision"])?;
    let (weight, precision) = (header[0], header[1]);
    if precision < 1 {
        return Err(Error::parse(1, "precision must be positive"));
    }
    let mut entries = Vec::new();
    let mut last: Option<(i64, i64, i64)> = None;
    for (line, fields) in records(text) {
        let [n, r, m, c] = fields[..] else {
            return Err(Error::parse(line, "expected `n r m num/den`"));
        };
        let (n, r, m) = (parse_int(n, "n", line)?, parse_int(r, "r", line)?, parse_int(m, "m", line)?);
        let c = parse_rational(c).map_err(|e| Error::parse(line, e))?;
        if last.is_some_and(|prev| prev >= (m, n, r)) {
            return Err(Error::parse(line, "records are not in (m, n, r) order"));
        }
        last = Some((m, n, r));
        entries.push(((n, r, m), c));
    }
    SiegelFourier::from_entries(weight, precision as usize, entries)
        .map_err(|e| Error::parse(0, e.to_string()))
}

pub fn serialize_jacobi(basis: &JacobiBasis) -> String {
    let mut out = format!(
        "# jacobi weight={} index={} precision={} dimension={}\n",
        basis.weight(),
        basis.index(),
        basis.precision(),
        basis.dim()
    );
    for (i, row) in basis.echelon().rows().iter().enumerate() {
        for (&(n, r), c) in row.iter() {
            writeln!(out, "{i} {n} {r} {}", format_rational(c)).expect("write to String");
        }
    }
    out
}

pub fn deserialize_jacobi(text: &str) -> Result<JacobiBasis> {
    let header = parse_header(text, "jacobi", &["weight", "index", "precision", "dimension"])?;
    let (weight, index, precision, dim) = (header[0], header[1], header[2], header[3]);
    if precision < 1 || dim < 0 {
        return Err(Error::parse(1, "bad precision or dimension"));
    }
    let mut rows: Vec<CoeffVector<(i64, i64)>> = vec![CoeffVector::new(); dim as usize];
    let mut last: Option<(i64, i64, i64)> = None;
    for (line, fields) in records(text) {
        let [i, n, r, c] = fields[..] else {
            return Err(Error::parse(line, "expected `i n r num/den`"));
        };
        let (i, n, r) = (parse_int(i, "i", line)?, parse_int(n, "n", line)?, parse_int(r, "r", line)?);
        let c = parse_rational(c).map_err(|e| Error::parse(line, e))?;
        if !(0..dim).contains(&i) {
            return Err(Error::parse(line, format!("element {i} out of range")));
        }
        if c.is_zero() {
            return Err(Error::parse(line, "zero coefficients are not stored"));
        }
        if last.is_some_and(|prev| prev >= (i, n, r)) {
            return Err(Error::parse(line, "records are not in (i, n, r) order"));
        }
        last = Some((i, n, r));
        rows[i as usize].set((n, r), c);
    }
    let echelon = EchelonBasis::from_reduced_rows(rows)
        .ok_or_else(|| Error::parse(0, "rows are not in reduced row-echelon form"))?;
    JacobiBasis::new(weight, index, precision as usize, echelon).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub sha256: String,
}

/// Summary of a `compute` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub weight: i64,
    pub precision: usize,
    pub dimension: usize,
    #[serde(default)]
    pub elements: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let manifest: Manifest = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(0);
            Error::parse(line, e.message().to_string())
        })?;
        if manifest.format != MANIFEST_FORMAT {
            return Err(Error::parse(1, format!("unknown manifest format {:?}", manifest.format)));
        }
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&read_to_string(path)?).map_err(|e| e.with_path(path))
    }
}

pub fn element_file_name(i: usize) -> String {
    format!("element-{i:03}.txt")
}

/// Writes one coefficient file per basis element plus `manifest.toml`.
pub fn write_run(out_dir: &Path, fm: &FMBasis) -> Result<Manifest> {
    let mut elements = Vec::with_capacity(fm.dim());
    for (i, elem) in fm.elements().iter().enumerate() {
        let sf = extract_siegel_fourier(elem)?;
        let text = serialize_siegel(&sf);
        let file = element_file_name(i);
        atomic_write(&out_dir.join(&file), text.as_bytes())?;
        elements.push(ManifestEntry {
            file,
            sha256: sha256_hex(text.as_bytes()),
        });
    }
    let manifest = Manifest {
        format: MANIFEST_FORMAT.to_string(),
        weight: fm.weight(),
        precision: fm.precision(),
        dimension: fm.dim(),
        elements,
    };
    atomic_write(&out_dir.join(MANIFEST_NAME), manifest.to_toml().as_bytes())?;
    Ok(manifest)
}

/// Jacobi bases keyed by `(k, m, B)` under a cache directory.
#[derive(Clone, Debug)]
pub struct JacobiCache {
    dir: PathBuf,
}

impl JacobiCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, k: i64, m: i64, precision: usize) -> PathBuf {
        self.dir.join(format!("jacobi-k{k}-m{m}-B{precision}.txt"))
    }
}

impl JacobiSource for JacobiCache {
    fn jacobi_basis(&self, k: i64, m: i64, precision: usize) -> Result<JacobiBasis> {
        let path = self.path_for(k, m, precision);
        if path.exists() {
            let cached = deserialize_jacobi(&read_to_string(&path)?).map_err(|e| e.with_path(&path))?;
            if (cached.weight(), cached.index(), cached.precision()) == (k, m, precision) {
                return Ok(cached);
            }
        }
        let basis = jacobi_basis(k, m, precision)?;
        atomic_write(&path, serialize_jacobi(&basis).as_bytes())?;
        Ok(basis)
    }
}
