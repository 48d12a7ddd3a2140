use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::basis::enumerate_basis;
use super::mode::{AlgebraConfig, Sector};
use super::monomial::{canonical_form, Canonical, Monomial};
use super::FockError;
use crate::linalg::Rational;

const MAGIC: &str = "symfer-basis v1";

/// On-disk cache of graded bases, one text file per `(d, sector, weight, parity)`.
#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, cfg: &AlgebraConfig, sector: Sector, w: &Rational, even_only: bool) -> PathBuf {
        let parity = if even_only { "even" } else { "all" };
        self.dir.join(format!("basis-d{}-{}-w{}_{}-{}.txt", cfg.d(), sector.name(), w.numer(), w.denom(), parity))
    }

    fn header(cfg: &AlgebraConfig, sector: Sector, w: &Rational, even_only: bool) -> String {
        let parity = if even_only { "even" } else { "all" };
        format!("{MAGIC} d={} sector={} w={} parity={}", cfg.d(), sector.name(), w.to_fraction_string(), parity)
    }

    /// Returns the cached basis, recomputing (and rewriting the file) when it
    /// is missing, corrupt, or written by another format version.
    pub fn load_or_compute(
        &self,
        cfg: &AlgebraConfig,
        sector: Sector,
        w: &Rational,
        even_only: bool,
    ) -> Result<Vec<Monomial>, FockError> {
        let path = self.path_for(cfg, sector, w, even_only);
        let header = Self::header(cfg, sector, w, even_only);
        match fs::read_to_string(&path) {
            Ok(text) => match parse(&text, &header, sector) {
                Ok(list) => return Ok(list),
                Err(why) => log::warn!("discarding basis cache {}: {why}", path.display()),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => log::warn!("cannot read basis cache {}: {e}", path.display()),
        }
        let list = enumerate_basis(cfg, sector, w, even_only)?;
        self.write(&path, &header, &list)?;
        Ok(list)
    }

    fn write(&self, path: &Path, header: &str, list: &[Monomial]) -> Result<(), FockError> {
        let io = |e: std::io::Error| FockError::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        let mut body = String::with_capacity(header.len() + 16 * list.len());
        body.push_str(header);
        body.push('\n');
        for m in list {
            body.push_str(&m.to_tokens());
            body.push('\n');
        }
        tmp.write_all(body.as_bytes()).map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

fn parse(text: &str, header: &str, sector: Sector) -> Result<Vec<Monomial>, String> {
    let (first, rest) = text.split_once('\n').ok_or("missing header")?;
    if first != header {
        return Err(format!("header mismatch: {first:?}"));
    }
    let mut out = Vec::new();
    for (i, line) in rest.split_terminator('\n').enumerate() {
        let modes = Monomial::parse_tokens(line).map_err(|e| format!("line {}: {e}", i + 2))?;
        match canonical_form(sector, &modes) {
            Ok(Canonical::Term { sign: 1, monomial }) => out.push(monomial),
            _ => return Err(format!("line {} is not a canonical monomial", i + 2)),
        }
    }
    Ok(out)
}
