//! TOML files describing a based root datum (and optionally an inner class), or a
//! lattice involution for `torus-h1`.
//!
//! ```toml
//! schema_version = 1
//! cartan_type = "A1"
//! roots = [[2]]      # simple roots, rows in X^*
//! coroots = [[1]]    # simple coroots, rows in X_*
//!
//! [inner_class]      # optional; one of kind, permutation, tau
//! kind = "compact"
//! ```

use std::path::Path;

use galcoh_core::exactlat::IntMatrix;
use galcoh_core::rootdata::{BasedRootDatum, CartanType, InnerClass};
use serde::Deserialize;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub schema_version: u32,
    pub cartan_type: String,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pub inner_class: Option<InnerClassSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerClassSpec {
    pub kind: Option<String>,
    pub permutation: Option<Vec<usize>>,
    pub tau: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub schema_version: u32,
    pub matrix: Vec<Vec<i64>>,
}

fn check_version(v: u32) -> Result<(), CliError> {
    if v != SCHEMA_VERSION {
        return Err(CliError::resolution(format!("unsupported schema_version {v} (expected {SCHEMA_VERSION})")));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::resolution(format!("{}: {e}", path.display())))
}

fn matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix, CliError> {
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(CliError::resolution(format!("{what}: rows have different lengths")));
    }
    Ok(IntMatrix::from_rows(rows))
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let f: DatumFile = toml::from_str(text).map_err(|e| CliError::resolution(format!("datum file: {e}")))?;
        check_version(f.schema_version)?;
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }

    pub fn datum(&self) -> Result<BasedRootDatum, CliError> {
        let t: CartanType = self.cartan_type.parse()?;
        let rd = BasedRootDatum::from_matrices(t, matrix(&self.roots, "roots")?, matrix(&self.coroots, "coroots")?)?;
        Ok(rd)
    }

    /// The inner class named in the file, if any.
    pub fn inner_class(&self, rd: &BasedRootDatum) -> Result<Option<InnerClass>, CliError> {
        let Some(spec) = &self.inner_class else { return Ok(None) };
        let given = [spec.kind.is_some(), spec.permutation.is_some(), spec.tau.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::resolution("inner_class: give exactly one of kind, permutation, tau"));
        }
        if let Some(kind) = &spec.kind {
            return parse_inner(kind, rd).map(Some);
        }
        if let Some(p) = &spec.permutation {
            return Ok(Some(InnerClass::from_permutation(rd, p)?));
        }
        let tau = matrix(spec.tau.as_ref().expect("checked"), "tau")?;
        Ok(Some(InnerClass::from_matrix(rd, tau)?))
    }
}

impl MatrixFile {
    pub fn load(path: &Path) -> Result<IntMatrix, CliError> {
        let f: MatrixFile =
            toml::from_str(&read(path)?).map_err(|e| CliError::resolution(format!("matrix file: {e}")))?;
        check_version(f.schema_version)?;
        matrix(&f.matrix, "matrix")
    }
}

/// `compact`, `flip`, or `perm:i,j,...`.
pub fn parse_inner(s: &str, rd: &BasedRootDatum) -> Result<InnerClass, CliError> {
    match s {
        "compact" | "equal-rank" => Ok(InnerClass::compact(rd)),
        "flip" | "split" => {
            if !rd.cartan_type().has_flip() {
                return Err(CliError::resolution(format!("{} has no diagram involution", rd.cartan_type())));
            }
            Ok(InnerClass::flip(rd)?)
        }
        _ => {
            let list = s
                .strip_prefix("perm:")
                .ok_or_else(|| CliError::resolution(format!("unknown inner class {s:?}")))?;
            let perm = list
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::resolution(format!("bad permutation {list:?}")))?;
            Ok(InnerClass::from_permutation(rd, &perm)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a1() {
        let f = DatumFile::parse("schema_version = 1\ncartan_type = \"A1\"\nroots = [[2]]\ncoroots = [[1]]\n[inner_class]\nkind = \"compact\"\n").unwrap();
        let rd = f.datum().unwrap();
        assert_eq!(rd.rank(), 1);
        assert!(f.inner_class(&rd).unwrap().unwrap().is_equal_rank());
    }

    #[test]
    fn schema_version_required() {
        assert!(DatumFile::parse("cartan_type = \"A1\"\nroots = [[2]]\ncoroots = [[1]]\n").is_err());
        assert!(DatumFile::parse("schema_version = 2\ncartan_type = \"A1\"\nroots = [[2]]\ncoroots = [[1]]\n").is_err());
    }

    #[test]
    fn rejects_bad_cartan() {
        let f = DatumFile::parse("schema_version = 1\ncartan_type = \"A1\"\nroots = [[1]]\ncoroots = [[1]]\n").unwrap();
        assert!(f.datum().is_err());
    }
}
