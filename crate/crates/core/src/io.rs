//! JSON documents: the `povm-json` format and a float formatter that writes
//! every `f64` with 17 significant digits.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::operator::{validate_povm, Povm};
use crate::tolerance::Tolerances;

/// Row-major list of rows, each entry a `[re, im]` pair.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(transparent)]
pub struct MatrixDoc(pub Vec<Vec<[f64; 2]>>);

impl From<&CMatrix> for MatrixDoc {
    fn from(m: &CMatrix) -> Self {
        MatrixDoc(
            (0..m.nrows())
                .map(|i| {
                    (0..m.ncols())
                        .map(|j| [m[(i, j)].re, m[(i, j)].im])
                        .collect()
                })
                .collect(),
        )
    }
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.0.len();
        if rows == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let cols = self.0[0].len();
        if cols == 0 || self.0.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged or empty matrix rows".into()));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            let [re, im] = self.0[i][j];
            c(re, im)
        }))
    }
}

/// `{ "dim": d, "effects": [matrix, ...] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PovmDoc {
    pub dim: usize,
    pub effects: Vec<MatrixDoc>,
}

impl From<&Povm> for PovmDoc {
    fn from(p: &Povm) -> Self {
        PovmDoc {
            dim: p.dim(),
            effects: p
                .effects()
                .iter()
                .map(|e| MatrixDoc::from(e.matrix()))
                .collect(),
        }
    }
}

impl PovmDoc {
    pub fn to_povm(&self, tol: &Tolerances) -> Result<Povm> {
        let effects = self
            .effects
            .iter()
            .map(MatrixDoc::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        validate_povm(effects, self.dim, tol)
    }
}

/// Writes `f64` values as `{:.16e}` (17 significant digits).
pub struct PreciseFormatter;

impl serde_json::ser::Formatter for PreciseFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = to_json_string(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn povm_to_json(povm: &Povm) -> Result<String> {
    to_json_string(&PovmDoc::from(povm))
}

pub fn povm_from_json(text: &str, tol: &Tolerances) -> Result<Povm> {
    let doc: PovmDoc = serde_json::from_str(text)?;
    doc.to_povm(tol)
}

pub fn read_povm(path: &Path, tol: &Tolerances) -> Result<Povm> {
    povm_from_json(&std::fs::read_to_string(path)?, tol)
}

pub fn write_povm(path: &Path, povm: &Povm) -> Result<()> {
    write_json(path, &PovmDoc::from(povm))
}
