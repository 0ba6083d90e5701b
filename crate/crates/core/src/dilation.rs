//! Minimal Naimark dilation `(M, P, J)` of a POVM.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{identity, max_abs, numerical_rank, CMatrix};
use crate::operator::Povm;

/// Dilation space of dimension `sum_j r_j` with the PVM `P_j` given by
/// consecutive coordinate blocks, and the isometry `J = sum |e_jk><f_jk|`.
#[derive(Clone, Debug)]
pub struct NaimarkDilation {
    pub dim: usize,
    pub dilation_dim: usize,
    pub block_sizes: Vec<usize>,
    /// `dilation_dim x dim`; row `(j, k)` is `f_jk*`.
    pub isometry: CMatrix,
}

impl NaimarkDilation {
    pub fn block_offsets(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |acc, &b| {
                let start = *acc;
                *acc += b;
                Some(start)
            })
            .collect()
    }

    /// Diagonal projection onto the coordinates of block `j`.
    pub fn projection(&self, j: usize) -> CMatrix {
        let start = self.block_offsets()[j];
        let mut p = CMatrix::zeros(self.dilation_dim, self.dilation_dim);
        for i in start..start + self.block_sizes[j] {
            p[(i, i)] = crate::linalg::c(1.0, 0.0);
        }
        p
    }

    /// `max |J*J - I|`
    pub fn isometry_defect(&self) -> f64 {
        max_abs(&(self.isometry.adjoint() * &self.isometry - identity(self.dim)))
    }

    /// `J* P_j J`
    pub fn compressed(&self, j: usize) -> CMatrix {
        self.isometry.adjoint() * self.projection(j) * &self.isometry
    }

    /// `max_j max |J* P_j J - M_j|`
    pub fn reconstruction_defect(&self, povm: &Povm) -> f64 {
        (0..self.block_sizes.len())
            .map(|j| max_abs(&(self.compressed(j) - povm.effect(j))))
            .fold(0.0, f64::max)
    }

    /// Rank of `[P_1 J | ... | P_N J]`; equals `dilation_dim` for a minimal dilation.
    pub fn spanning_rank(&self, rel_tol: f64) -> Result<usize> {
        let n = self.block_sizes.len();
        let mut stacked = CMatrix::zeros(self.dilation_dim, n * self.dim);
        for j in 0..n {
            let pj = self.projection(j) * &self.isometry;
            stacked
                .view_mut((0, j * self.dim), (self.dilation_dim, self.dim))
                .copy_from(&pj);
        }
        Ok(numerical_rank(&stacked, rel_tol)?.rank)
    }
}

pub fn minimal_dilation(povm: &Povm) -> NaimarkDilation {
    let spectral = povm.spectral();
    let block_sizes = spectral.ranks();
    let dilation_dim: usize = block_sizes.iter().sum();
    let mut isometry = CMatrix::zeros(dilation_dim, povm.dim());
    let rows = spectral.vectors.iter().flatten();
    for (row, f) in rows.enumerate() {
        isometry.set_row(row, &f.adjoint());
    }
    NaimarkDilation {
        dim: povm.dim(),
        dilation_dim,
        block_sizes,
        isometry,
    }
}

/// Serialized form emitted by the `dilate` command.
#[derive(Serialize)]
pub struct DilationDocument {
    pub dim: usize,
    pub dilation_dim: usize,
    pub block_sizes: Vec<usize>,
    pub isometry: crate::io::MatrixDoc,
}

impl From<&NaimarkDilation> for DilationDocument {
    fn from(d: &NaimarkDilation) -> Self {
        DilationDocument {
            dim: d.dim,
            dilation_dim: d.dilation_dim,
            block_sizes: d.block_sizes.clone(),
            isometry: crate::io::MatrixDoc::from(&d.isometry),
        }
    }
}
