//! Extremality decisions.
//!
//! A POVM is extreme iff the outer products `|f_jk><f_jl|` built from its
//! spectral vectors are linearly independent ([`check_extreme_c`]). The same
//! decision is reached through the minimal dilation: `D -> J* D J` must be
//! injective on operators commuting with the block PVM ([`check_extreme_a`]).
//! Both reduce to a numerical rank decision on a `d^2 x sum_j r_j^2` matrix.

use serde::Serialize;

use crate::dilation::{minimal_dilation, NaimarkDilation};
use crate::error::{Error, Result};
use crate::linalg::{
    max_abs, numerical_rank, outer, vectorize, CMatrix, CVector, RankDecision, C64,
};
use crate::operator::{validate_povm, Povm, SpectralDecomposition};

/// Singular-value gap below which a rank decision is flagged unreliable.
pub const RELIABLE_GAP: f64 = 1e3;

#[derive(Clone, Debug)]
pub struct ExtremalityVerdict {
    pub is_extreme: bool,
    /// `sum_j r_j^2`, the number of tested operators.
    pub gram_dim: usize,
    pub numerical_rank: usize,
    pub smallest_kept_sv: f64,
    pub largest_discarded_sv: f64,
    pub sv_gap: f64,
    pub reliable: bool,
    /// Orthonormal basis of the coefficient kernel; empty when extreme.
    pub kernel: Vec<CVector>,
    pub witness: Option<NonExtremeWitness>,
}

impl ExtremalityVerdict {
    fn from_decision(decision: RankDecision, gram_dim: usize) -> Self {
        ExtremalityVerdict {
            is_extreme: decision.rank == gram_dim,
            gram_dim,
            numerical_rank: decision.rank,
            smallest_kept_sv: decision.smallest_kept,
            largest_discarded_sv: decision.largest_discarded,
            sv_gap: decision.sv_gap,
            reliable: decision.sv_gap >= RELIABLE_GAP,
            kernel: decision.kernel,
            witness: None,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.gram_dim - self.numerical_rank
    }

    pub fn to_document(&self) -> VerdictDocument {
        VerdictDocument {
            extreme: self.is_extreme,
            rank: self.numerical_rank,
            expected: self.gram_dim,
            sv_gap: self.sv_gap,
            reliable: self.reliable,
        }
    }
}

/// JSON verdict emitted by `check-extreme`.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct VerdictDocument {
    pub extreme: bool,
    pub rank: usize,
    pub expected: usize,
    pub sv_gap: f64,
    pub reliable: bool,
}

/// Two distinct POVMs whose midpoint is the tested POVM.
#[derive(Clone, Debug)]
pub struct NonExtremeWitness {
    pub a: Povm,
    pub b: Povm,
    /// Perturbation scale `eps` with `A = M + eps*Delta`, `B = M - eps*Delta`.
    pub scale: f64,
}

impl NonExtremeWitness {
    /// `max_j |(A_j + B_j)/2 - M_j|`
    pub fn midpoint_defect(&self, povm: &Povm) -> f64 {
        (0..povm.len())
            .map(|j| max_abs(&((self.a.effect(j) + self.b.effect(j)).scale(0.5) - povm.effect(j))))
            .fold(0.0, f64::max)
    }

    /// `max_j |A_j - B_j|`
    pub fn separation(&self) -> f64 {
        (0..self.a.len())
            .map(|j| max_abs(&(self.a.effect(j) - self.b.effect(j))))
            .fold(0.0, f64::max)
    }
}

/// Columns `vec(|f_jk><f_jl|)` for `j` in outcome order, then `k`, then `l`.
pub fn criterion_c_matrix(spectral: &SpectralDecomposition) -> CMatrix {
    outer_product_matrix(spectral.dim, spectral.vectors.iter().map(Vec::as_slice))
}

/// Outer-product column matrix for arbitrary groups of vectors in `C^dim`.
pub fn outer_product_matrix<'a, I>(dim: usize, groups: I) -> CMatrix
where
    I: IntoIterator<Item = &'a [CVector]>,
{
    let mut cols: Vec<CVector> = Vec::new();
    for group in groups {
        for f in group {
            for g in group {
                cols.push(vectorize(&outer(f, g)));
            }
        }
    }
    let mut m = CMatrix::zeros(dim * dim, cols.len());
    for (i, col) in cols.iter().enumerate() {
        m.set_column(i, col);
    }
    m
}

/// Columns `vec(J* E_{(j,k),(j,l)} J)` over the matrix units spanning the
/// block-diagonal operators on the dilation space.
pub fn criterion_a_matrix(dilation: &NaimarkDilation) -> CMatrix {
    let dd = dilation.dilation_dim;
    let d = dilation.dim;
    let gram: usize = dilation.block_sizes.iter().map(|r| r * r).sum();
    let j_adj = dilation.isometry.adjoint();
    let mut m = CMatrix::zeros(d * d, gram);
    let mut col = 0;
    for (start, &size) in dilation.block_offsets().iter().zip(&dilation.block_sizes) {
        for k in *start..start + size {
            for l in *start..start + size {
                let mut unit = CMatrix::zeros(dd, dd);
                unit[(k, l)] = C64::new(1.0, 0.0);
                let image = &j_adj * unit * &dilation.isometry;
                m.set_column(col, &vectorize(&image));
                col += 1;
            }
        }
    }
    m
}

pub fn check_extreme_c(povm: &Povm) -> Result<ExtremalityVerdict> {
    let spectral = povm.spectral();
    let matrix = criterion_c_matrix(spectral);
    let decision = numerical_rank(&matrix, povm.tolerances().rank)?;
    Ok(with_witness(
        povm,
        ExtremalityVerdict::from_decision(decision, spectral.gram_dim()),
    ))
}

pub fn check_extreme_a(povm: &Povm) -> Result<ExtremalityVerdict> {
    let dilation = minimal_dilation(povm);
    let matrix = criterion_a_matrix(&dilation);
    let gram = matrix.ncols();
    let decision = numerical_rank(&matrix, povm.tolerances().rank)?;
    Ok(with_witness(
        povm,
        ExtremalityVerdict::from_decision(decision, gram),
    ))
}

fn with_witness(povm: &Povm, mut verdict: ExtremalityVerdict) -> ExtremalityVerdict {
    if !verdict.is_extreme {
        verdict.witness = verdict
            .kernel
            .iter()
            .find_map(|k| extract_witness(povm, k).ok());
    }
    verdict
}

/// Is the POVM extreme with a reliable rank decision?
pub fn is_certified_extreme(povm: &Povm) -> Result<bool> {
    let v = check_extreme_c(povm)?;
    Ok(v.is_extreme && v.reliable)
}

/// Turns a kernel element `c` of the outer-product matrix into a mixing
/// witness: `sum_jkl c_jkl |f_jk><f_jl| = 0` gives per-outcome perturbations
/// `Delta_j = F_j H_j F_j*` summing to zero, where `H_j` is the Hermitian
/// part of the coefficient block.
pub fn extract_witness(povm: &Povm, kernel_vector: &CVector) -> Result<NonExtremeWitness> {
    let spectral = povm.spectral();
    if kernel_vector.len() != spectral.gram_dim() {
        return Err(Error::Precondition(format!(
            "kernel vector has length {}, expected {}",
            kernel_vector.len(),
            spectral.gram_dim()
        )));
    }
    let tol = povm.tolerances();
    let d = povm.dim();

    let matrix = criterion_c_matrix(spectral);
    let scale = max_abs(&matrix) * kernel_vector.norm();
    if scale == 0.0 || (&matrix * kernel_vector).norm() > 1e-8 * scale * (d as f64) {
        return Err(Error::Precondition(
            "vector is not a kernel element of the outer-product matrix".into(),
        ));
    }

    let blocks = coefficient_blocks(spectral, kernel_vector);
    let hermitian: Vec<CMatrix> = blocks
        .iter()
        .map(|b| (b + b.adjoint()).scale(0.5))
        .collect();
    let negligible = |hs: &[CMatrix]| hs.iter().all(|h| max_abs(h) < 1e-12);
    let parts = if negligible(&hermitian) {
        let i = C64::new(0.0, 1.0);
        let anti: Vec<CMatrix> = blocks
            .iter()
            .map(|b| (b - b.adjoint()) * i.scale(0.5))
            .collect();
        if negligible(&anti) {
            return Err(Error::DegenerateKernel);
        }
        anti
    } else {
        hermitian
    };

    let mut deltas: Vec<CMatrix> = spectral
        .vectors
        .iter()
        .zip(&parts)
        .map(|(fs, h)| {
            if fs.is_empty() {
                return CMatrix::zeros(d, d);
            }
            let f = CMatrix::from_columns(fs);
            &f * h * f.adjoint()
        })
        .collect();
    let norm = deltas.iter().map(max_abs).fold(0.0, f64::max);
    if norm < 1e-12 {
        return Err(Error::DegenerateKernel);
    }
    for delta in &mut deltas {
        *delta /= C64::new(norm, 0.0);
    }

    let floor = 100.0 * tol.sum;
    for k in 1..=40 {
        let eps = 0.5f64.powi(k);
        if eps <= floor {
            break;
        }
        let shifted = |sign: f64| -> Vec<CMatrix> {
            (0..povm.len())
                .map(|j| povm.effect(j) + deltas[j].scale(sign * eps))
                .collect()
        };
        let (Ok(a), Ok(b)) = (
            validate_povm(shifted(1.0), d, tol),
            validate_povm(shifted(-1.0), d, tol),
        ) else {
            continue;
        };
        return Ok(NonExtremeWitness { a, b, scale: eps });
    }
    Err(Error::NoFeasibleScale)
}

fn coefficient_blocks(spectral: &SpectralDecomposition, coeffs: &CVector) -> Vec<CMatrix> {
    let mut offset = 0;
    spectral
        .vectors
        .iter()
        .map(|fs| {
            let r = fs.len();
            let block = CMatrix::from_fn(r, r, |k, l| coeffs[offset + k * r + l]);
            offset += r * r;
            block
        })
        .collect()
}

/// Necessary conditions on the ranks of an extreme POVM: `sum r_j^2 <= d^2`
/// and `r_j + r_k <= d` for `j != k`.
pub fn rank_conditions_hold(ranks: &[usize], dim: usize) -> bool {
    let squares: usize = ranks.iter().map(|r| r * r).sum();
    let mut sorted = ranks.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let pair_ok = sorted.len() < 2 || sorted[0] + sorted[1] <= dim;
    squares <= dim * dim && pair_ok
}
