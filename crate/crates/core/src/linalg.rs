//! Dense complex linear algebra on top of `nalgebra`.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen, SVD};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

const EIG_EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `|u><v|`
pub fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Column-stacked vectorization.
pub fn vectorize(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v.as_slice())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Zero-extends a square matrix into the top-left corner of an `n x n` matrix.
pub fn embed(m: &CMatrix, n: usize) -> CMatrix {
    let mut out = CMatrix::zeros(n, n);
    out.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    out
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are descending. Each eigenvector is phase-normalized so its
/// first nonzero component is real positive; numerically equal eigenvalues
/// are ordered lexicographically by the normalized vectors.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.vectors.column(k).into_owned()
    }
}

pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(hermitize(m), EIG_EPS, MAX_ITER).ok_or_else(|| {
        Error::DecompositionFailure("Hermitian eigen-solver did not converge".into())
    })?;

    let mut pairs: Vec<(f64, CVector)> = (0..n)
        .map(|k| {
            let v = phase_normalize(eig.eigenvectors.column(k).into_owned());
            (eig.eigenvalues[k], v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    // ties: runs of numerically equal eigenvalues get a lexicographic order
    let scale = pairs.iter().fold(1.0f64, |acc, p| acc.max(p.0.abs()));
    let tie = 1e-12 * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (pairs[end - 1].0 - pairs[end].0).abs() <= tie {
            end += 1;
        }
        pairs[start..end].sort_by(|a, b| lexicographic(&a.1, &b.1));
        start = end;
    }

    let values = pairs.iter().map(|p| p.0).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (k, (_, v)) in pairs.iter().enumerate() {
        vectors.set_column(k, v);
    }
    Ok(HermitianEigen { values, vectors })
}

fn phase_normalize(v: CVector) -> CVector {
    let norm = v.norm();
    match v.iter().find(|z| z.norm() > 1e-12 * norm.max(1e-300)) {
        Some(z) => {
            let phase = z.conj() / z.norm();
            v * phase
        }
        None => v,
    }
}

fn lexicographic(a: &CVector, b: &CVector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// `T^{-1/2}` for Hermitian positive definite `T`.
pub fn inverse_sqrt(t: &CMatrix, min_eigenvalue: f64) -> Result<CMatrix> {
    let eig = hermitian_eigen(t)?;
    let lo = eig.min_value();
    if lo <= min_eigenvalue {
        return Err(Error::SingularSum { min_eigenvalue: lo });
    }
    let n = t.nrows();
    let mut scaled = eig.vectors.clone();
    for k in 0..n {
        let s = 1.0 / eig.values[k].sqrt();
        scaled.column_mut(k).scale_mut(s);
    }
    Ok(hermitize(&(scaled * eig.vectors.adjoint())))
}

/// Outcome of a numerical rank decision by singular values.
#[derive(Clone, Debug)]
pub struct RankDecision {
    pub rank: usize,
    /// All `cols` singular values, descending (zeros included when rows < cols).
    pub singular_values: Vec<f64>,
    pub cutoff: f64,
    pub smallest_kept: f64,
    pub largest_discarded: f64,
    /// `smallest_kept / max(largest_discarded, noise floor)`.
    pub sv_gap: f64,
    /// Orthonormal basis of the column space (`rows x rank`).
    pub range_basis: CMatrix,
    /// Orthonormal basis of the kernel.
    pub kernel: Vec<CVector>,
}

/// Numerical rank with cutoff `rel_tol * sigma_max`.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> Result<RankDecision> {
    let (rows, cols) = m.shape();
    let padded;
    let work = if rows < cols {
        padded = m.clone().resize_vertically(cols, C64::new(0.0, 0.0));
        &padded
    } else {
        m
    };
    let svd = SVD::try_new(work.clone(), true, true, EIG_EPS, MAX_ITER)
        .ok_or_else(|| Error::DecompositionFailure("SVD did not converge".into()))?;
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V*");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();

    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = rel_tol * sigma_max;
    let rank = singular_values
        .iter()
        .take_while(|&&s| s > cutoff && s > 0.0)
        .count();
    let smallest_kept = if rank > 0 {
        singular_values[rank - 1]
    } else {
        0.0
    };
    let largest_discarded = singular_values.get(rank).copied().unwrap_or(0.0);
    let floor = sigma_max * rows.max(cols) as f64 * f64::EPSILON;
    let sv_gap = if sigma_max > 0.0 {
        smallest_kept / largest_discarded.max(floor)
    } else {
        0.0
    };

    let mut range_basis = CMatrix::zeros(rows, rank);
    for (i, &k) in order.iter().take(rank).enumerate() {
        range_basis.set_column(i, &u.column(k).rows(0, rows));
    }
    let kernel = order[rank..]
        .iter()
        .map(|&k| v_t.row(k).adjoint())
        .collect();

    Ok(RankDecision {
        rank,
        singular_values,
        cutoff,
        smallest_kept,
        largest_discarded,
        sv_gap,
        range_basis,
        kernel,
    })
}

/// Component of `v` orthogonal to the span of the orthonormal columns of `basis`.
pub fn project_out(v: &CVector, basis: &CMatrix) -> CVector {
    if basis.ncols() == 0 {
        return v.clone();
    }
    v - basis * (basis.adjoint() * v)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im).scale(std::f64::consts::FRAC_1_SQRT_2)
    })
}

/// Random Hermitian matrix `(G + G*)/2` with complex Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    hermitize(&complex_gaussian(n, n, rng))
}

/// Haar-distributed isometry `C^cols -> C^rows` (rows >= cols): QR of a
/// complex Gaussian matrix with the phases of `R`'s diagonal absorbed.
pub fn haar_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = complex_gaussian(rows, cols, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..cols {
        let d = r[(k, k)];
        let n = d.norm();
        if n > 0.0 {
            let phase = d / n;
            for i in 0..rows {
                q[(i, k)] *= phase;
            }
        }
    }
    q
}
