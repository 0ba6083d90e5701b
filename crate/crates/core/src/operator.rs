//! Effects, POVMs and their spectral decompositions.

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_defect, hermitian_eigen, hermitize, identity, inverse_sqrt, max_abs, outer, CMatrix,
    CVector,
};
use crate::tolerance::Tolerances;

/// A positive semidefinite `d x d` operator with its numerical rank.
#[derive(Clone, Debug)]
pub struct Effect {
    matrix: CMatrix,
    rank: usize,
}

impl Effect {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Spectral vectors `f_jk` with `M_j = sum_k |f_jk><f_jk|`.
///
/// For each outcome the vectors are mutually orthogonal, ordered by
/// descending eigenvalue, and `|f_jk|^2` is the eigenvalue.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub dim: usize,
    pub vectors: Vec<Vec<CVector>>,
}

impl SpectralDecomposition {
    pub fn ranks(&self) -> Vec<usize> {
        self.vectors.iter().map(Vec::len).collect()
    }

    pub fn reconstruct(&self, outcome: usize) -> CMatrix {
        self.vectors[outcome]
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, f| {
                acc + outer(f, f)
            })
    }

    /// Number of outer products `|f_jk><f_jl|`, i.e. `sum_j r_j^2`.
    pub fn gram_dim(&self) -> usize {
        self.vectors.iter().map(|v| v.len() * v.len()).sum()
    }
}

/// A validated POVM: effects summing to the identity.
#[derive(Clone, Debug)]
pub struct Povm {
    dim: usize,
    effects: Vec<Effect>,
    spectral: SpectralDecomposition,
    eigenvalues: Vec<Vec<f64>>,
    tol: Tolerances,
}

impl Povm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn effect(&self, j: usize) -> &CMatrix {
        &self.effects[j].matrix
    }

    pub fn matrices(&self) -> Vec<CMatrix> {
        self.effects.iter().map(|e| e.matrix.clone()).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.effects.iter().map(|e| e.rank).collect()
    }

    pub fn squared_rank_sum(&self) -> usize {
        self.effects.iter().map(|e| e.rank * e.rank).sum()
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    /// Full eigenvalue list of each effect, descending.
    pub fn eigenvalues(&self) -> &[Vec<f64>] {
        &self.eigenvalues
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Same effects validated under a different tolerance profile.
    pub fn with_tolerances(&self, tol: Tolerances) -> Result<Povm> {
        validate_povm(self.matrices(), self.dim, &tol)
    }

    /// Effects reordered by `order` (a permutation of outcome indices).
    pub fn permuted(&self, order: &[usize]) -> Povm {
        assert_eq!(order.len(), self.len(), "permutation length");
        Povm {
            dim: self.dim,
            effects: order.iter().map(|&j| self.effects[j].clone()).collect(),
            spectral: SpectralDecomposition {
                dim: self.dim,
                vectors: order
                    .iter()
                    .map(|&j| self.spectral.vectors[j].clone())
                    .collect(),
            },
            eigenvalues: order.iter().map(|&j| self.eigenvalues[j].clone()).collect(),
            tol: self.tol,
        }
    }

    /// Outcomes stably sorted by descending rank.
    pub fn sorted_by_rank(&self) -> Povm {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.effects[b].rank.cmp(&self.effects[a].rank));
        self.permuted(&order)
    }

    /// `U M_j U*` for every effect.
    pub fn conjugated(&self, unitary: &CMatrix) -> Result<Povm> {
        let effects = self
            .effects
            .iter()
            .map(|e| unitary * &e.matrix * unitary.adjoint())
            .collect();
        validate_povm(effects, self.dim, &self.tol)
    }
}

/// Validates `effects` as a POVM on `C^dim` and records per-outcome ranks.
pub fn validate_povm(effects: Vec<CMatrix>, dim: usize, tol: &Tolerances) -> Result<Povm> {
    if effects.is_empty() {
        return Err(Error::NoEffects);
    }
    let mut total = CMatrix::zeros(dim, dim);
    let mut validated = Vec::with_capacity(effects.len());
    let mut vectors = Vec::with_capacity(effects.len());
    let mut eigenvalues = Vec::with_capacity(effects.len());

    for (outcome, m) in effects.into_iter().enumerate() {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let violation = hermitian_defect(&m);
        if violation > tol.hermitian {
            return Err(Error::NotHermitian { outcome, violation });
        }
        let m = hermitize(&m);
        let eig = hermitian_eigen(&m)?;
        if eig.min_value() < -tol.psd {
            return Err(Error::NotPositive {
                outcome,
                min_eigenvalue: eig.min_value(),
            });
        }
        let f: Vec<CVector> = kept_eigenpairs(&eig.values, tol)
            .map(|k| eig.vector(k) * crate::linalg::c(eig.values[k].sqrt(), 0.0))
            .collect();
        total += &m;
        validated.push(Effect {
            matrix: m,
            rank: f.len(),
        });
        vectors.push(f);
        eigenvalues.push(eig.values);
    }

    let deviation = max_abs(&(total - identity(dim)));
    if deviation > tol.sum {
        return Err(Error::NotNormalized { deviation });
    }

    Ok(Povm {
        dim,
        effects: validated,
        spectral: SpectralDecomposition { dim, vectors },
        eigenvalues,
        tol: *tol,
    })
}

/// Indices of eigenvalues above the relative rank cutoff. An effect whose
/// largest eigenvalue is within the positivity tolerance of zero has rank 0.
fn kept_eigenpairs<'a>(values: &'a [f64], tol: &Tolerances) -> impl Iterator<Item = usize> + 'a {
    let top = values.first().copied().unwrap_or(0.0);
    let cutoff = if top <= tol.psd {
        f64::INFINITY
    } else {
        tol.rank * top
    };
    values
        .iter()
        .enumerate()
        .filter(move |(_, &v)| v > cutoff)
        .map(|(k, _)| k)
}

/// Numerical rank of a single positive operator under `tol`.
pub fn effect_rank(m: &CMatrix, tol: &Tolerances) -> Result<usize> {
    let eig = hermitian_eigen(m)?;
    Ok(kept_eigenpairs(&eig.values, tol).count())
}

pub fn spectral_decompose(povm: &Povm) -> SpectralDecomposition {
    povm.spectral.clone()
}

/// Given positive operators with invertible sum `T`, returns the POVM
/// `(T^{-1/2} M_j T^{-1/2})_j`.
pub fn conjugate_renormalize(
    sub_effects: &[CMatrix],
    dim: usize,
    tol: &Tolerances,
) -> Result<Povm> {
    if sub_effects.is_empty() {
        return Err(Error::NoEffects);
    }
    let total = sub_effects
        .iter()
        .fold(CMatrix::zeros(dim, dim), |acc, m| acc + m);
    let s = inverse_sqrt(&total, tol.inv)?;
    let effects = sub_effects
        .iter()
        .map(|m| hermitize(&(&s * m * &s)))
        .collect();
    validate_povm(effects, dim, tol)
}

/// Standard-basis PVM whose blocks have the given sizes (summing to the dimension).
pub fn block_pvm(blocks: &[usize], tol: &Tolerances) -> Result<Povm> {
    let dim: usize = blocks.iter().sum();
    let mut offset = 0;
    let effects = blocks
        .iter()
        .map(|&b| {
            let mut m = CMatrix::zeros(dim, dim);
            for i in offset..offset + b {
                m[(i, i)] = crate::linalg::c(1.0, 0.0);
            }
            offset += b;
            m
        })
        .collect();
    validate_povm(effects, dim, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, haar_isometry};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(vals: &[f64]) -> CMatrix {
        let n = vals.len();
        CMatrix::from_fn(
            n,
            n,
            |i, j| if i == j { c(vals[i], 0.0) } else { c(0.0, 0.0) },
        )
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_is_a_povm() {
        let p = validate_povm(vec![identity(2)], 2, &tol()).unwrap();
        assert_eq!(p.ranks(), vec![2]);
    }

    #[test]
    fn projective_qubit() {
        let p = validate_povm(vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])], 2, &tol()).unwrap();
        assert_eq!(p.ranks(), vec![1, 1]);
    }

    #[test]
    fn over_normalized_reports_deviation() {
        let m = identity(2).scale(0.75);
        match validate_povm(vec![m.clone(), m], 2, &tol()) {
            Err(Error::NotNormalized { deviation }) => assert!((deviation - 0.5).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_hermitian_and_negative() {
        let mut m = diag(&[0.5, 0.5]);
        m[(0, 1)] = c(0.1, 0.0);
        let rest = identity(2) - &m;
        assert!(matches!(
            validate_povm(vec![m, rest], 2, &tol()),
            Err(Error::NotHermitian { outcome: 0, .. })
        ));
        let neg = diag(&[1.5, 0.5]);
        let rest = identity(2) - &neg;
        match validate_povm(vec![neg, rest], 2, &tol()) {
            Err(Error::NotPositive {
                outcome,
                min_eigenvalue,
            }) => {
                assert_eq!(outcome, 1);
                assert!((min_eigenvalue + 0.5).abs() < 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_shape_is_rejected() {
        assert!(matches!(
            validate_povm(vec![identity(3)], 2, &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn spectral_vectors_examples() {
        let p = validate_povm(vec![diag(&[1.0, 0.0]), diag(&[0.0, 1.0])], 2, &tol()).unwrap();
        let f = &p.spectral().vectors[0];
        assert_eq!(f.len(), 1);
        assert!((f[0][0] - c(1.0, 0.0)).norm() < 1e-14 && f[0][1].norm() < 1e-14);

        let half = identity(2).scale(0.5);
        let p = validate_povm(vec![half.clone(), half], 2, &tol()).unwrap();
        let f = &p.spectral().vectors[0];
        assert_eq!(f.len(), 2);
        assert!((f[0].norm_squared() - 0.5).abs() < 1e-14);
        assert!(f[0].dotc(&f[1]).norm() < 1e-14);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]);
        let w = CVector::from_vec(vec![c(s, 0.0), c(-s, 0.0)]);
        let p = validate_povm(vec![outer(&v, &v), outer(&w, &w)], 2, &tol()).unwrap();
        let f = &p.spectral().vectors[0];
        assert_eq!(f.len(), 1);
        assert!((f[0].norm_squared() - 1.0).abs() < 1e-14);
        assert!((f[0].dotc(&v).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn renormalize_identity_and_diagonal() {
        let p = conjugate_renormalize(&[diag(&[1.0, 0.0]), diag(&[0.0, 1.0])], 2, &tol()).unwrap();
        assert!(max_abs(&(p.effect(0) - diag(&[1.0, 0.0]))) < 1e-14);
        let p = conjugate_renormalize(&[diag(&[2.0, 0.0]), diag(&[0.0, 1.0])], 2, &tol()).unwrap();
        assert!(max_abs(&(p.effect(0) - diag(&[1.0, 0.0]))) < 1e-14);
        assert!(max_abs(&(p.effect(1) - diag(&[0.0, 1.0]))) < 1e-14);
    }

    #[test]
    fn renormalize_identity_plus_projector() {
        // oracle: build (I + vv*)^{-1/2} from its closed form
        // (I + P)^{-1/2} = I + (1/sqrt(2) - 1) P for a unit-vector projector P
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = CVector::from_vec(vec![c(s, 0.0), c(0.0, s)]);
        let proj = outer(&v, &v);
        let r = identity(2) + proj.scale(s - 1.0);
        let expected0 = &r * &r;
        let expected1 = &r * &proj * &r;
        assert!(max_abs(&(&expected0 + &expected1 - identity(2))) < 1e-14);

        let p = conjugate_renormalize(&[identity(2), proj], 2, &tol()).unwrap();
        assert!(max_abs(&(p.effect(0) - expected0)) < 1e-13);
        assert!(max_abs(&(p.effect(1) - expected1)) < 1e-13);
        assert_eq!(p.ranks(), vec![2, 1]);
    }

    #[test]
    fn renormalize_rejects_singular_sum() {
        assert!(matches!(
            conjugate_renormalize(&[diag(&[1.0, 0.0])], 2, &tol()),
            Err(Error::SingularSum { .. })
        ));
    }

    #[test]
    fn unitary_covariance_of_ranks_and_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = block_pvm(&[2, 1, 1], &tol()).unwrap();
        let half: Vec<CMatrix> = p.matrices().iter().map(|m| m.scale(0.5)).collect();
        let mut effects = half.clone();
        effects.push(identity(4).scale(0.5));
        let mixed = validate_povm(effects, 4, &tol()).unwrap();
        let u = haar_isometry(4, 4, &mut rng);
        let rotated = mixed.conjugated(&u).unwrap();
        assert_eq!(mixed.ranks(), rotated.ranks());
        for (a, b) in mixed.eigenvalues().iter().zip(rotated.eigenvalues()) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 10.0 * tol().rank);
            }
        }
    }
}
