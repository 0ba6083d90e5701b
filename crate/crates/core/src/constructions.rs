//! Transformations that map extreme POVMs to extreme POVMs with controlled
//! rank changes.
//!
//! Rank-1 directions outside the operator span `R = span{|f_jk><f_jl|}` are
//! drawn by projecting a seeded random Hermitian matrix onto the orthogonal
//! complement of `R` and taking an eigenvector of the residual.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extremality::{check_extreme_c, outer_product_matrix};
use crate::linalg::{
    embed, hermitian_eigen, hermitize, identity, kron, numerical_rank, outer, project_out,
    random_hermitian, unvectorize, vectorize, CMatrix, CVector, C64,
};
use crate::operator::{block_pvm, conjugate_renormalize, validate_povm, Povm};

const MAX_DRAWS: usize = 8;
const MIN_RESIDUAL: f64 = 1e-6;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn require_extreme(povm: &Povm) -> Result<()> {
    if check_extreme_c(povm)?.is_extreme {
        Ok(())
    } else {
        Err(Error::NotExtreme)
    }
}

pub(crate) fn check_index(povm: &Povm, h: usize) -> Result<()> {
    if h < povm.len() {
        Ok(())
    } else {
        Err(Error::OutcomeIndex {
            index: h,
            outcomes: povm.len(),
        })
    }
}

/// Unit vector `eta` with `|eta><eta|` outside the span of the outer products
/// of each vector group.
pub(crate) fn sample_outside_span(
    dim: usize,
    groups: &[Vec<CVector>],
    rank_tol: f64,
    rng: &mut ChaCha8Rng,
) -> Result<CVector> {
    let span = outer_product_matrix(dim, groups.iter().map(Vec::as_slice));
    let basis = if span.ncols() == 0 {
        CMatrix::zeros(dim * dim, 0)
    } else {
        numerical_rank(&span, rank_tol)?.range_basis
    };

    for _ in 0..MAX_DRAWS {
        let a = vectorize(&random_hermitian(dim, rng));
        let residual = project_out(&a, &basis);
        if residual.norm() < MIN_RESIDUAL * a.norm() {
            continue;
        }
        let eig = hermitian_eigen(&hermitize(&unvectorize(&residual, dim, dim)))?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&x, &y| eig.values[y].abs().total_cmp(&eig.values[x].abs()));
        for k in order {
            let eta = eig.vector(k);
            let off_span = project_out(&vectorize(&outer(&eta, &eta)), &basis).norm();
            if off_span >= MIN_RESIDUAL {
                return Ok(eta);
            }
        }
    }
    Err(Error::SamplingFailed { draws: MAX_DRAWS })
}

/// Adds a rank-1 outcome: `M'_j = R M_j R`, `M'_{N+1} = R|eta><eta|R` with
/// `R = (I + |eta><eta|)^{-1/2}`.
pub fn add_rank1(povm: &Povm, seed: u64) -> Result<Povm> {
    add_rank1_with(povm, &mut rng_from_seed(seed))
}

pub(crate) fn add_rank1_with(povm: &Povm, rng: &mut ChaCha8Rng) -> Result<Povm> {
    let d = povm.dim();
    let squares = povm.squared_rank_sum();
    if squares >= d * d {
        return Err(Error::RankBudgetExhausted {
            squares,
            limit: d * d,
        });
    }
    let tol = povm.tolerances();
    let eta = sample_outside_span(d, &povm.spectral().vectors, tol.rank, rng)?;
    let mut effects = povm.matrices();
    effects.push(outer(&eta, &eta));
    conjugate_renormalize(&effects, d, tol)
}

/// Extreme rank-1 POVM with `n` outcomes in dimension `dim`, grown from the
/// standard-basis PVM by repeated [`add_rank1`].
pub fn rank1_chain(dim: usize, n: usize, seed: u64) -> Result<Povm> {
    if dim == 0 || n < dim || n > dim * dim {
        return Err(Error::InvalidOutcomeCount {
            outcomes: n,
            min: dim,
            max: dim * dim,
        });
    }
    let mut rng = rng_from_seed(seed);
    let mut povm = block_pvm(&vec![1; dim], &Default::default())?;
    for _ in dim..n {
        povm = add_rank1_with(&povm, &mut rng)?;
    }
    Ok(povm)
}

/// Removes outcome `h`. The survivors are renormalized by `(I - M_h)^{-1/2}`
/// when that is invertible; otherwise rank-1 effects from outside the span of
/// the survivors' outer products are appended until the sum is invertible.
pub fn delete_outcome(povm: &Povm, h: usize, seed: u64) -> Result<Povm> {
    if povm.len() < 2 {
        return Err(Error::Precondition(
            "deletion needs at least two outcomes".into(),
        ));
    }
    check_index(povm, h)?;
    require_extreme(povm)?;
    let tol = povm.tolerances();
    let d = povm.dim();

    let mut effects: Vec<CMatrix> = (0..povm.len())
        .filter(|&j| j != h)
        .map(|j| povm.effect(j).clone())
        .collect();
    let mut groups: Vec<Vec<CVector>> = (0..povm.len())
        .filter(|&j| j != h)
        .map(|j| povm.spectral().vectors[j].clone())
        .collect();
    let mut total = effects.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);

    let invertible_count = |t: &CMatrix| -> Result<usize> {
        Ok(hermitian_eigen(t)?
            .values
            .iter()
            .filter(|&&v| v > tol.inv)
            .count())
    };
    let mut covered = invertible_count(&total)?;
    let mut rng = rng_from_seed(seed);
    let mut pads = 0;
    while covered < d {
        if pads == d {
            return Err(Error::CannotComplete { attempts: d });
        }
        pads += 1;
        for _ in 0..MAX_DRAWS {
            let eta = sample_outside_span(d, &groups, tol.rank, &mut rng)?;
            let pad = outer(&eta, &eta);
            let candidate = &total + &pad;
            let now = invertible_count(&candidate)?;
            if now > covered {
                covered = now;
                total = candidate;
                effects.push(pad);
                groups.push(vec![eta]);
                break;
            }
        }
    }
    conjugate_renormalize(&effects, d, tol)
}

/// Splits each effect into sums of consecutive spectral rank-1 terms;
/// `partition[j]` lists the group sizes for outcome `j` and must sum to `r_j`.
pub fn refine(povm: &Povm, partition: &[Vec<usize>]) -> Result<Povm> {
    if partition.len() != povm.len() {
        return Err(Error::BadPartition(format!(
            "{} groups for {} outcomes",
            partition.len(),
            povm.len()
        )));
    }
    for (j, (groups, &r)) in partition.iter().zip(povm.ranks().iter()).enumerate() {
        if groups.contains(&0) {
            return Err(Error::BadPartition(format!(
                "outcome {j}: zero-sized group"
            )));
        }
        if groups.iter().sum::<usize>() != r {
            return Err(Error::BadPartition(format!(
                "outcome {j}: groups sum to {} but rank is {r}",
                groups.iter().sum::<usize>()
            )));
        }
    }
    require_extreme(povm)?;
    let d = povm.dim();
    let mut effects = Vec::new();
    for (fs, groups) in povm.spectral().vectors.iter().zip(partition) {
        let mut start = 0;
        for &n in groups {
            let piece = fs[start..start + n]
                .iter()
                .fold(CMatrix::zeros(d, d), |acc, f| acc + outer(f, f));
            effects.push(piece);
            start += n;
        }
    }
    validate_povm(effects, d, povm.tolerances())
}

/// Partition keeping every outcome whole.
pub fn trivial_partition(povm: &Povm) -> Vec<Vec<usize>> {
    povm.ranks().into_iter().map(|r| vec![r]).collect()
}

/// `(M_j (x) I_factor)_j` on `C^{factor*d}`.
pub fn multiply_ranks(povm: &Povm, factor: usize) -> Result<Povm> {
    if factor == 0 {
        return Err(Error::Precondition(
            "rank multiplier must be positive".into(),
        ));
    }
    require_extreme(povm)?;
    let id = identity(factor);
    let effects = povm
        .effects()
        .iter()
        .map(|e| kron(e.matrix(), &id))
        .collect();
    validate_povm(effects, povm.dim() * factor, povm.tolerances())
}

/// Embeds into `C^{d+1}` and adds the projector onto the new basis vector to
/// outcome `h`.
pub fn increase_rank(povm: &Povm, h: usize) -> Result<Povm> {
    check_index(povm, h)?;
    require_extreme(povm)?;
    let d = povm.dim();
    let effects = (0..povm.len())
        .map(|j| {
            let mut m = embed(povm.effect(j), d + 1);
            if j == h {
                m[(d, d)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    validate_povm(effects, d + 1, povm.tolerances())
}

/// Same rank vector in dimension `d + p`: `p` rank increases on the first
/// outcome, then a refinement splitting the gained rank into rank-1 effects.
pub fn lift_dimension(povm: &Povm, p: usize) -> Result<Povm> {
    if p == 0 {
        return Err(Error::Precondition("lift needs p >= 1".into()));
    }
    require_extreme(povm)?;
    let h = povm
        .ranks()
        .iter()
        .position(|&r| r > 0)
        .ok_or_else(|| Error::Precondition("POVM has no nonzero effect".into()))?;
    let base_rank = povm.ranks()[h];
    let mut lifted = povm.clone();
    for _ in 0..p {
        lifted = increase_rank(&lifted, h)?;
    }
    let mut partition = trivial_partition(&lifted);
    partition[h] = std::iter::once(base_rank)
        .chain(std::iter::repeat_n(1, p))
        .collect();
    refine(&lifted, &partition)
}
