//! Seeded random search for extreme POVMs with a prescribed rank vector.
//!
//! Trial `t` draws from ChaCha8 seeded with `seed` on stream `t`, so every
//! trial is reproducible on its own and reports are byte-identical across
//! runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{necessary_conditions, RankVector};
use crate::error::{Error, Result};
use crate::extremality::{check_extreme_c, VerdictDocument};
use crate::io::PovmDoc;
use crate::linalg::{haar_isometry, CMatrix};
use crate::operator::{validate_povm, Povm};
use crate::tolerance::Tolerances;

pub const PRNG_ALGORITHM: &str = "chacha8-stream-per-trial";
pub const MAX_RESAMPLES: usize = 32;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `M_j = J* P_j J` for a Haar-random isometry `J: C^d -> C^D`, blocks given
/// by the ranks followed by `pad` ones.
pub fn random_povm(vec: &RankVector, pad: usize, seed: u64, tol: &Tolerances) -> Result<Povm> {
    random_povm_with(vec, pad, &mut ChaCha8Rng::seed_from_u64(seed), tol)
}

pub(crate) fn random_povm_with(
    vec: &RankVector,
    pad: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Result<Povm> {
    let d = vec.dim;
    let mut blocks = vec.ranks.clone();
    blocks.extend(std::iter::repeat_n(1, pad));
    let total: usize = blocks.iter().sum();
    if d == 0 || total < d {
        return Err(Error::Precondition(format!(
            "rank sum {total} below dimension {d}"
        )));
    }
    if blocks.iter().any(|&b| b > d) {
        return Err(Error::Precondition(format!("a rank exceeds dimension {d}")));
    }
    for _ in 0..MAX_RESAMPLES {
        let j = haar_isometry(total, d, rng);
        let mut offset = 0;
        let effects: Vec<CMatrix> = blocks
            .iter()
            .map(|&b| {
                let rows = j.rows(offset, b);
                offset += b;
                rows.adjoint() * rows
            })
            .collect();
        let povm = validate_povm(effects, d, tol)?;
        if povm.ranks() == blocks {
            return Ok(povm);
        }
    }
    Err(Error::RankMiss {
        attempts: MAX_RESAMPLES,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PadSummary {
    pub pad: usize,
    pub trials: usize,
    pub best_sv_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoundWitness {
    pub trial: usize,
    pub pad: usize,
    pub verdict: VerdictDocument,
    pub witness: PovmDoc,
    #[serde(skip)]
    pub povm: Povm,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub target: String,
    pub dim: usize,
    pub ranks: Vec<usize>,
    pub seed: u64,
    pub prng: &'static str,
    pub budget: usize,
    pub trials: usize,
    pub rank_misses: usize,
    pub best_sv_gap: f64,
    pub pads: Vec<PadSummary>,
    pub found: Option<FoundWitness>,
}

/// Pads tried by the search: ascending from `max(0, d - sum r)` while the
/// squared ranks still fit. A vector carrying explicit rank-1 entries is
/// searched with exactly that pad.
pub fn candidate_pads(vec: &RankVector) -> Vec<usize> {
    if vec.rank1_pad > 0 {
        let p = vec.rank1_pad;
        return if necessary_conditions(vec, p).all() {
            vec![p]
        } else {
            vec![]
        };
    }
    let d = vec.dim;
    let start = d.saturating_sub(vec.rank_sum());
    let limit = (d * d).saturating_sub(vec.square_sum());
    (start..=limit)
        .filter(|&p| vec.square_sum() <= d * d && necessary_conditions(vec, p).all())
        .collect()
}

/// Samples until a reliably extreme POVM turns up or the budget (split
/// equally across the candidate pads, remainder to the smallest) runs out.
pub fn search_extreme(
    vec: &RankVector,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<SearchReport> {
    let pads = candidate_pads(vec);
    if pads.is_empty() {
        return Err(Error::Precondition(format!(
            "{} violates the necessary rank conditions for every pad",
            vec.canonical()
        )));
    }
    let mut report = SearchReport {
        target: vec.canonical().to_string(),
        dim: vec.dim,
        ranks: vec.ranks.clone(),
        seed,
        prng: PRNG_ALGORITHM,
        budget,
        trials: 0,
        rank_misses: 0,
        best_sv_gap: 0.0,
        pads: Vec::new(),
        found: None,
    };
    let share = budget / pads.len();
    let extra = budget % pads.len();
    let mut trial = 0usize;
    for (i, &pad) in pads.iter().enumerate() {
        let quota = share + usize::from(i < extra);
        let mut summary = PadSummary {
            pad,
            trials: 0,
            best_sv_gap: 0.0,
        };
        for _ in 0..quota {
            let mut rng = trial_rng(seed, trial as u64);
            trial += 1;
            summary.trials += 1;
            let povm = match random_povm_with(vec, pad, &mut rng, tol) {
                Ok(p) => p,
                Err(Error::RankMiss { .. }) => {
                    report.rank_misses += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let verdict = check_extreme_c(&povm)?;
            if verdict.is_extreme {
                summary.best_sv_gap = summary.best_sv_gap.max(verdict.sv_gap);
            }
            if verdict.is_extreme && verdict.reliable {
                report.found = Some(FoundWitness {
                    trial: trial - 1,
                    pad,
                    verdict: verdict.to_document(),
                    witness: PovmDoc::from(&povm),
                    povm,
                });
                break;
            }
        }
        report.best_sv_gap = report.best_sv_gap.max(summary.best_sv_gap);
        report.pads.push(summary);
        if report.found.is_some() {
            break;
        }
    }
    report.trials = trial;
    Ok(report)
}
