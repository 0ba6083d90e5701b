//! Rank vectors of extreme POVMs.
//!
//! A rank vector `(m_1, ..., m_N)_d` is written in canonical form: ranks in
//! descending order with rank-1 outcomes dropped (rank-1 outcomes can always be
//! added while the squared ranks fit into `d^2`). The catalog closes the rank
//! vectors of PVMs under the rank-level images of the constructions and
//! classifies every candidate vector as constructively feasible, infeasible or
//! open.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    add_rank1_with, delete_outcome, increase_rank, lift_dimension, multiply_ranks, refine,
    rng_from_seed, trivial_partition,
};
use crate::error::{Error, Result};
use crate::extremality::check_extreme_c;
use crate::operator::{block_pvm, Povm};
use crate::tolerance::Tolerances;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankVector {
    pub dim: usize,
    /// Ranks >= 2, descending.
    pub ranks: Vec<usize>,
    /// Number of rank-1 outcomes when materialized; 0 in canonical form.
    pub rank1_pad: usize,
}

/// Sorts descending, moves 1s into `rank1_pad` and drops zero entries.
pub fn canonicalize(raw: &[usize], dim: usize) -> RankVector {
    let mut ranks: Vec<usize> = raw.iter().copied().filter(|&r| r >= 2).collect();
    ranks.sort_unstable_by(|a, b| b.cmp(a));
    RankVector {
        dim,
        ranks,
        rank1_pad: raw.iter().filter(|&&r| r == 1).count(),
    }
}

impl RankVector {
    pub fn canonical(&self) -> RankVector {
        RankVector {
            rank1_pad: 0,
            ..self.clone()
        }
    }

    /// `(value, multiplicity)` pairs in descending value order.
    pub fn grouped(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &r in &self.ranks {
            match out.last_mut() {
                Some((v, n)) if *v == r => *n += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }

    /// Ranks followed by `rank1_pad` ones.
    pub fn materialized(&self) -> Vec<usize> {
        let mut v = self.ranks.clone();
        v.extend(std::iter::repeat_n(1, self.rank1_pad));
        v
    }

    pub fn is_trivial(&self) -> bool {
        self.ranks == [self.dim] && self.rank1_pad == 0
    }

    pub fn rank_sum(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn square_sum(&self) -> usize {
        self.ranks.iter().map(|r| r * r).sum()
    }

    /// Parses a comma-separated rank list such as `"3,2,2,2"`.
    pub fn parse(list: &str, dim: usize) -> Result<RankVector> {
        let raw = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad rank `{s}` in `{list}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if raw.contains(&0) {
            return Err(Error::Parse("ranks must be positive".into()));
        }
        if raw.iter().any(|&r| r > dim) {
            return Err(Error::Parse(format!("rank exceeds dimension {dim}")));
        }
        Ok(canonicalize(&raw, dim))
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(v, n)| {
                if n == 1 {
                    v.to_string()
                } else {
                    format!("{v}_{n}")
                }
            })
            .collect();
        write!(f, "({})_{}", parts.join(","), self.dim)?;
        if self.rank1_pad > 0 {
            write!(f, " +{}x1", self.rank1_pad)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `sum r_j >= d`
    RankSum,
    /// `sum r_j^2 <= d^2`
    SquareSum,
    /// `r_j + r_k <= d` for `j != k`
    PairSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub rank_sum: bool,
    pub square_sum: bool,
    pub pair_sum: bool,
}

impl ConditionReport {
    pub fn all(&self) -> bool {
        self.rank_sum && self.square_sum && self.pair_sum
    }

    pub fn violated(&self) -> Vec<Condition> {
        let mut v = Vec::new();
        if !self.rank_sum {
            v.push(Condition::RankSum);
        }
        if !self.square_sum {
            v.push(Condition::SquareSum);
        }
        if !self.pair_sum {
            v.push(Condition::PairSum);
        }
        v
    }
}

/// Necessary rank conditions for `vec` materialized with `pad` rank-1 outcomes.
pub fn necessary_conditions(vec: &RankVector, pad: usize) -> ConditionReport {
    let d = vec.dim;
    let mut all = vec.ranks.clone();
    all.extend(std::iter::repeat_n(1, pad));
    full_conditions(&all, d)
}

fn full_conditions(sorted_ranks: &[usize], d: usize) -> ConditionReport {
    let sum: usize = sorted_ranks.iter().sum();
    let squares: usize = sorted_ranks.iter().map(|r| r * r).sum();
    ConditionReport {
        rank_sum: sum >= d,
        square_sum: squares <= d * d,
        pair_sum: sorted_ranks.len() < 2 || sorted_ranks[0] + sorted_ranks[1] <= d,
    }
}

/// Pads in `[0, d^2 - sum r^2]` for which all conditions hold.
pub fn admissible_pads(vec: &RankVector) -> Vec<usize> {
    let limit = (vec.dim * vec.dim).saturating_sub(vec.square_sum());
    (0..=limit)
        .filter(|&p| necessary_conditions(vec, p).all())
        .collect()
}

/// Canonical vectors with entries in `[2, d]` and `sum r^2 <= d^2`.
fn area_bounded_vectors(d: usize) -> Vec<RankVector> {
    fn rec(
        prefix: &mut Vec<usize>,
        max: usize,
        budget: usize,
        d: usize,
        out: &mut Vec<RankVector>,
    ) {
        out.push(RankVector {
            dim: d,
            ranks: prefix.clone(),
            rank1_pad: 0,
        });
        for r in (2..=max).rev() {
            if r * r <= budget {
                prefix.push(r);
                rec(prefix, r, budget - r * r, d, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), d, d * d, d, &mut out);
    out.sort();
    out
}

/// Every canonical vector over dimension `d` passing the necessary conditions
/// for some admissible pad.
pub fn enumerate_candidates(d: usize) -> Vec<RankVector> {
    area_bounded_vectors(d)
        .into_iter()
        .filter(|v| !admissible_pads(v).is_empty())
        .collect()
}

/// Materialized rank vector (rank-1 entries included), descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FullVector {
    pub dim: usize,
    pub ranks: Vec<usize>,
}

impl FullVector {
    fn new(dim: usize, mut ranks: Vec<usize>) -> Option<FullVector> {
        ranks.sort_unstable_by(|a, b| b.cmp(a));
        if dim == 0 || !full_conditions(&ranks, dim).all() {
            return None;
        }
        Some(FullVector { dim, ranks })
    }

    pub fn canonical(&self) -> RankVector {
        canonicalize(&self.ranks, self.dim)
    }
}

/// One rank-level construction step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// Standard-basis PVM with the given block sizes.
    SeedPvm {
        blocks: Vec<usize>,
    },
    AddRank1,
    Delete {
        rank: usize,
    },
    Refine {
        rank: usize,
        parts: Vec<usize>,
    },
    Multiply {
        factor: usize,
    },
    Increase {
        rank: usize,
    },
    Lift,
}

impl Step {
    /// Rank-level image of the step; `None` if it does not apply.
    pub fn apply(&self, v: &FullVector) -> Option<FullVector> {
        let d = v.dim;
        let position = |rank: usize| v.ranks.iter().position(|&r| r == rank);
        match self {
            Step::SeedPvm { blocks } => FullVector::new(blocks.iter().sum(), blocks.clone()),
            Step::AddRank1 => {
                let squares: usize = v.ranks.iter().map(|r| r * r).sum();
                if squares >= d * d {
                    return None;
                }
                let mut r = v.ranks.clone();
                r.push(1);
                FullVector::new(d, r)
            }
            Step::Delete { rank } => {
                let i = position(*rank)?;
                if v.ranks.len() < 2 {
                    return None;
                }
                let mut r = v.ranks.clone();
                r.remove(i);
                let sum: usize = r.iter().sum();
                if sum < d {
                    r.extend(std::iter::repeat_n(1, d - sum));
                }
                FullVector::new(d, r)
            }
            Step::Refine { rank, parts } => {
                let i = position(*rank)?;
                if parts.len() < 2 || parts.iter().sum::<usize>() != *rank || parts.contains(&0) {
                    return None;
                }
                let mut r = v.ranks.clone();
                r.remove(i);
                r.extend(parts);
                FullVector::new(d, r)
            }
            Step::Multiply { factor } => {
                if *factor < 1 {
                    return None;
                }
                FullVector::new(d * factor, v.ranks.iter().map(|r| r * factor).collect())
            }
            Step::Increase { rank } => {
                let i = position(*rank)?;
                let mut r = v.ranks.clone();
                r[i] += 1;
                FullVector::new(d + 1, r)
            }
            Step::Lift => {
                let mut r = v.ranks.clone();
                r.push(1);
                FullVector::new(d + 1, r)
            }
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::SeedPvm { blocks } => {
                let b: Vec<String> = blocks.iter().map(usize::to_string).collect();
                write!(f, "pvm[{}]", b.join(","))
            }
            Step::AddRank1 => f.write_str("add-rank1"),
            Step::Delete { rank } => write!(f, "delete({rank})"),
            Step::Refine { rank, parts } => {
                let p: Vec<String> = parts.iter().map(usize::to_string).collect();
                write!(f, "refine({rank}->{})", p.join("+"))
            }
            Step::Multiply { factor } => write!(f, "multiply(x{factor})"),
            Step::Increase { rank } => write!(f, "increase({rank})"),
            Step::Lift => f.write_str("lift(+1)"),
        }
    }
}

pub fn format_trace(trace: &[Step]) -> String {
    trace
        .iter()
        .map(Step::to_string)
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// Partitions of `n` into at least two positive parts, parts descending.
fn proper_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= 2);
    out
}

fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![n]];
    out.extend(proper_partitions(n));
    out
}

/// Rank vectors reachable from PVM rank vectors in dimensions `<= max_dim`.
pub struct Closure {
    max_dim: usize,
    /// state -> (discovery index, parent, step that produced it)
    reached: HashMap<FullVector, (usize, Option<FullVector>, Step)>,
}

impl Closure {
    pub fn compute(max_dim: usize) -> Closure {
        let mut reached = HashMap::new();
        let mut queue = VecDeque::new();
        let mut counter = 0;
        for d in 1..=max_dim {
            for blocks in all_partitions(d) {
                let step = Step::SeedPvm { blocks };
                if let Some(v) = step.apply(&FullVector {
                    dim: d,
                    ranks: vec![],
                }) {
                    if !reached.contains_key(&v) {
                        reached.insert(v.clone(), (counter, None, step));
                        counter += 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for step in successor_steps(&v, max_dim) {
                let Some(w) = step.apply(&v) else { continue };
                if w.dim > max_dim || reached.contains_key(&w) {
                    continue;
                }
                reached.insert(w.clone(), (counter, Some(v.clone()), step));
                counter += 1;
                queue.push_back(w);
            }
        }
        Closure { max_dim, reached }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn contains(&self, v: &FullVector) -> bool {
        self.reached.contains_key(v)
    }

    /// Steps from a PVM seed to `v`.
    pub fn trace(&self, v: &FullVector) -> Option<Vec<Step>> {
        let mut steps = Vec::new();
        let mut cur = v.clone();
        loop {
            let (_, parent, step) = self.reached.get(&cur)?;
            steps.push(step.clone());
            match parent {
                Some(p) => cur = p.clone(),
                None => break,
            }
        }
        steps.reverse();
        Some(steps)
    }

    /// Earliest-discovered full vector of each canonical vector in dimension `d`.
    pub fn canonical_representatives(&self, d: usize) -> HashMap<RankVector, FullVector> {
        let mut best: HashMap<RankVector, (usize, FullVector)> = HashMap::new();
        for (v, (idx, _, _)) in &self.reached {
            if v.dim != d {
                continue;
            }
            let key = v.canonical().canonical();
            match best.get(&key) {
                Some((i, _)) if *i <= *idx => {}
                _ => {
                    best.insert(key, (*idx, v.clone()));
                }
            }
        }
        best.into_iter().map(|(k, (_, v))| (k, v)).collect()
    }
}

fn successor_steps(v: &FullVector, max_dim: usize) -> Vec<Step> {
    let mut distinct = v.ranks.clone();
    distinct.dedup();
    let mut steps = vec![Step::AddRank1];
    for &r in &distinct {
        steps.push(Step::Delete { rank: r });
    }
    for &r in &distinct {
        for parts in proper_partitions(r) {
            steps.push(Step::Refine { rank: r, parts });
        }
    }
    for &r in &distinct {
        steps.push(Step::Increase { rank: r });
    }
    for factor in 2..=max_dim / v.dim.max(1) {
        steps.push(Step::Multiply { factor });
    }
    steps.push(Step::Lift);
    steps
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    FeasibleConstructive { trace: Vec<Step> },
    FeasibleNumerical { witness: crate::io::PovmDoc },
    Infeasible { violated: Vec<Condition> },
    Open,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::FeasibleConstructive { .. } => "FEASIBLE_CONSTRUCTIVE",
            Status::FeasibleNumerical { .. } => "FEASIBLE_NUMERICAL",
            Status::Infeasible { .. } => "INFEASIBLE",
            Status::Open => "OPEN",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityRecord {
    pub vector: RankVector,
    #[serde(flatten)]
    pub status: Status,
}

impl FeasibilityRecord {
    pub fn is_feasible(&self) -> bool {
        matches!(
            self.status,
            Status::FeasibleConstructive { .. } | Status::FeasibleNumerical { .. }
        )
    }

    pub fn is_open(&self) -> bool {
        matches!(self.status, Status::Open)
    }
}

/// Classifies every area-bounded canonical vector over dimension `d`
/// (the trivial `(d)_d` excluded).
pub fn derive_feasible(d: usize) -> Vec<FeasibilityRecord> {
    derive_from_closure(&Closure::compute(d), d)
}

pub fn derive_from_closure(closure: &Closure, d: usize) -> Vec<FeasibilityRecord> {
    let reps = closure.canonical_representatives(d);
    area_bounded_vectors(d)
        .into_iter()
        .filter(|v| !v.is_trivial())
        .map(|vector| {
            let status = if let Some(rep) = reps.get(&vector) {
                Status::FeasibleConstructive {
                    trace: closure.trace(rep).expect("reached state has a trace"),
                }
            } else if admissible_pads(&vector).is_empty() {
                let violated = necessary_conditions(&vector, 0).violated();
                Status::Infeasible { violated }
            } else {
                Status::Open
            };
            FeasibilityRecord { vector, status }
        })
        .collect()
}

/// Replaces OPEN records by FEASIBLE_NUMERICAL where the random search finds
/// a certified witness.
pub fn upgrade_with_search(
    records: Vec<FeasibilityRecord>,
    budget: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<FeasibilityRecord>> {
    records
        .into_iter()
        .map(|rec| {
            if !rec.is_open() {
                return Ok(rec);
            }
            let report = crate::search::search_extreme(&rec.vector, budget, seed, tol)?;
            Ok(match report.found {
                Some(found) => FeasibilityRecord {
                    vector: rec.vector,
                    status: Status::FeasibleNumerical {
                        witness: crate::io::PovmDoc::from(&found.povm),
                    },
                },
                None => rec,
            })
        })
        .collect()
}

/// Executes a derivation trace with the concrete constructions. Rank-1
/// counts are reconciled with the rank-level trace after every step, since
/// concrete deletion may need a different number of rank-1 pads.
pub fn replay(trace: &[Step], seed: u64, tol: &Tolerances) -> Result<Povm> {
    let mut rng = rng_from_seed(seed);
    let (first, rest) = trace
        .split_first()
        .ok_or_else(|| Error::ReplayMismatch("empty trace".into()))?;
    let Step::SeedPvm { blocks } = first else {
        return Err(Error::ReplayMismatch("trace must start from a PVM".into()));
    };
    let mut abstract_state = first
        .apply(&FullVector {
            dim: 0,
            ranks: vec![],
        })
        .ok_or_else(|| Error::ReplayMismatch("invalid seed".into()))?;
    let mut povm = block_pvm(blocks, tol)?.sorted_by_rank();

    for step in rest {
        let next = step
            .apply(&abstract_state)
            .ok_or_else(|| Error::ReplayMismatch(format!("{step} does not apply")))?;
        let index_of = |p: &Povm, rank: usize| {
            p.ranks()
                .iter()
                .position(|&r| r == rank)
                .ok_or_else(|| Error::ReplayMismatch(format!("no outcome of rank {rank}")))
        };
        povm = match step {
            Step::SeedPvm { .. } => return Err(Error::ReplayMismatch("seed inside trace".into())),
            Step::AddRank1 => add_rank1_with(&povm, &mut rng)?,
            Step::Delete { rank } => delete_outcome(
                &povm,
                index_of(&povm, *rank)?,
                rand::RngCore::next_u64(&mut rng),
            )?,
            Step::Refine { rank, parts } => {
                let mut partition = trivial_partition(&povm);
                partition[index_of(&povm, *rank)?] = parts.clone();
                refine(&povm, &partition)?
            }
            Step::Multiply { factor } => multiply_ranks(&povm, *factor)?,
            Step::Increase { rank } => increase_rank(&povm, index_of(&povm, *rank)?)?,
            Step::Lift => lift_dimension(&povm, 1)?,
        }
        .sorted_by_rank();
        povm = reconcile_rank1(povm, &next, &mut rng)?;
        abstract_state = next;
    }
    Ok(povm)
}

fn reconcile_rank1(
    mut povm: Povm,
    target: &FullVector,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Povm> {
    let higher = |ranks: &[usize]| {
        ranks
            .iter()
            .copied()
            .filter(|&r| r >= 2)
            .collect::<Vec<_>>()
    };
    let ones = |ranks: &[usize]| ranks.iter().filter(|&&r| r == 1).count();
    if higher(&povm.ranks()) != higher(&target.ranks) {
        return Err(Error::ReplayMismatch(format!(
            "concrete ranks {:?} vs expected {:?}",
            povm.ranks(),
            target.ranks
        )));
    }
    let want = ones(&target.ranks);
    while ones(&povm.ranks()) < want {
        povm = add_rank1_with(&povm, rng)?.sorted_by_rank();
    }
    while ones(&povm.ranks()) > want {
        let before = ones(&povm.ranks());
        // the rank-1 effect with the smallest norm avoids re-padding
        let h = (0..povm.len())
            .filter(|&j| povm.ranks()[j] == 1)
            .min_by(|&a, &b| povm.eigenvalues()[a][0].total_cmp(&povm.eigenvalues()[b][0]))
            .expect("rank-1 outcome present");
        povm = delete_outcome(&povm, h, rand::RngCore::next_u64(rng))?.sorted_by_rank();
        if ones(&povm.ranks()) >= before {
            return Err(Error::ReplayMismatch("cannot shed rank-1 outcomes".into()));
        }
    }
    Ok(povm)
}

/// Replays a trace and checks the result is certified extreme with the
/// expected canonical vector.
pub fn replay_and_certify(
    trace: &[Step],
    expected: &RankVector,
    seed: u64,
    tol: &Tolerances,
) -> Result<Povm> {
    let povm = replay(trace, seed, tol)?;
    let got = canonicalize(&povm.ranks(), povm.dim()).canonical();
    if got != expected.canonical() {
        return Err(Error::ReplayMismatch(format!(
            "replayed {got}, expected {expected}"
        )));
    }
    let verdict = check_extreme_c(&povm)?;
    if !(verdict.is_extreme && verdict.reliable) {
        return Err(Error::CertificationFailed(format!(
            "replayed {got}: rank {}/{} gap {:e}",
            verdict.numerical_rank, verdict.gram_dim, verdict.sv_gap
        )));
    }
    Ok(povm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(ranks: &[usize], d: usize) -> RankVector {
        canonicalize(ranks, d)
    }

    #[test]
    fn canonical_forms() {
        let v = rv(&[3, 2, 2, 2, 1, 1, 1, 1], 5);
        assert_eq!(v.ranks, vec![3, 2, 2, 2]);
        assert_eq!(v.rank1_pad, 4);
        assert_eq!(v.canonical().to_string(), "(3,2_3)_5");
        assert_eq!(rv(&[2, 3, 2], 5).to_string(), "(3,2_2)_5");
        let v = rv(&[1, 1], 2);
        assert!(v.ranks.is_empty());
        assert_eq!(v.rank1_pad, 2);
    }

    #[test]
    fn condition_examples() {
        let r = necessary_conditions(&rv(&[2, 2], 3), 0);
        assert!(!r.pair_sum);
        let r = necessary_conditions(&rv(&[3, 2, 2, 2, 2], 5), 0);
        assert!(r.all());
        let r = necessary_conditions(&rv(&[4], 4), 0);
        assert!(r.rank_sum && r.square_sum && r.pair_sum);
    }

    #[test]
    fn candidate_lists() {
        let names = |d| {
            enumerate_candidates(d)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(2), vec!["()_2", "(2)_2"]);
        assert_eq!(names(3), vec!["()_3", "(2)_3", "(3)_3"]);
        assert!(enumerate_candidates(5).contains(&rv(&[3, 2, 2, 2, 2], 5)));
    }

    #[test]
    fn partitions_are_complete() {
        assert_eq!(proper_partitions(4).len(), 4);
        assert_eq!(proper_partitions(1).len(), 0);
    }

    #[test]
    fn dimension_four_fully_characterized() {
        let recs = derive_feasible(4);
        assert!(recs.iter().all(|r| !r.is_open()));
        let feasible: Vec<String> = recs
            .iter()
            .filter(|r| r.is_feasible())
            .map(|r| r.vector.to_string())
            .collect();
        assert_eq!(
            feasible,
            vec!["()_4", "(2)_4", "(2_2)_4", "(2_3)_4", "(2_4)_4", "(3)_4"]
        );
    }

    #[test]
    fn trace_replays_to_certified_povm() {
        let closure = Closure::compute(4);
        let reps = closure.canonical_representatives(4);
        let target = rv(&[2, 2, 2, 2], 4);
        let trace = closure.trace(&reps[&target]).unwrap();
        assert!(trace
            .iter()
            .any(|s| matches!(s, Step::Multiply { factor: 2 })));
        replay_and_certify(&trace, &target, 1, &Tolerances::default()).unwrap();
    }

    #[test]
    fn parse_rank_list() {
        assert_eq!(
            RankVector::parse("3, 2,2 ,2", 5).unwrap(),
            rv(&[3, 2, 2, 2], 5)
        );
        assert!(RankVector::parse("3,x", 5).is_err());
        assert!(RankVector::parse("6", 5).is_err());
    }
}
