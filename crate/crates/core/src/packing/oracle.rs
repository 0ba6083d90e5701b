//! Naive exhaustive placement enumeration, used to cross-check the solvers.
//! Every box (equal sizes included) ranges over every position; the only
//! pruning is the pairwise overlap test.

use super::{Formation, Mode, Placement};
use crate::catalog::RankVector;
use crate::error::{Error, Result};

pub const ORACLE_MAX_DIM: usize = 6;

pub fn brute_force_oracle(vec: &RankVector, pad: usize, mode: Mode) -> Result<Option<Formation>> {
    let d = vec.dim;
    if d > ORACLE_MAX_DIM {
        return Err(Error::SizeGuard {
            dim: d,
            limit: ORACLE_MAX_DIM,
        });
    }
    if vec.ranks.iter().any(|&m| m > d) {
        return Ok(None);
    }
    let mut placed = Vec::new();
    Ok(enumerate(&vec.ranks, d, pad, mode, &mut placed))
}

fn enumerate(
    boxes: &[usize],
    d: usize,
    pad: usize,
    mode: Mode,
    placed: &mut Vec<Placement>,
) -> Option<Formation> {
    if placed.len() == boxes.len() {
        return accept(placed, d, pad, mode);
    }
    let m = boxes[placed.len()];
    for row in 1..=d + 1 - m {
        for col in 1..=d + 1 - m {
            let p = Placement::new(m, row, col);
            if placed.iter().any(|q| q.overlaps(&p)) {
                continue;
            }
            placed.push(p);
            if let Some(f) = enumerate(boxes, d, pad, mode, placed) {
                return Some(f);
            }
            placed.pop();
        }
    }
    None
}

fn accept(placed: &[Placement], d: usize, pad: usize, mode: Mode) -> Option<Formation> {
    let mut phantoms = Vec::new();
    if mode == Mode::Symmetric {
        for p in placed {
            if p.meets_diagonal() {
                if p.row != p.col {
                    return None;
                }
                continue;
            }
            let t = p.transposed();
            if placed.contains(&t) {
                continue;
            }
            if placed.iter().any(|q| q.overlaps(&t)) {
                return None;
            }
            phantoms.push(t);
        }
    }
    let mut taken = vec![false; d * d];
    for p in placed.iter().chain(&phantoms) {
        for (r, c) in p.slots() {
            taken[(r - 1) * d + (c - 1)] = true;
        }
    }
    let free: Vec<(usize, usize)> = (0..d * d)
        .filter(|&i| !taken[i])
        .map(|i| (i / d + 1, i % d + 1))
        .collect();
    if free.len() < pad {
        return None;
    }
    let mut placements = placed.to_vec();
    match mode {
        Mode::General => {
            placements.extend(free.iter().take(pad).map(|&(r, c)| Placement::new(1, r, c)))
        }
        Mode::Symmetric => {
            // free set is symmetric: take pads as transposition orbits
            let mut left = pad;
            for &(r, c) in &free {
                if left == 0 || r < c {
                    continue;
                }
                placements.push(Placement::new(1, r, c));
                left -= 1;
                if r != c {
                    if left == 0 {
                        phantoms.push(Placement::new(1, c, r));
                    } else {
                        placements.push(Placement::new(1, c, r));
                        left -= 1;
                    }
                }
            }
        }
    }
    Some(Formation {
        dim: d,
        placements,
        symmetric_closure: phantoms,
    })
}
