//! Extreme POVMs from symmetric packing formations.
//!
//! Every grid slot `(r, s)` carries a vector `g_rs`; a box contributes the
//! vectors along its diagonal. Twin boxes at `(r, s)` and `(s, r)` then span
//! operator systems that intersect trivially, so the renormalized effects
//! `T^{-1/2} (sum_k |h_k><h_k|) T^{-1/2}` form an extreme POVM.

use crate::catalog::{canonicalize, RankVector};
use crate::constructions::delete_outcome;
use crate::error::{Error, Result};
use crate::extremality::{check_extreme_c, outer_product_matrix};
use crate::linalg::{c, hermitian_eigen, inverse_sqrt, numerical_rank, outer, CMatrix, CVector};
use crate::operator::validate_povm;
use crate::packing::{solve_symmetric, validate_formation, Formation, Mode, Placement};
use crate::tolerance::Tolerances;
use crate::CertifiedPovm;

/// `g_rs` for 1-based slot `(r, s)`: `|r> + |s>` below the diagonal, `|r>` on
/// it, `|r> - i|s>` above it.
pub fn slot_vector(dim: usize, r: usize, s: usize) -> CVector {
    assert!(
        (1..=dim).contains(&r) && (1..=dim).contains(&s),
        "slot ({r},{s}) outside {dim}x{dim}"
    );
    let mut g = CVector::zeros(dim);
    g[r - 1] = c(1.0, 0.0);
    if r > s {
        g[s - 1] += c(1.0, 0.0);
    } else if r < s {
        g[s - 1] += c(0.0, -1.0);
    }
    g
}

/// Diagonal vectors `h_k = g_{r+k-1, s+k-1}` of a box.
pub fn box_vectors(dim: usize, p: &Placement) -> Vec<CVector> {
    (0..p.size)
        .map(|k| slot_vector(dim, p.row + k, p.col + k))
        .collect()
}

fn box_operator(dim: usize, p: &Placement) -> CMatrix {
    box_vectors(dim, p)
        .iter()
        .fold(CMatrix::zeros(dim, dim), |acc, h| acc + outer(h, h))
}

/// Rank of the `2m^2` outer products of a twin pair; full (`2m^2`) for any
/// off-diagonal box.
pub fn twin_pair_rank(dim: usize, p: &Placement, tol: &Tolerances) -> Result<usize> {
    let groups = [box_vectors(dim, p), box_vectors(dim, &p.transposed())];
    let m = outer_product_matrix(dim, groups.iter().map(Vec::as_slice));
    Ok(numerical_rank(&m, tol.rank)?.rank)
}

/// Builds and certifies the POVM of a fully symmetric formation. Effects
/// follow the placement order, then unit pads on free diagonal slots in
/// ascending order (added only until `T` is invertible).
pub fn synthesize(formation: &Formation, tol: &Tolerances) -> Result<CertifiedPovm> {
    if !formation.symmetric_closure.is_empty() {
        return Err(Error::NotSymmetric {
            phantoms: formation.symmetric_closure.len(),
        });
    }
    validate_formation(formation, Mode::Symmetric).map_err(|e| Error::InvalidFormation(e.0))?;
    let d = formation.dim;
    let mut boxes = formation.placements.clone();
    let mut ops: Vec<CMatrix> = boxes.iter().map(|p| box_operator(d, p)).collect();
    let covered =
        |boxes: &[Placement], k: usize| boxes.iter().any(|p| p.overlaps(&Placement::new(1, k, k)));

    let min_eig = |ops: &[CMatrix]| -> Result<f64> {
        let t = ops.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
        Ok(hermitian_eigen(&t)?.min_value())
    };
    let mut lowest = min_eig(&ops)?;
    for k in 1..=d {
        if lowest > tol.inv {
            break;
        }
        if covered(&boxes, k) {
            continue;
        }
        let p = Placement::new(1, k, k);
        ops.push(box_operator(d, &p));
        boxes.push(p);
        lowest = min_eig(&ops)?;
    }
    if lowest <= tol.inv {
        return Err(Error::CertificationFailed(format!(
            "frame operator stays singular after padding (min eigenvalue {lowest:e})"
        )));
    }

    let t = ops.iter().fold(CMatrix::zeros(d, d), |acc, m| acc + m);
    let s = inverse_sqrt(&t, tol.inv)?;
    let effects = ops.iter().map(|m| &s * m * &s).collect();
    let povm = validate_povm(effects, d, tol)?;
    let expected: Vec<usize> = boxes.iter().map(|p| p.size).collect();
    if povm.ranks() != expected {
        return Err(Error::CertificationFailed(format!(
            "ranks {:?}, boxes {expected:?}",
            povm.ranks()
        )));
    }
    certify(povm)
}

fn certify(povm: crate::Povm) -> Result<CertifiedPovm> {
    let verdict = check_extreme_c(&povm)?;
    if !(verdict.is_extreme && verdict.reliable) {
        return Err(Error::CertificationFailed(format!(
            "rank {}/{} with gap {:e}",
            verdict.numerical_rank, verdict.gram_dim, verdict.sv_gap
        )));
    }
    Ok(CertifiedPovm { povm, verdict })
}

/// Solves the symmetric packing problem for `vec` (with `vec.rank1_pad` unit
/// boxes), synthesizes the materialized formation and deletes the phantom
/// outcomes. `seed` drives the deletion padding.
pub fn synthesize_vector(
    vec: &RankVector,
    seed: u64,
    tol: &Tolerances,
) -> Result<(Formation, CertifiedPovm)> {
    let formation = solve_symmetric(vec, vec.rank1_pad)
        .ok_or_else(|| Error::NoSymmetricSolution(vec.canonical().to_string()))?;
    let real = formation.placements.len();
    let phantoms = formation.symmetric_closure.len();
    let mut povm = synthesize(&formation.materialized(), tol)?.povm;
    for (i, h) in (real..real + phantoms).rev().enumerate() {
        povm = delete_outcome(&povm, h, seed.wrapping_add(i as u64))?;
    }
    let got = canonicalize(&povm.ranks(), povm.dim());
    if got.canonical() != vec.canonical() {
        return Err(Error::CertificationFailed(format!(
            "synthesized {got}, wanted {vec}"
        )));
    }
    Ok((formation, certify(povm)?))
}
