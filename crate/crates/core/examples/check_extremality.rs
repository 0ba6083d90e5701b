//! Extremality verdicts for a PVM, a rank-1 POVM and a classical mixture,
//! with the mixing witness of the non-extreme case.

use extreme_povm::constructions::rank1_chain;
use extreme_povm::extremality::{check_extreme_a, check_extreme_c};
use extreme_povm::linalg::identity;
use extreme_povm::operator::block_pvm;
use extreme_povm::{validate_povm, Povm, Tolerances};

fn report(name: &str, p: &Povm) -> extreme_povm::Result<()> {
    let c = check_extreme_c(p)?;
    let a = check_extreme_a(p)?;
    println!(
        "{name:<28} ranks {:?}  extreme {}  rank {}/{}  gap {:.2e}  reliable {}  (criterion A agrees: {})",
        p.ranks(),
        c.is_extreme,
        c.numerical_rank,
        c.gram_dim,
        c.sv_gap,
        c.reliable,
        a.is_extreme == c.is_extreme
    );
    if let Some(w) = &c.witness {
        println!(
            "    witness: eps {}  |A-B| {:.3}  midpoint defect {:.1e}",
            w.scale,
            w.separation(),
            w.midpoint_defect(p)
        );
        for (j, (ea, eb)) in w.a.matrices().iter().zip(w.b.matrices()).enumerate() {
            println!("    A_{j} diag {:?}  B_{j} diag {:?}", diag(ea), diag(&eb));
        }
    }
    Ok(())
}

fn diag(m: &extreme_povm::CMatrix) -> Vec<f64> {
    (0..m.nrows())
        .map(|i| (m[(i, i)].re * 1e6).round() / 1e6)
        .collect()
}

fn main() -> extreme_povm::Result<()> {
    let tol = Tolerances::default();
    report("PVM (2,1) on C^3", &block_pvm(&[2, 1], &tol)?)?;
    report("rank-1 POVM, 4 outcomes, C^2", &rank1_chain(2, 4, 1)?)?;
    let half = identity(2).scale(0.5);
    report(
        "(I/2, I/2) on C^2",
        &validate_povm(vec![half.clone(), half], 2, &tol)?,
    )?;
    Ok(())
}
