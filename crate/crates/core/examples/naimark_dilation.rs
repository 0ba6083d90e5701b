//! Minimal Naimark dilation of a three-outcome qubit POVM.

use extreme_povm::constructions::rank1_chain;
use extreme_povm::dilation::minimal_dilation;
use extreme_povm::Tolerances;

fn main() -> extreme_povm::Result<()> {
    let tol = Tolerances::default();
    let povm = rank1_chain(2, 3, 42)?;
    let d = minimal_dilation(&povm);
    println!(
        "C^{} -> C^{}  blocks {:?}",
        d.dim, d.dilation_dim, d.block_sizes
    );
    println!("|J*J - I|            = {:.2e}", d.isometry_defect());
    println!(
        "max |J* P_j J - M_j| = {:.2e}",
        d.reconstruction_defect(&povm)
    );
    println!(
        "span of P_j J        = {} (minimal iff {})",
        d.spanning_rank(tol.rank)?,
        d.dilation_dim
    );
    println!("J =\n{:.4}", d.isometry);
    Ok(())
}
