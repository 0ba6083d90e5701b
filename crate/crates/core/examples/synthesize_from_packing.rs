//! Extreme POVMs built from symmetric packings, including one that needs a
//! phantom twin deleted afterwards.

use extreme_povm::packing::render_text;
use extreme_povm::synthesis::synthesize_vector;
use extreme_povm::{canonicalize, Tolerances};

fn main() -> extreme_povm::Result<()> {
    let tol = Tolerances::default();
    for v in [
        canonicalize(&[3, 2, 2, 2], 5),
        canonicalize(&[3, 2, 2], 5),
        canonicalize(&[2, 2, 2, 2], 4),
    ] {
        let (formation, certified) = synthesize_vector(&v, 1, &tol)?;
        println!(
            "{v}: formation ({} phantom twins)",
            formation.symmetric_closure.len()
        );
        print!("{}", render_text(&formation)?);
        println!(
            "  effect ranks {:?}, extreme with criterion-(C) rank {}/{} and gap {:.2e}\n",
            certified.povm.ranks(),
            certified.verdict.numerical_rank,
            certified.verdict.gram_dim,
            certified.verdict.sv_gap
        );
    }
    match synthesize_vector(&canonicalize(&[3, 3, 2, 2, 2], 6), 1, &tol) {
        Err(e) => println!("(3_2,2_3)_6: {e}"),
        Ok(_) => println!("(3_2,2_3)_6: unexpectedly synthesized"),
    }
    Ok(())
}
