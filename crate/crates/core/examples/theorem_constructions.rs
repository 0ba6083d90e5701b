//! Each extremality-preserving construction applied in turn, certifying the
//! result after every step: (1_4)_2 -> (2_4)_4 -> (2_3,1_2)_4 ... -> (3,...)_5.

use extreme_povm::constructions::{
    add_rank1, delete_outcome, increase_rank, lift_dimension, multiply_ranks, rank1_chain, refine,
    trivial_partition,
};
use extreme_povm::extremality::check_extreme_c;
use extreme_povm::{canonicalize, Povm};

fn show(step: &str, p: &Povm) -> extreme_povm::Result<()> {
    let v = check_extreme_c(p)?;
    println!(
        "{step:<26} d={} ranks {:?} -> {}  extreme {} gap {:.1e}",
        p.dim(),
        p.ranks(),
        canonicalize(&p.ranks(), p.dim()).canonical(),
        v.is_extreme && v.reliable,
        v.sv_gap
    );
    Ok(())
}

fn main() -> extreme_povm::Result<()> {
    let p = rank1_chain(2, 4, 7)?;
    show("rank1_chain(2, 4)", &p)?;
    let p = multiply_ranks(&p, 2)?;
    show("multiply x2", &p)?;
    let mut partition = trivial_partition(&p);
    partition[0] = vec![1, 1];
    let p = refine(&p, &partition)?;
    show("refine outcome 0 -> 1+1", &p)?;
    let p = delete_outcome(&p, 0, 7)?;
    show("delete outcome 0", &p)?;
    let p = add_rank1(&p, 7)?;
    show("add rank-1", &p)?;
    let h = p.ranks().iter().position(|&r| r == 2).unwrap();
    let p = increase_rank(&p, h)?;
    show("increase a rank-2 outcome", &p)?;
    let p = lift_dimension(&p, 1)?;
    show("lift by 1", &p)?;
    Ok(())
}
