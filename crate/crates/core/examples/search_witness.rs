//! Random search for an extreme POVM with ranks (3,2,2,2,2) on C^5, a rank
//! vector that neither packing problem can realize.

use extreme_povm::extremality::check_extreme_c;
use extreme_povm::io::{povm_from_json, povm_to_json};
use extreme_povm::search::search_extreme;
use extreme_povm::{canonicalize, Tolerances};

fn main() -> extreme_povm::Result<()> {
    let tol = Tolerances::default();
    let target = canonicalize(&[3, 2, 2, 2, 2], 5);
    let report = search_extreme(&target, 1000, 7, &tol)?;
    println!(
        "{} trials ({}), best gap {:.2e}",
        report.trials, report.prng, report.best_sv_gap
    );
    let Some(found) = report.found else {
        println!("inconclusive: no witness within the budget");
        return Ok(());
    };
    println!(
        "witness at trial {} with pad {}: gap {:.2e}",
        found.trial, found.pad, found.verdict.sv_gap
    );
    let back = povm_from_json(&povm_to_json(&found.povm)?, &tol)?;
    let v = check_extreme_c(&back)?;
    println!(
        "re-certified from JSON: extreme {} reliable {}",
        v.is_extreme, v.reliable
    );
    Ok(())
}
