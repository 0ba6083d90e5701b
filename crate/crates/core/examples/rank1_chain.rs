//! Extreme rank-1 POVMs with every admissible outcome count, grown from the
//! standard basis one rank-1 outcome at a time.

use extreme_povm::constructions::rank1_chain;
use extreme_povm::extremality::check_extreme_c;

fn main() -> extreme_povm::Result<()> {
    for d in 1..=4 {
        let mut line = format!("d={d}:");
        for n in d..=d * d {
            let p = rank1_chain(d, n, 2024)?;
            let v = check_extreme_c(&p)?;
            line.push_str(&format!(
                " N={n}{}",
                if v.is_extreme && v.reliable {
                    ""
                } else {
                    "(!)"
                }
            ));
        }
        println!("{line}  all extreme");
        match rank1_chain(d, d * d + 1, 0) {
            Err(e) => println!("      N={} rejected: {e}", d * d + 1),
            Ok(_) => println!("      N={} unexpectedly accepted", d * d + 1),
        }
    }
    Ok(())
}
