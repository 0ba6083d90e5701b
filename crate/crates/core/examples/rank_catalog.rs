//! Rank-vector catalog: necessary conditions, closure of PVM rank vectors
//! under the constructions, and replay of a derivation trace.
//!
//! cargo run --example rank_catalog -- [max_dim]

use extreme_povm::catalog::{derive_feasible, format_trace, replay_and_certify, Status};
use extreme_povm::Tolerances;

fn main() -> extreme_povm::Result<()> {
    let max_dim: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    for d in 2..=max_dim {
        let records = derive_feasible(d);
        let count = |label: &str| records.iter().filter(|r| r.status.label() == label).count();
        println!(
            "d={d}: {} constructive, {} infeasible, {} open",
            count("FEASIBLE_CONSTRUCTIVE"),
            count("INFEASIBLE"),
            count("OPEN")
        );
        for r in &records {
            match &r.status {
                Status::FeasibleConstructive { trace } if d <= 5 => {
                    println!("  {:<16} {}", r.vector.to_string(), format_trace(trace))
                }
                Status::Open => println!("  {:<16} OPEN", r.vector.to_string()),
                _ => {}
            }
        }
    }

    let records = derive_feasible(5);
    let target = records
        .iter()
        .find(|r| r.vector.to_string() == "(3,2_3)_5")
        .unwrap();
    if let Status::FeasibleConstructive { trace } = &target.status {
        let povm = replay_and_certify(trace, &target.vector, 3, &Tolerances::default())?;
        println!(
            "replayed {} -> certified POVM with ranks {:?}",
            target.vector,
            povm.ranks()
        );
    }
    Ok(())
}
