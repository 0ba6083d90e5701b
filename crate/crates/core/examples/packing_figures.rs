//! The packing instances of the figures: general and symmetric decisions,
//! text diagrams, and SVG files written to the system temp directory.

use extreme_povm::canonicalize;
use extreme_povm::packing::{brute_force_oracle, render_svg, render_text, solve, Mode};

fn main() -> extreme_povm::Result<()> {
    let cases = [
        canonicalize(&[2, 2], 4),
        canonicalize(&[3, 2, 2, 2], 5),
        canonicalize(&[3, 2, 2], 5),
        canonicalize(&[3, 2, 2, 2, 2], 5),
        canonicalize(&[3, 3, 2, 2, 2], 6),
    ];
    let dir = std::env::temp_dir();
    for v in &cases {
        for mode in [Mode::General, Mode::Symmetric] {
            let found = solve(v, 0, mode);
            let oracle = brute_force_oracle(v, 0, mode)?.is_some();
            println!(
                "{v} {mode:?}: {} (oracle agrees: {})",
                if found.is_some() {
                    "solvable"
                } else {
                    "no solution"
                },
                oracle == found.is_some()
            );
            if let Some(f) = found {
                print!("{}", render_text(&f)?);
                let name = format!(
                    "packing_{}_{:?}.svg",
                    v.ranks
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(""),
                    mode
                )
                .to_lowercase();
                std::fs::write(dir.join(&name), render_svg(&f))?;
                println!("  -> {}", dir.join(name).display());
            }
        }
    }
    Ok(())
}
