//! Ritz values on (-1, 1) from the exact polynomial basis (1-x²)^m x^j,
//! showing convergence in the basis size.

use polyharmonic::galerkin::interval_forms;

fn main() -> polyharmonic::Result<()> {
    for (m, t) in [(1, 1), (2, 1), (2, 2), (3, 3)] {
        println!("m={m} t={t}");
        for n in [4, 8, 12, 16] {
            let v = interval_forms(m, t, n)?.ritz_values(3)?;
            let cells: Vec<String> = v.iter().map(|x| format!("{x:>22.15}")).collect();
            println!("  n={n:>2} {}", cells.join(" "));
        }
    }
    Ok(())
}
