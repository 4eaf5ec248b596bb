//! Thresholds and price-of-anarchy bounds as exact rationals.

use ncg_core::bounds::BoundsTable;

fn main() -> ncg_core::Result<()> {
    for (n, alpha) in [(10, "27"), (10, "5"), (50, "200"), (4, "13/4")] {
        let table = BoundsTable::new(n, alpha.parse()?);
        println!("{}", table.to_text());
    }
    Ok(())
}
