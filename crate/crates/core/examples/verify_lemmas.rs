//! Check each structural claim on every equilibrium above its threshold.

use ncg_core::harness::{verify_lemma, LemmaId, LemmaOptions};

fn main() -> ncg_core::Result<()> {
    let options = LemmaOptions::default();
    for lemma in LemmaId::ALL {
        for n in [lemma.min_n().max(4), 5] {
            if n < lemma.min_n() {
                continue;
            }
            let report = verify_lemma(lemma, n, &options)?;
            print!("{}", report.to_text());
        }
    }
    Ok(())
}
