//! Certify a star at several edge prices, printing the improving move when
//! there is one.

use ncg_core::game::{Game, Mode};
use ncg_core::graph::parse_network;

fn main() -> ncg_core::Result<()> {
    let star = parse_network("5\n0 1\n0 2\n0 3\n0 4\n")?;
    for alpha in ["1/2", "1", "2", "10"] {
        let game = Game::new(alpha.parse()?);
        let cert = game.is_equilibrium(&star, Mode::Exact)?;
        print!("alpha {alpha:>4}: {:?}", cert.verdict);
        if let Some(w) = cert.witness {
            print!("  agent {} adds {:?}, gain {}", w.deviation.agent, w.deviation.added, w.improvement);
        }
        println!("  social cost {}", game.social_cost(&star));
    }
    Ok(())
}
