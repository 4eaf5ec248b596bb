//! Best-response dynamics from a path: agents keep rewiring until nobody
//! can improve, and the end point is certified stable.

use ncg_core::game::{Game, Mode, Schedule};
use ncg_core::graph::{serialize_network, OwnedNetwork};

fn main() -> ncg_core::Result<()> {
    let path = OwnedNetwork::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])?;
    let game = Game::new("3".parse()?);
    let t = game.best_response_dynamics(&path, Schedule::SeededRandom(7), 50)?;
    for s in &t.steps {
        println!(
            "round {} agent {} {:?}: -{:?} +{:?}, social cost {}",
            s.round, s.deviation.agent, s.deviation.kind, s.deviation.removed, s.deviation.added, s.social_cost
        );
    }
    println!("converged: {} after {} rounds", t.converged, t.rounds);
    print!("{}", serialize_network(&t.final_network));
    println!("stable: {}", game.is_stable(&t.final_network, Mode::Exact)?);
    Ok(())
}
