//! Exact analysis of the sum-distance network creation game.
//!
//! Agents buy incident edges at price `alpha` each and pay the sum of their
//! hop distances to everybody else. This crate represents such strategy
//! profiles, certifies Nash equilibria by exhaustive deviation, detects the
//! structures that rule out cycles at high edge prices (min cycles, directed
//! cycles, critical pairs, centroids), and checks the resulting thresholds
//! and price-of-anarchy bounds on every small instance.
//!
//! ```
//! use ncg_core::{game::{Game, Mode}, graph::OwnedNetwork, rational::Alpha};
//!
//! let star = OwnedNetwork::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
//! let game = Game::new("10".parse::<Alpha>().unwrap());
//! assert!(game.is_equilibrium(&star, Mode::Exact).unwrap().is_stable());
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod game;
pub mod graph;
pub mod harness;
pub mod rational;
pub mod structure;

pub use error::{Error, Result};
