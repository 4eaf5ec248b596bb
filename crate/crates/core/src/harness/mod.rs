//! Exhaustive and sampled experiments: profile enumeration, equilibrium
//! search, lemma predicates over every equilibrium, proof-deviation oracles
//! and counterexample search.

pub mod canon;
mod enumerate;
mod equilibria;
mod lemmas;
mod oracles;
mod sampling;
mod search;

pub use enumerate::{
    all_graphs, connected_graphs, enumerate_profiles, labeled_connected_graphs, orientations, trees, EnumerationSpec,
    Space, LABELED_GRAPH_CAP, PROFILE_SPACE_CAP, TREE_CAP, UNLABELED_GRAPH_CAP,
};
pub use equilibria::{find_equilibria, is_stable_fast, recertify, EquilibriaReport, EquilibriumRecord};
pub use oracles::{proof_deviation_oracle, BoundCheck, DeviationEval, OracleLemma, OracleOutcome};
pub use sampling::{min_sample_n, run_oracle_samples, sample_network, OracleFailure, OracleReport};
pub use lemmas::{
    centroid_orientation_violations, closest_counts, partial_sum_violations, tree_bound_violations, verify_lemma, AlphaRun,
    LemmaId, LemmaOptions, LemmaReport, LemmaViolation,
};
pub use search::{counterexample_search, SearchCandidate, SearchReport};
