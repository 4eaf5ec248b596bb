//! Structural predicates checked over every equilibrium an enumeration
//! finds, at prices above each predicate's threshold.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::canon::CanonicalKey;
use super::enumerate::{EnumerationSpec, Space};
use super::equilibria::find_equilibria;
use super::oracles::{proof_deviation_oracle, OracleLemma, OracleOutcome};
use super::sampling::{run_oracle_samples, OracleReport};
use crate::bounds::{
    no_four_cycle_threshold, no_strong_critical_pair_threshold, no_triangle_threshold, opt_social_cost,
    stable_tree_depth_diameter, subtree_size_lower_bound, tree_poa_bound, tree_threshold,
};
use crate::error::{Error, Result};
use crate::game::{social_cost, Mode};
use crate::graph::{biconnected_components, centroids, DistanceMatrix, OwnedNetwork, RootedTree};
use crate::rational::{format_rational, int, ratio, Alpha, Cost, Rational};
use crate::structure::{critical_pairs, directed_orientation, find_triangle, has_four_cycle, min_cycles};

/// Checkable statements, by identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    /// No triangle.
    L1,
    /// No 4-cycle.
    L2,
    /// No biconnected component is a directed cycle.
    L3,
    /// No strong critical pair.
    L5,
    /// Every min cycle is directed and has length at least 5.
    L7,
    /// No biconnected component is a cycle.
    C1,
    /// The network is a tree.
    T1,
    /// Stable trees hung from a centroid: buyers are parents and every
    /// bought child is a centroid of its own subtree.
    L9,
    /// Partial sums of closest-set sizes along centroid-to-leaf paths.
    L10,
    /// Price of anarchy, depth and diameter bounds for stable trees.
    T2,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::L1,
        LemmaId::L2,
        LemmaId::L3,
        LemmaId::L5,
        LemmaId::L7,
        LemmaId::C1,
        LemmaId::T1,
        LemmaId::L9,
        LemmaId::L10,
        LemmaId::T2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LemmaId::L1 => "L1",
            LemmaId::L2 => "L2",
            LemmaId::L3 => "L3",
            LemmaId::L5 => "L5",
            LemmaId::L7 => "L7",
            LemmaId::C1 => "C1",
            LemmaId::T1 => "T1",
            LemmaId::L9 => "L9",
            LemmaId::L10 => "L10",
            LemmaId::T2 => "T2",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            LemmaId::L1 => "no triangle",
            LemmaId::L2 => "no 4-cycle",
            LemmaId::L3 => "no biconnected component is a directed cycle",
            LemmaId::L5 => "no strong critical pair",
            LemmaId::L7 => "every min cycle is directed and has length >= 5",
            LemmaId::C1 => "no biconnected component is a cycle",
            LemmaId::T1 => "the network is a tree",
            LemmaId::L9 => "from every centroid, buyers are parents and bought children are subtree centroids",
            LemmaId::L10 => "closest-set partial sums along centroid-to-leaf paths reach n(1 - 1/2^i)",
            LemmaId::T2 => "stable-tree price of anarchy, depth and diameter bounds",
        }
    }

    /// Checked over stable trees only.
    pub fn is_tree_lemma(self) -> bool {
        matches!(self, LemmaId::L9 | LemmaId::L10 | LemmaId::T2)
    }

    /// Smallest `n` the statement covers.
    pub fn min_n(self) -> usize {
        match self {
            LemmaId::L1 | LemmaId::L9 | LemmaId::L10 => 1,
            LemmaId::L2 => 2,
            LemmaId::L5 | LemmaId::T2 => 3,
            LemmaId::L7 | LemmaId::T1 => 4,
            LemmaId::L3 | LemmaId::C1 => 6,
        }
    }

    /// The price must exceed this; `None` when any price is covered.
    pub fn threshold(self, n: usize) -> Result<Option<Rational>> {
        Ok(match self {
            LemmaId::L1 => Some(no_triangle_threshold(n)?),
            LemmaId::L2 | LemmaId::L3 => Some(no_four_cycle_threshold(n)?),
            LemmaId::L5 | LemmaId::L7 | LemmaId::C1 => Some(no_strong_critical_pair_threshold(n)?),
            LemmaId::T1 => Some(tree_threshold(n)?),
            LemmaId::L9 | LemmaId::L10 | LemmaId::T2 => None,
        })
    }

    /// The oracle that rebuilds the deviation refuting a violation, if any.
    pub fn oracle(self) -> Option<OracleLemma> {
        match self {
            LemmaId::L1 => Some(OracleLemma::L1),
            LemmaId::L2 => Some(OracleLemma::L2),
            LemmaId::L5 => Some(OracleLemma::L5),
            LemmaId::T1 => Some(OracleLemma::T1),
            _ => None,
        }
    }

    /// `threshold + {1/4, 1, 5/2}` (from 0 when the threshold is negative),
    /// or a fixed grid from 2 up for the tree statements.
    pub fn default_alphas(self, n: usize) -> Result<Vec<Alpha>> {
        match self.threshold(n)? {
            Some(t) => {
                let base = t.max(int(0));
                [ratio(1, 4), int(1), ratio(5, 2)].into_iter().map(|d| Alpha::from_rational(base + d)).collect()
            }
            None => [2, 3, 4, 6, 10, 20, 40].into_iter().map(Alpha::integer).collect(),
        }
    }

    /// Violations of the predicate on one stable network, as messages.
    pub fn violations(self, net: &OwnedNetwork, alpha: Alpha) -> Result<Vec<String>> {
        let one = |bad: bool, msg: &str| if bad { vec![msg.to_string()] } else { Vec::new() };
        Ok(match self {
            LemmaId::L1 => one(find_triangle(net).is_some(), "contains a triangle"),
            LemmaId::L2 => one(has_four_cycle(net), "contains a 4-cycle"),
            LemmaId::L3 => biconnected_components(net)
                .iter()
                .filter(|h| h.is_cycle() && directed_orientation(net, &cycle_order(net, &h.vertices)).is_some())
                .map(|h| format!("component {:?} is a directed cycle", h.vertices))
                .collect(),
            LemmaId::L5 => critical_pairs(net)
                .iter()
                .filter(|r| r.strong)
                .map(|r| format!("strong critical pair <{}, {}>", r.v, r.u))
                .collect(),
            LemmaId::L7 => min_cycles(net)
                .iter()
                .filter(|c| !c.is_directed || c.length < 5)
                .map(|c| format!("min cycle {:?} (directed: {}, length {})", c.vertices, c.is_directed, c.length))
                .collect(),
            LemmaId::C1 => biconnected_components(net)
                .iter()
                .filter(|h| h.is_cycle())
                .map(|h| format!("component {:?} is a cycle", h.vertices))
                .collect(),
            LemmaId::T1 => one(!net.is_tree(), "not a tree"),
            LemmaId::L9 => centroid_orientation_violations(net)?,
            LemmaId::L10 => partial_sum_violations(net)?,
            LemmaId::T2 => tree_bound_violations(net, alpha)?,
        })
    }
}

impl FromStr for LemmaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Vertices of a cycle component in cycle order.
fn cycle_order(net: &OwnedNetwork, vertices: &[usize]) -> Vec<usize> {
    let inside = |x: usize| vertices.contains(&x);
    let mut order = vec![vertices[0]];
    let mut prev = usize::MAX;
    loop {
        let cur = *order.last().unwrap();
        let next = net.neighbors(cur).iter().copied().find(|&w| inside(w) && w != prev && w != order[0]);
        match next {
            Some(w) if order.len() < vertices.len() => {
                prev = cur;
                order.push(w);
            }
            _ => return order,
        }
    }
}

/// From each centroid: every bought edge away from the centroid points from
/// parent to child, and the child is a centroid of its subtree.
pub fn centroid_orientation_violations(tree: &OwnedNetwork) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for c in centroids(tree)?.centroids {
        let t = RootedTree::new(tree, c)?;
        for (a, b) in tree.bought_edges() {
            if a == c || b == c {
                continue;
            }
            if t.parent[b] != Some(a) {
                out.push(format!("from centroid {c}: {a} buys ({a}, {b}) but is not the parent of {b}"));
                continue;
            }
            let size = t.subtree_size[b];
            if let Some(&x) = t.children[b].iter().find(|&&x| 2 * t.subtree_size[x] > size) {
                out.push(format!(
                    "from centroid {c}: {b} is not a centroid of its subtree ({} of {size} vertices below {x})",
                    t.subtree_size[x]
                ));
            }
        }
    }
    Ok(out)
}

/// `n_i` for a sequence of tree vertices: how many vertices are strictly
/// closer to the `i`-th than to every other member.
pub fn closest_counts(dm: &DistanceMatrix, seq: &[usize]) -> Vec<usize> {
    let n = dm.n();
    (0..seq.len())
        .map(|i| {
            (0..n)
                .filter(|&x| {
                    let d = dm.hop(seq[i], x);
                    seq.iter().enumerate().all(|(j, &s)| j == i || d < dm.hop(s, x))
                })
                .count()
        })
        .collect()
}

/// Partial-sum bound `n_1 + ... + n_i >= n(1 - 1/2^i)` along every path from a
/// centroid's child down to a leaf, checked for the sequence starting at the
/// child and for the sequence starting one level lower.
pub fn partial_sum_violations(tree: &OwnedNetwork) -> Result<Vec<String>> {
    let n = tree.n();
    let dm = DistanceMatrix::new(tree);
    let mut out = Vec::new();
    for c in centroids(tree)?.centroids {
        let t = RootedTree::new(tree, c)?;
        for &leaf in t.order.iter().filter(|&&x| x != c && t.is_leaf(x)) {
            let path = t.path_from_root(leaf);
            for (reading, seq) in [("from the child", &path[1..]), ("below the child", &path[2.min(path.len())..])] {
                let counts = closest_counts(&dm, seq);
                let mut sum = 0;
                for (i, &ni) in counts.iter().enumerate() {
                    sum += ni;
                    let bound = subtree_size_lower_bound(n, i as u32 + 1)?;
                    if int(sum as i128) < bound {
                        out.push(format!(
                            "centroid {c}, path {seq:?} ({reading}): first {} counts sum to {sum} < {}",
                            i + 1,
                            format_rational(&bound)
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Social cost against the tree bound times the optimum, the bound itself
/// against 4, and depth and diameter against their bounds. Needs `alpha >= 2`.
pub fn tree_bound_violations(tree: &OwnedNetwork, alpha: Alpha) -> Result<Vec<String>> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let n = tree.n();
    let bound = tree_poa_bound(n, alpha)?;
    let opt = opt_social_cost(n, alpha)?;
    let mut out = Vec::new();
    let Cost::Finite(sc) = social_cost(tree, alpha) else { unreachable!("trees are connected") };
    if sc / opt > bound {
        out.push(format!(
            "social cost ratio {} exceeds the bound {}",
            format_rational(&(sc / opt)),
            format_rational(&bound)
        ));
    }
    if bound > int(4) {
        out.push(format!("bound {} exceeds 4", format_rational(&bound)));
    }
    let (depth_bound, diameter_bound) = stable_tree_depth_diameter(n, alpha)?;
    for c in centroids(tree)?.centroids {
        let h = RootedTree::new(tree, c)?.height();
        if int(h as i128) > depth_bound {
            out.push(format!("depth {h} from centroid {c} exceeds {}", format_rational(&depth_bound)));
        }
    }
    let dm = DistanceMatrix::new(tree);
    let diameter = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| dm.hop(a, b)).max().unwrap_or(0);
    if int(diameter as i128) > diameter_bound {
        out.push(format!("diameter {diameter} exceeds {}", format_rational(&diameter_bound)));
    }
    Ok(out)
}

/// How a lemma run enumerates and samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaOptions {
    /// Empty means the lemma's default grid.
    pub alphas: Vec<Alpha>,
    pub space: Option<Space>,
    pub mode: Option<Mode>,
    pub workers: usize,
    /// Sampled oracle instances to run alongside, when the lemma has an oracle.
    pub oracle_samples: usize,
    pub seed: u64,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions { alphas: Vec::new(), space: None, mode: None, workers: 1, oracle_samples: 0, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub alpha: Alpha,
    pub key: CanonicalKey,
    pub network: OwnedNetwork,
    pub messages: Vec<String>,
    /// The refuting deviation, when the lemma has an oracle and its hypothesis holds.
    pub oracle: Option<OracleOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaRun {
    pub alpha: Alpha,
    pub profiles_examined: u64,
    pub equilibria: usize,
    /// Equilibria the predicate applies to (the trees, for tree statements).
    pub checked: usize,
    pub violations: Vec<LemmaViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub statement: &'static str,
    pub n: usize,
    pub space: Space,
    pub mode: Mode,
    pub threshold: Option<String>,
    pub runs: Vec<AlphaRun>,
    pub oracle_samples: Option<OracleReport>,
}

impl LemmaReport {
    pub fn violation_count(&self) -> usize {
        self.runs.iter().map(|r| r.violations.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.violation_count() == 0 && self.oracle_samples.as_ref().is_none_or(|o| o.failure_count == 0)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} ({}) n = {}, {:?}, {:?}, threshold {}\n",
            self.lemma,
            self.statement,
            self.n,
            self.space,
            self.mode,
            self.threshold.as_deref().unwrap_or("none")
        );
        for r in &self.runs {
            out.push_str(&format!(
                "  alpha {:>8}  profiles {:>9}  equilibria {:>6}  checked {:>6}  violations {}\n",
                r.alpha.to_string(),
                r.profiles_examined,
                r.equilibria,
                r.checked,
                r.violations.len()
            ));
            for v in &r.violations {
                out.push_str(&format!("    {:?}: {}\n", v.network.bought_edges(), v.messages.join("; ")));
            }
        }
        if let Some(o) = &self.oracle_samples {
            out.push_str(&format!(
                "  oracle {} at alpha {}: {} of {} instances checked, {} bound failures\n",
                o.lemma, o.alpha, o.matched, o.requested, o.failure_count
            ));
        }
        out
    }
}

fn default_space(lemma: LemmaId, n: usize) -> Space {
    if lemma.is_tree_lemma() {
        Space::Trees
    } else if n <= 4 {
        Space::ProfileSpace
    } else {
        Space::GraphFirst
    }
}

fn default_mode(lemma: LemmaId, n: usize) -> Mode {
    if lemma.is_tree_lemma() && n >= 6 {
        Mode::SingleMove
    } else {
        Mode::Exact
    }
}

/// Enumerate equilibria at each price and test the lemma's predicate on all of them.
///
/// Refuses `n` below the statement's side condition and prices at or below
/// its threshold with `DomainError`.
pub fn verify_lemma(lemma: LemmaId, n: usize, options: &LemmaOptions) -> Result<LemmaReport> {
    if n < lemma.min_n() {
        return Err(Error::DomainError(format!("{lemma} covers n >= {}, got {n}", lemma.min_n())));
    }
    let threshold = lemma.threshold(n)?;
    let alphas = if options.alphas.is_empty() { lemma.default_alphas(n)? } else { options.alphas.clone() };
    for a in &alphas {
        if let Some(t) = threshold {
            if a.value() <= t {
                return Err(Error::DomainError(format!(
                    "{lemma} needs alpha > {}, got {a}",
                    format_rational(&t)
                )));
            }
        }
        if lemma == LemmaId::T2 && a.value() < int(2) {
            return Err(Error::DomainError(format!("T2 needs alpha >= 2, got {a}")));
        }
    }
    let space = options.space.unwrap_or_else(|| default_space(lemma, n));
    let mode = options.mode.unwrap_or_else(|| default_mode(lemma, n));
    let spec = EnumerationSpec::new(n, space).with_mode(mode).with_workers(options.workers).connected_only(true);
    spec.validate()?;
    let mut runs = Vec::new();
    for &alpha in &alphas {
        let found = find_equilibria(&spec, alpha)?;
        let mut run = AlphaRun {
            alpha,
            profiles_examined: found.profiles_examined,
            equilibria: found.equilibria.len(),
            checked: 0,
            violations: Vec::new(),
        };
        for rec in &found.equilibria {
            if lemma.is_tree_lemma() && !rec.is_tree {
                continue;
            }
            run.checked += 1;
            let messages = lemma.violations(&rec.network, alpha)?;
            if !messages.is_empty() {
                let oracle = lemma.oracle().and_then(|o| proof_deviation_oracle(o, &rec.network, alpha).ok());
                run.violations.push(LemmaViolation {
                    alpha,
                    key: rec.key.clone(),
                    network: rec.network.clone(),
                    messages,
                    oracle,
                });
            }
        }
        runs.push(run);
    }
    let oracle_samples = match lemma.oracle() {
        Some(o) if options.oracle_samples > 0 => {
            Some(run_oracle_samples(o, n, None, options.oracle_samples, options.seed, options.workers)?)
        }
        _ => None,
    };
    Ok(LemmaReport {
        lemma,
        statement: lemma.description(),
        n,
        space,
        mode,
        threshold: threshold.map(|t| format_rational(&t)),
        runs,
        oracle_samples,
    })
}
