//! Closed-form thresholds and price-of-anarchy bounds, in exact arithmetic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, to_decimal, Alpha, Rational};

fn n_at_least(n: usize, min: usize, what: &str) -> Result<Rational> {
    if n < min {
        return Err(Error::DomainError(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(int(n as i128))
}

/// Above `(n-1)/2` stable networks have no triangle.
pub fn no_triangle_threshold(n: usize) -> Result<Rational> {
    Ok((n_at_least(n, 1, "the triangle threshold")? - 1) / 2)
}

/// Above `n-2` stable networks have no 4-cycle.
pub fn no_four_cycle_threshold(n: usize) -> Result<Rational> {
    Ok(n_at_least(n, 2, "the 4-cycle threshold")? - 2)
}

/// Above `2n-6` stable networks have no strong critical pair.
pub fn no_strong_critical_pair_threshold(n: usize) -> Result<Rational> {
    Ok(n_at_least(n, 3, "the strong critical pair threshold")? * 2 - 6)
}

/// Above `4n-13` every stable network on `n >= 4` agents is a tree.
pub fn tree_threshold(n: usize) -> Result<Rational> {
    Ok(n_at_least(n, 4, "the tree threshold")? * 4 - 13)
}

fn alpha_at_least_two(alpha: Alpha) -> Result<Rational> {
    let a = alpha.value();
    if a < int(2) {
        return Err(Error::DomainError(format!("needs alpha >= 2, got {alpha}")));
    }
    Ok(a)
}

/// Social cost of the star, optimal for `alpha >= 2`: `(2n + alpha - 2)(n - 1)`.
pub fn opt_social_cost(n: usize, alpha: Alpha) -> Result<Rational> {
    let n = n_at_least(n, 2, "the optimum formula")?;
    let a = alpha_at_least_two(alpha)?;
    Ok((n * 2 + a - 2) * (n - 1))
}

/// Upper bound on the price of anarchy over stable trees:
/// `3 + (2n^2 - 8n - 4 alpha) / (2n^2 + (alpha - 2) n)`.
pub fn tree_poa_bound(n: usize, alpha: Alpha) -> Result<Rational> {
    let n = n_at_least(n, 3, "the stable-tree bound")?;
    let a = alpha_at_least_two(alpha)?;
    Ok(int(3) + (n * n * 2 - n * 8 - a * 4) / (n * n * 2 + (a - 2) * n))
}

/// `3 + 2n / (2n + alpha)`.
pub fn corollary_poa_bound(n: usize, alpha: Alpha) -> Result<Rational> {
    let n = n_at_least(n, 1, "the simplified bound")?;
    let a = alpha.value();
    if a <= int(0) {
        return Err(Error::DomainError("the simplified bound needs alpha > 0".into()));
    }
    Ok(int(3) + n * 2 / (n * 2 + a))
}

/// Depth bound `alpha/n + 4` (from a centroid root) and diameter bound
/// `2 alpha/n + 8` for stable trees.
pub fn stable_tree_depth_diameter(n: usize, alpha: Alpha) -> Result<(Rational, Rational)> {
    let n = n_at_least(n, 2, "the depth bound")?;
    let a = alpha.value();
    Ok((a / n + 4, a * 2 / n + 8))
}

/// `n (1 - 1/2^i)`: the least total size of the first `i` subtrees along a
/// centroid-to-leaf comparison sequence.
pub fn subtree_size_lower_bound(n: usize, i: u32) -> Result<Rational> {
    if i == 0 || i > 120 {
        return Err(Error::DomainError(format!("needs 1 <= i <= 120, got {i}")));
    }
    let pow = int(1i128 << i);
    Ok(int(n as i128) * (pow - 1) / pow)
}

/// One formula evaluated at a point, or why it is undefined there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: Option<String>,
    pub decimal: Option<String>,
    pub domain_error: Option<String>,
    #[serde(skip)]
    pub exact: Option<Rational>,
}

impl BoundEntry {
    fn new(name: &'static str, r: Result<Rational>) -> Self {
        match r {
            Ok(v) => BoundEntry {
                name,
                value: Some(format_rational(&v)),
                decimal: Some(to_decimal(&v, 6)),
                domain_error: None,
                exact: Some(v),
            },
            Err(e) => BoundEntry { name, value: None, decimal: None, domain_error: Some(e.to_string()), exact: None },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub n: usize,
    pub alpha: Alpha,
    pub thresholds: Vec<BoundEntry>,
    pub bounds: Vec<BoundEntry>,
    /// Whether `alpha` exceeds the tree threshold, so every stable network is a tree.
    pub above_tree_threshold: Option<bool>,
}

impl BoundsTable {
    pub fn new(n: usize, alpha: Alpha) -> Self {
        let depth = stable_tree_depth_diameter(n, alpha);
        let thresholds = vec![
            BoundEntry::new("no_triangle", no_triangle_threshold(n)),
            BoundEntry::new("no_four_cycle", no_four_cycle_threshold(n)),
            BoundEntry::new("no_strong_critical_pair", no_strong_critical_pair_threshold(n)),
            BoundEntry::new("tree", tree_threshold(n)),
        ];
        let bounds = vec![
            BoundEntry::new("opt_social_cost", opt_social_cost(n, alpha)),
            BoundEntry::new("tree_poa", tree_poa_bound(n, alpha)),
            BoundEntry::new("simplified_poa", corollary_poa_bound(n, alpha)),
            BoundEntry::new("stable_tree_depth", depth.clone().map(|d| d.0)),
            BoundEntry::new("stable_tree_diameter", depth.map(|d| d.1)),
        ];
        let above_tree_threshold = tree_threshold(n).ok().map(|t| alpha.value() > t);
        BoundsTable { n, alpha, thresholds, bounds, above_tree_threshold }
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.thresholds.iter().chain(&self.bounds).find(|e| e.name == name)
    }

    /// Aligned `name  value  decimal` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, alpha = {}\n", self.n, self.alpha);
        for e in self.thresholds.iter().chain(&self.bounds) {
            match (&e.value, &e.decimal, &e.domain_error) {
                (Some(v), Some(d), _) => out.push_str(&format!("{:<24} {:>14} {:>16}\n", e.name, v, d)),
                (_, _, Some(err)) => out.push_str(&format!("{:<24} undefined ({err})\n", e.name)),
                _ => {}
            }
        }
        out
    }
}
