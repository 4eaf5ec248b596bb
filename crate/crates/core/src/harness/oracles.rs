//! Proof-deviation oracles: rebuild the explicit deviation an argument
//! prescribes on a concrete network, evaluate it exactly and certify the
//! intermediate cost bounds the argument relies on.
//!
//! Every check recorded here is meant to hold on any network that meets the
//! hypothesis; checks that only follow from stability are recorded only when
//! the deviations they rest on turn out to be non-improving.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{no_four_cycle_threshold, no_strong_critical_pair_threshold, no_triangle_threshold, tree_threshold};
use crate::error::{Error, Result};
use crate::game::{agent_cost, apply_deviation, Deviation};
use crate::graph::{
    biconnected_components, distcost, edge, shortest_path, Dist, DistanceMatrix, OwnedNetwork,
};
use crate::rational::{format_rational, int, ratio, serialize_opt_rational, Alpha, Cost, Rational};
use crate::structure::{
    check_critical_pair, closest_partition_with, directed_orientation, find_chordless_four_cycle, find_triangle,
    spt_with_rule, PairCheck, ShortestPathTree,
};

/// Arguments with an oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OracleLemma {
    /// Deleting an edge of a triangle.
    L1,
    /// Breaking a chordless 4-cycle.
    L2,
    /// Re-rooting one purchase at a far vertex.
    L4,
    /// The two re-rooting moves around a strong critical pair.
    L5,
    /// The three moves around a critical pair with a short detour.
    T1,
}

impl OracleLemma {
    pub const ALL: [OracleLemma; 5] = [OracleLemma::L1, OracleLemma::L2, OracleLemma::L4, OracleLemma::L5, OracleLemma::T1];

    pub fn id(self) -> &'static str {
        match self {
            OracleLemma::L1 => "L1",
            OracleLemma::L2 => "L2",
            OracleLemma::L4 => "L4",
            OracleLemma::L5 => "L5",
            OracleLemma::T1 => "T1",
        }
    }

    /// Price above which some prescribed deviation must strictly improve.
    pub fn threshold(self, n: usize) -> Result<Option<Rational>> {
        Ok(match self {
            OracleLemma::L1 => Some(no_triangle_threshold(n)?),
            OracleLemma::L2 => Some(no_four_cycle_threshold(n)?),
            OracleLemma::L4 => None,
            OracleLemma::L5 => Some(no_strong_critical_pair_threshold(n)?),
            OracleLemma::T1 => Some(tree_threshold(n)?),
        })
    }

    /// Half a unit above the threshold, or `n` when there is none.
    pub fn default_alpha(self, n: usize) -> Result<Alpha> {
        let base = self.threshold(n)?.unwrap_or(int(n as i128) - ratio(1, 2));
        Alpha::from_rational((base + ratio(1, 2)).max(int(0)))
    }
}

impl FromStr for OracleLemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OracleLemma::ALL
            .into_iter()
            .find(|l| l.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

impl fmt::Display for OracleLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One prescribed deviation, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeviationEval {
    pub label: &'static str,
    pub deviation: Deviation,
    pub distcost_before: Dist,
    pub distcost_after: Dist,
    pub cost_before: Cost,
    pub cost_after: Cost,
    /// `cost_before - cost_after`; absent when either side is infinite.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub gain: Option<Rational>,
    pub improving: bool,
}

impl DeviationEval {
    fn new(net: &OwnedNetwork, alpha: Alpha, label: &'static str, deviation: Deviation) -> Result<Self> {
        let after = apply_deviation(net, &deviation)?;
        let before = agent_cost(net, alpha, deviation.agent);
        let post = agent_cost(&after, alpha, deviation.agent);
        Ok(DeviationEval {
            label,
            distcost_before: before.distance,
            distcost_after: post.distance,
            cost_before: before.total,
            cost_after: post.total,
            gain: before.total.checked_sub(&post.total),
            improving: post.total < before.total,
            deviation,
        })
    }

    fn dist_after(&self) -> Option<Rational> {
        self.distcost_after.finite().map(|d| int(d as i128))
    }

    /// Growth of the deviator's distance cost.
    fn dist_increase(&self) -> Option<Rational> {
        Some(self.dist_after()? - int(self.distcost_before.finite()? as i128))
    }
}

/// `lhs <= rhs`, with an absent left side standing for infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl BoundCheck {
    fn le(name: impl Into<String>, lhs: Option<Rational>, rhs: Rational) -> Self {
        BoundCheck {
            name: name.into(),
            lhs: lhs.map_or_else(|| "inf".into(), |l| format_rational(&l)),
            rhs: format_rational(&rhs),
            holds: lhs.is_some_and(|l| l <= rhs),
        }
    }

    fn claim(name: impl Into<String>, holds: bool) -> Self {
        BoundCheck { name: name.into(), lhs: holds.to_string(), rhs: "true".into(), holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    pub lemma: OracleLemma,
    pub n: usize,
    pub alpha: Alpha,
    /// The hypothesis witness the deviations were built from.
    pub witness: String,
    pub deviations: Vec<DeviationEval>,
    pub checks: Vec<BoundCheck>,
    /// Quantities reported for reference and not asserted.
    pub notes: Vec<String>,
    pub bound_holds: bool,
    pub improving: bool,
}

impl OracleOutcome {
    pub fn failed_checks(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

struct Builder<'a> {
    net: &'a OwnedNetwork,
    alpha: Alpha,
    deviations: Vec<DeviationEval>,
    checks: Vec<BoundCheck>,
    notes: Vec<String>,
}

impl Builder<'_> {
    fn eval(&mut self, label: &'static str, d: Deviation) -> Result<usize> {
        self.deviations.push(DeviationEval::new(self.net, self.alpha, label, d)?);
        Ok(self.deviations.len() - 1)
    }

    fn finish(self, lemma: OracleLemma, witness: String) -> Result<OracleOutcome> {
        let n = self.net.n();
        let mut checks = self.checks;
        let improving = self.deviations.iter().any(|d| d.improving);
        if let Some(t) = lemma.threshold(n)? {
            if self.alpha.value() > t {
                checks.push(BoundCheck::claim(
                    format!("some prescribed deviation improves since alpha > {}", format_rational(&t)),
                    improving,
                ));
            }
        }
        Ok(OracleOutcome {
            lemma,
            n,
            alpha: self.alpha,
            witness,
            bound_holds: checks.iter().all(|c| c.holds),
            deviations: self.deviations,
            checks,
            notes: self.notes,
            improving,
        })
    }
}

fn r(v: impl TryInto<i128>) -> Rational {
    int(v.try_into().ok().expect("fits in i128"))
}

/// Build and evaluate the deviations the argument `lemma` prescribes on `net`.
///
/// Fails with `HypothesisUnmet` when `net` has no witness of the shape the
/// argument starts from, or is disconnected.
pub fn proof_deviation_oracle(lemma: OracleLemma, net: &OwnedNetwork, alpha: Alpha) -> Result<OracleOutcome> {
    if !net.is_connected() {
        return Err(Error::HypothesisUnmet("the network is connected".into()));
    }
    let mut b = Builder { net, alpha, deviations: Vec::new(), checks: Vec::new(), notes: Vec::new() };
    let witness = match lemma {
        OracleLemma::L1 => triangle(&mut b)?,
        OracleLemma::L2 => four_cycle(&mut b)?,
        OracleLemma::L4 => far_rerooting(&mut b)?,
        OracleLemma::L5 => strong_pair(&mut b)?,
        OracleLemma::T1 => detour_pair(&mut b)?,
    };
    b.finish(lemma, witness)
}

/// The owner of the triangle edge opposite the largest closest-set deletes it.
fn triangle(b: &mut Builder) -> Result<String> {
    let net = b.net;
    let n = net.n();
    let tri = find_triangle(net).ok_or_else(|| Error::HypothesisUnmet("the network contains a triangle".into()))?;
    let dm = DistanceMatrix::new(net);
    let sizes = closest_partition_with(net, &dm, &tri)?.set_sizes();
    let i0 = (0..3).fold(0, |best, i| if sizes[i] > sizes[best] { i } else { best });
    let (p, q) = (tri[(i0 + 1) % 3], tri[(i0 + 2) % 3]);
    let (owner, other, other_slot) = if net.buys(p, q) { (p, q, (i0 + 2) % 3) } else { (q, p, (i0 + 1) % 3) };
    let i = b.eval("delete", Deviation::delete(net, owner, other)?)?;
    let vw = sizes[other_slot];
    let dev = &b.deviations[i];
    let (inc, gain) = (dev.dist_increase(), dev.gain);
    b.checks.push(BoundCheck::le("distance increase <= |V_other|", inc, r(vw)));
    b.checks.push(BoundCheck::le("|V_other| <= (n-1)/2", Some(r(vw)), ratio(n as i128 - 1, 2)));
    b.checks.push(BoundCheck::le(
        "alpha - (n-1)/2 <= gain",
        Some(b.alpha.value() - ratio(n as i128 - 1, 2)),
        gain.unwrap_or(int(i128::MIN / 4)),
    ));
    Ok(format!("triangle {tri:?}, closest-set sizes {sizes:?}, {owner} deletes ({owner}, {other})"))
}

/// Double owner: swap one cycle edge to the opposite vertex and drop the
/// other. Directed cycle: the vertex before the lightest slot deletes.
fn four_cycle(b: &mut Builder) -> Result<String> {
    let net = b.net;
    let n = net.n();
    let c = find_chordless_four_cycle(net)
        .ok_or_else(|| Error::HypothesisUnmet("the network contains a chordless 4-cycle".into()))?;
    let dm = DistanceMatrix::new(net);
    let double = (0..4).find(|&i| net.buys(c[i], c[(i + 1) % 4]) && net.buys(c[i], c[(i + 3) % 4]));
    if let Some(i) = double {
        let u: Vec<usize> = (0..4).map(|k| c[(i + k) % 4]).collect();
        let part = closest_partition_with(net, &dm, &u)?;
        let s = part.set_sizes();
        let j = b.eval("swap-delete", Deviation::swap_and_delete(net, u[0], u[1], u[2], u[3])?)?;
        let inc = b.deviations[j].dist_increase();
        b.checks.push(BoundCheck::le("distance increase <= n-3", inc, r(n) - 3));
        let partition_bound = r(s[1]) + r(s[3]) - r(s[2]);
        b.notes.push(format!(
            "|V1| + |V3| - |V2| = {}, distance increase {}",
            format_rational(&partition_bound),
            inc.map_or("inf".into(), |x| format_rational(&x))
        ));
        return Ok(format!("4-cycle {u:?}, {} buys both cycle edges", u[0]));
    }
    let u = directed_orientation(net, &c).ok_or_else(|| {
        Error::HypothesisUnmet(format!("4-cycle {c:?} has a double owner or is directed"))
    })?;
    let part = closest_partition_with(net, &dm, &u)?;
    let (v, z) = (part.set_sizes(), part.tie_sizes());
    let weight = |i: usize| v[i] + z[(i + 1) % 4];
    let i = (0..4).fold(0, |best, i| if weight(i) < weight(best) { i } else { best });
    let deleter = u[(i + 3) % 4];
    let j = b.eval("delete", Deviation::delete(net, deleter, u[i])?)?;
    let inc = b.deviations[j].dist_increase();
    let bound = 2 * v[i] + z[(i + 1) % 4];
    b.checks.push(BoundCheck::le("distance increase <= 2|V_i| + |Z_i+1|", inc, r(bound)));
    b.checks.push(BoundCheck::le("2|V_i| + |Z_i+1| <= n/2", Some(r(bound)), ratio(n as i128, 2)));
    Ok(format!("directed 4-cycle {u:?}, sets {v:?}, ties {z:?}, {deleter} deletes ({deleter}, {})", u[i]))
}

/// Shortest-path tree from `root` where `prefer.0` takes `prefer.1` as parent
/// when eligible and `avoid.0` refuses `avoid.1` when it has another choice.
fn steered_spt(net: &OwnedNetwork, root: usize, prefer: (usize, usize), avoid: (usize, usize)) -> ShortestPathTree {
    spt_with_rule(net, root, |x, el| {
        if x == prefer.0 && el.contains(&prefer.1) {
            prefer.1
        } else if x == avoid.0 {
            el.iter().copied().find(|&p| p != avoid.1).unwrap_or(el[0])
        } else {
            el[0]
        }
    })
}

/// `a` swaps `(a, a')` to `(a, b)` and drops every other purchase outside
/// `tree`, a shortest-path tree rooted at `b`. Returns the move and the
/// number of extra deletions.
fn rerooting(net: &OwnedNetwork, a: usize, a_prime: usize, b: usize, tree: &ShortestPathTree) -> Result<(Deviation, usize)> {
    if tree.contains_edge(a, a_prime) && tree.parent[a] != Some(a_prime) {
        return Err(Error::HypothesisUnmet(format!("({a}, {a_prime}) hangs {a_prime} below {a} in the tree from {b}")));
    }
    let kept: BTreeSet<usize> =
        net.strategy(a).iter().copied().filter(|&x| x != a_prime && tree.contains_edge(a, x)).collect();
    let k = net.strategy(a).len() - 1 - kept.len();
    let mut s = kept;
    s.insert(b);
    Ok((Deviation::replace(net, a, s), k))
}

/// Record the re-rooting bounds for a move evaluated at index `i`.
fn rerooting_checks(b: &mut Builder, i: usize, tag: &str, a: usize, target: usize, k: usize) {
    let n = b.net.n();
    let dev = &b.deviations[i];
    let dist_b = r(distcost(b.net, target).unwrap());
    let (after, improving) = (dev.dist_after(), dev.improving);
    b.checks.push(BoundCheck::le(format!("{tag}: distcost after <= distcost({target}) + n-3"), after, dist_b + r(n) - 3));
    if !improving {
        let before = r(distcost(b.net, a).unwrap());
        b.checks.push(BoundCheck::le(
            format!("{tag}: non-improving, so distcost({a}) <= distcost({target}) + n-3 - {k} alpha"),
            Some(before),
            dist_b + r(n) - 3 - b.alpha.times(k),
        ));
    }
}

/// First `(a, a', b)` in index order with `a` buying `a'` and `d(a, b) >= 2`
/// for which the steered tree from `b` keeps `a'` above `a`.
fn far_rerooting(b: &mut Builder) -> Result<String> {
    let net = b.net;
    let dm = DistanceMatrix::new(net);
    for a in 0..net.n() {
        for &ap in net.strategy(a) {
            for t in 0..net.n() {
                if t == ap || dm.hop(a, t) < 2 {
                    continue;
                }
                let tree = steered_spt(net, t, (a, ap), (ap, a));
                let Ok((d, k)) = rerooting(net, a, ap, t, &tree) else { continue };
                let i = b.eval("reroot", d)?;
                rerooting_checks(b, i, "reroot", a, t, k);
                return Ok(format!("{a} swaps ({a}, {ap}) to ({a}, {t}) and drops {k} more"));
            }
        }
    }
    Err(Error::HypothesisUnmet("some agent buys an edge and has a vertex at distance >= 2".into()))
}

/// First strong critical pair; both re-rooting moves are evaluated.
fn strong_pair(b: &mut Builder) -> Result<String> {
    let net = b.net;
    let n = net.n();
    let dm = DistanceMatrix::new(net);
    let comps = biconnected_components(net);
    let found = tuples(net).find(|&(v, v1, v2, u, up)| {
        check_critical_pair(net, &dm, &comps, (v, v1, v2), (u, up)) == PairCheck::Strong
    });
    let (v, v1, v2, u, up) = found.ok_or_else(|| Error::HypothesisUnmet("a strong critical pair exists".into()))?;
    let tree_u = steered_spt(net, v, (u, up), (up, u));
    let (d1, k1) = rerooting(net, u, up, v, &tree_u)?;
    let tree_v = steered_spt(net, u, (v, v1), (v2, v));
    let (d2, k2) = rerooting(net, v, v1, u, &tree_v)?;
    let i1 = b.eval("reroot-u", d1)?;
    let i2 = b.eval("reroot-v", d2)?;
    rerooting_checks(b, i1, "reroot-u", u, v, k1);
    rerooting_checks(b, i2, "reroot-v", v, u, k2);
    b.checks.push(BoundCheck::le("reroot-v drops (v, v2): 1 <= k", Some(int(1)), r(k2)));
    if !b.deviations[i1].improving && !b.deviations[i2].improving {
        b.checks.push(BoundCheck::le("both non-improving: (k_u + k_v) alpha <= 2n-6", Some(b.alpha.times(k1 + k2)), r(2 * n) - 6));
    }
    Ok(format!("strong pair <{v}, {u}> with v1 = {v1}, v2 = {v2}, u' = {up}"))
}

/// Every `(v, v1, v2, u, u')` with `v` buying `v1 != v2` and `u` buying `u'`, in index order.
fn tuples(net: &OwnedNetwork) -> impl Iterator<Item = (usize, usize, usize, usize, usize)> + '_ {
    (0..net.n()).flat_map(move |v| {
        (0..net.n()).filter(move |&u| u != v).flat_map(move |u| {
            net.strategy(v).iter().flat_map(move |&v1| {
                net.strategy(v).iter().filter(move |&&v2| v2 != v1).flat_map(move |&v2| {
                    net.strategy(u).iter().map(move |&up| (v, v1, v2, u, up))
                })
            })
        })
    })
}

/// First critical, non-strong tuple with a path from `v` to `v2` avoiding
/// both purchases of `v` of length at most `2 d(u, v)`.
fn detour_pair(b: &mut Builder) -> Result<String> {
    let net = b.net;
    let n = net.n();
    let dm = DistanceMatrix::new(net);
    let comps = biconnected_components(net);
    let found = tuples(net).find_map(|(v, v1, v2, u, up)| {
        if check_critical_pair(net, &dm, &comps, (v, v1, v2), (u, up)) != PairCheck::Critical {
            return None;
        }
        let p = shortest_path(net, v, v2, &[edge(v, v1), edge(v, v2)])?;
        (p.len() as u64 - 1 <= 2 * dm.hop(u, v)).then_some((v, v1, v2, u, up, p))
    });
    let (v, v1, v2, u, up, path) = found.ok_or_else(|| {
        Error::HypothesisUnmet("a non-strong critical pair with a short detour to v2 exists".into())
    })?;
    let tree = spt_with_rule(net, u, |x, el| {
        if x == v && el.contains(&v1) {
            v1
        } else if x == v2 && el.contains(&v) {
            v
        } else {
            el[0]
        }
    });
    if tree.parent[v] != Some(v1) || tree.parent[v2] != Some(v) {
        return Err(Error::HypothesisUnmet(format!("the tree from {u} runs {v1} -> {v} -> {v2}")));
    }
    let x_set = tree.descendants(v2);
    let in_x: Vec<bool> = (0..n).map(|x| x_set.contains(&x)).collect();
    let xs = r(x_set.len());
    let duv = r(dm.hop(u, v));
    let d_v_x: u64 = x_set.iter().map(|&x| dm.hop(v, x)).sum();
    let d_u_rest: u64 = (0..n).filter(|&x| !in_x[x]).map(|x| dm.hop(u, x)).sum();
    let dist_u = r(dm.distcost(u).unwrap());
    let dist_v = r(dm.distcost(v).unwrap());

    let tree_u = steered_spt(net, v, (u, up), (up, u));
    let (d_u, k_u) = rerooting(net, u, up, v, &tree_u)?;
    let iu = b.eval("reroot-u", d_u)?;
    let is = b.eval("swap", Deviation::swap(net, v, v1, u)?)?;
    let ic = b.eval("swap-delete", Deviation::swap_and_delete(net, v, v1, u, v2)?)?;
    rerooting_checks(b, iu, "reroot-u", u, v, k_u);

    let comp_after = b.deviations[ic].dist_after();
    let chain: u64 = x_set.iter().map(|&x| 2 * dm.hop(u, v) + dm.hop(v2, x)).sum::<u64>()
        + (0..n).filter(|&x| !in_x[x] && x != v).map(|x| 1 + dm.hop(u, x)).sum::<u64>();
    b.checks.push(BoundCheck::le("swap-delete: distcost after <= detour sum", comp_after, r(chain)));
    b.checks.push(BoundCheck::le(
        "swap-delete: distcost after <= d(u,v)|X| + n - 2|X| + distcost(u) - 2",
        comp_after,
        duv * xs + r(n) - xs * 2 + dist_u - 2,
    ));
    b.checks.push(BoundCheck::le(
        "swap: distcost after <= d(v,X) + n - |X| + d(u,V-X) - 2",
        b.deviations[is].dist_after(),
        r(d_v_x) + r(n) - xs + r(d_u_rest) - 2,
    ));
    if !b.deviations[iu].improving && !b.deviations[is].improving {
        b.checks.push(BoundCheck::le("reroot-u and swap non-improving: d(u,v)|X| <= 2n-5-|X|", Some(duv * xs), r(2 * n) - 5 - xs));
        b.checks.push(BoundCheck::le(
            "reroot-u and swap non-improving: swap-delete distance increase <= 4n-10-3|X|",
            comp_after.map(|c| c - dist_v),
            r(4 * n) - 10 - xs * 3,
        ));
        let gain = b.deviations[ic].gain;
        b.checks.push(BoundCheck::le(
            "reroot-u and swap non-improving: alpha - (4n-13) <= swap-delete gain",
            Some(b.alpha.value() - r(4 * n) + 13),
            gain.unwrap_or(int(i128::MIN / 4)),
        ));
    }
    b.notes.push(format!("|X| = {}, detour {path:?}", x_set.len()));
    Ok(format!("critical pair <{v}, {u}> with v1 = {v1}, v2 = {v2}, u' = {up}"))
}
