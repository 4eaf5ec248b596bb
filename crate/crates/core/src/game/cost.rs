use serde::Serialize;

use crate::graph::{distcost, Dist, OwnedNetwork};
use crate::rational::{serialize_rational, Alpha, Cost, Rational};

/// `alpha * |S_u|` plus the distance cost of one agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostBreakdown {
    #[serde(serialize_with = "serialize_rational")]
    pub creation: Rational,
    pub distance: Dist,
    pub total: Cost,
}

impl CostBreakdown {
    pub fn new(creation: Rational, distance: Dist) -> Self {
        CostBreakdown { creation, distance, total: Cost::Finite(creation) + Cost::from_dist(distance) }
    }
}

pub fn agent_cost(net: &OwnedNetwork, alpha: Alpha, u: usize) -> CostBreakdown {
    CostBreakdown::new(alpha.times(net.strategy(u).len()), distcost(net, u))
}

/// Sum of all agents' costs.
pub fn social_cost(net: &OwnedNetwork, alpha: Alpha) -> Cost {
    (0..net.n()).map(|u| agent_cost(net, alpha, u).total).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn star4() -> OwnedNetwork {
        OwnedNetwork::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn star_costs() {
        let a = Alpha::integer(3).unwrap();
        let c = agent_cost(&star4(), a, 0);
        assert_eq!(c.creation, int(9));
        assert_eq!(c.distance, Dist::Finite(3));
        assert_eq!(c.total, Cost::Finite(int(12)));
        let leaf = agent_cost(&star4(), a, 1);
        assert_eq!((leaf.creation, leaf.distance, leaf.total), (int(0), Dist::Finite(5), Cost::Finite(int(5))));
        assert_eq!(social_cost(&star4(), a), Cost::Finite(int(27)));
    }

    #[test]
    fn disconnected_is_infinite() {
        let net = OwnedNetwork::new(3, &[(0, 1)]).unwrap();
        let c = agent_cost(&net, Alpha::integer(1).unwrap(), 0);
        assert_eq!(c.creation, int(1));
        assert_eq!(c.total, Cost::Infinite);
    }

    #[test]
    fn trivial_and_path() {
        assert_eq!(social_cost(&OwnedNetwork::empty(1), Alpha::new(7, 2).unwrap()), Cost::zero());
        let path = OwnedNetwork::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(social_cost(&path, Alpha::integer(1).unwrap()), Cost::Finite(int(10)));
        assert_eq!(
            social_cost(&path, Alpha::new(1, 2).unwrap()),
            Cost::Finite(ratio(1, 1) + int(8))
        );
    }
}
