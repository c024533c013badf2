//! Deterministic constructors for the concrete benchmark instances used as
//! regression anchors throughout the test suites.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Kind};
use crate::rational::Rational;

/// The 3x4 offset matrix; every labeled group of four entries sums to 55.
const O_MATRIX: [[i64; 4]; 3] = [[17, 25, 12, 1], [2, 22, 3, 28], [11, 0, 21, 23]];

/// Per-agent epsilon adjustments.
const E_MATRICES: [[[i64; 4]; 3]; 3] = [
    [[-3, 1, 1, 1], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[-3, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]],
    [[-3, 0, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
];

/// Named benchmark instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureId {
    /// Three agents, twelve items, entries `10^6 + 10^3*O + E^i`; an MmS
    /// allocation exists for it but not for its negation.
    I,
    /// The negation of `I` (a chores instance with no MmS allocation).
    NegI,
    /// Like `I` but with the E-matrices subtracted; no MmS allocation.
    J,
    /// The negation of `J` (a chores instance with an MmS allocation).
    NegJ,
    /// `agents * (agents - 1)` items of value `1/agents` plus one item of
    /// value 1, identical for all agents. Negated, it makes the round-robin
    /// bound tight.
    TightRoundRobin { agents: usize },
    /// Two agents, two items, utilities `[[r, 1], [1, r]]` with `r > 1`.
    TwoAgentR { r: Rational },
    /// `agents` agents sharing a single utility list.
    Identical {
        utilities: Vec<Rational>,
        agents: usize,
    },
}

/// Builds the named instance.
pub fn build(id: &FixtureId) -> Result<Instance> {
    match id {
        FixtureId::I => modified_grid_instance(1),
        FixtureId::NegI => Ok(modified_grid_instance(1)?.negated()),
        FixtureId::J => modified_grid_instance(-1),
        FixtureId::NegJ => Ok(modified_grid_instance(-1)?.negated()),
        FixtureId::TightRoundRobin { agents } => tight_round_robin(*agents),
        FixtureId::TwoAgentR { r } => two_agent_r(r),
        FixtureId::Identical { utilities, agents } => identical(utilities, *agents),
    }
}

/// The row allocation for the 3x12 grid fixtures: bundle `i` holds the four
/// items of row `i + 1`.
pub fn grid_row_allocation() -> Allocation {
    Allocation::new(
        vec![(0..4).collect(), (4..8).collect(), (8..12).collect()],
        12,
    )
    .expect("static partition")
}

fn modified_grid_instance(e_sign: i64) -> Result<Instance> {
    let agents = (1..=3).map(|i| i.to_string()).collect();
    let mut items = Vec::with_capacity(12);
    for j in 1..=3 {
        for k in 1..=4 {
            items.push(format!("({j},{k})"));
        }
    }
    let utilities = (0..3)
        .map(|agent| {
            let mut row = Vec::with_capacity(12);
            for j in 0..3 {
                for k in 0..4 {
                    let value =
                        1_000_000 + 1_000 * O_MATRIX[j][k] + e_sign * E_MATRICES[agent][j][k];
                    row.push(Rational::int(value));
                }
            }
            row
        })
        .collect();
    Instance::new(Kind::Goods, agents, items, utilities)
}

fn tight_round_robin(n: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::BadParams(format!(
            "tight_rr needs at least 2 agents, got {n}"
        )));
    }
    let m = (n - 1) * n + 1;
    let agents = (1..=n).map(|i| i.to_string()).collect();
    let items = (1..=m).map(|j| format!("t{j}")).collect();
    let mut row: Vec<Rational> = vec![Rational::ratio(1, n as i64); m - 1];
    row.push(Rational::int(1));
    let utilities = vec![row; n];
    Instance::new(Kind::Goods, agents, items, utilities)
}

fn two_agent_r(r: &Rational) -> Result<Instance> {
    if r <= &Rational::int(1) {
        return Err(Error::BadParams(format!("two_agent_r needs r > 1, got {r}")));
    }
    Instance::new(
        Kind::Goods,
        vec!["1".into(), "2".into()],
        vec!["a".into(), "b".into()],
        vec![
            vec![r.clone(), Rational::int(1)],
            vec![Rational::int(1), r.clone()],
        ],
    )
}

fn identical(utilities: &[Rational], n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::BadParams("identical needs at least 1 agent".into()));
    }
    let agents = (1..=n).map(|i| i.to_string()).collect();
    let items = (1..=utilities.len()).map(|j| j.to_string()).collect();
    let rows = vec![utilities.to_vec(); n];
    Instance::new(Kind::Goods, agents, items, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Greek / sign labelings of the offset matrix, flattened row-major.
    // 0,1,2 encode alpha,beta,gamma and plus,minus,star respectively.
    const GREEK: [usize; 12] = [0, 0, 1, 2, 0, 1, 2, 2, 0, 1, 1, 2];
    const SIGNS: [usize; 12] = [0, 1, 0, 2, 1, 2, 0, 1, 2, 1, 2, 0];

    #[test]
    fn grid_entry_matches_hand_computation() {
        let inst = build(&FixtureId::I).unwrap();
        // agent 1, item (1,1): 10^6 * 1 + 10^3 * 17 + (-3)
        assert_eq!(inst.utility(0, 0), &Rational::int(1_016_997));
        assert_eq!(inst.items()[0], "(1,1)");
        assert_eq!(inst.kind(), Kind::Goods);
        assert_eq!(build(&FixtureId::NegI).unwrap(), inst.negated());
    }

    #[test]
    fn offset_label_groups_each_sum_to_55() {
        let flat: Vec<i64> = O_MATRIX.iter().flatten().copied().collect();
        for group in 0..3 {
            let row: i64 = flat[4 * group..4 * group + 4].iter().sum();
            assert_eq!(row, 55);
            let greek: i64 = (0..12).filter(|&j| GREEK[j] == group).map(|j| flat[j]).sum();
            assert_eq!(greek, 55);
            let sign: i64 = (0..12).filter(|&j| SIGNS[j] == group).map(|j| flat[j]).sum();
            assert_eq!(sign, 55);
        }
    }

    #[test]
    fn row_allocation_values_match_published_numbers() {
        let i = build(&FixtureId::I).unwrap();
        let j = build(&FixtureId::J).unwrap();
        let rows = grid_row_allocation();
        let values = |inst: &Instance| -> Vec<Rational> {
            (0..3)
                .map(|a| inst.bundle_utility(a, rows.bundle(a)).unwrap())
                .collect()
        };
        assert_eq!(
            values(&i),
            vec![
                Rational::int(4_055_000),
                Rational::int(4_055_001),
                Rational::int(4_055_001),
            ]
        );
        assert_eq!(
            values(&j),
            vec![
                Rational::int(4_055_000),
                Rational::int(4_054_999),
                Rational::int(4_054_999),
            ]
        );
    }

    #[test]
    fn every_agent_total_is_balanced_for_the_grid() {
        let inst = build(&FixtureId::I).unwrap();
        for agent in 0..3 {
            assert_eq!(inst.total_utility(agent), Rational::int(12_165_000));
        }
    }

    #[test]
    fn each_agent_has_a_balanced_labeled_partition() {
        // Agent 1 balances along rows, agent 2 along the Greek labels, and
        // agent 3 along the sign labels; every bundle is worth 4,055,000.
        let inst = build(&FixtureId::I).unwrap();
        let groupings = [
            [0usize, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2],
            GREEK,
            SIGNS,
        ];
        for (agent, grouping) in groupings.iter().enumerate() {
            for bundle in 0..3 {
                let members: Vec<usize> =
                    (0..12).filter(|&j| grouping[j] == bundle).collect();
                assert_eq!(
                    inst.bundle_utility(agent, &members).unwrap(),
                    Rational::int(4_055_000),
                    "agent {agent} bundle {bundle}"
                );
            }
        }
    }

    #[test]
    fn tight_round_robin_shapes() {
        let inst = build(&FixtureId::TightRoundRobin { agents: 2 }).unwrap();
        assert_eq!(inst.n_items(), 3);
        assert_eq!(
            inst.agent_row(0),
            &[
                Rational::ratio(1, 2),
                Rational::ratio(1, 2),
                Rational::int(1)
            ]
        );
        assert!(matches!(
            build(&FixtureId::TightRoundRobin { agents: 1 }),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn two_agent_r_shapes() {
        let inst = build(&FixtureId::TwoAgentR { r: Rational::int(2) }).unwrap();
        assert_eq!(inst.agent_row(0), &[Rational::int(2), Rational::int(1)]);
        assert_eq!(inst.agent_row(1), &[Rational::int(1), Rational::int(2)]);
        assert!(matches!(
            build(&FixtureId::TwoAgentR { r: Rational::int(1) }),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn identical_replicates_one_row() {
        let inst = build(&FixtureId::Identical {
            utilities: vec![Rational::int(3), Rational::int(5)],
            agents: 3,
        })
        .unwrap();
        assert_eq!(inst.n_agents(), 3);
        assert_eq!(inst.agent_row(0), inst.agent_row(2));
        assert!(!inst.total_utility(1).is_zero());
    }
}
