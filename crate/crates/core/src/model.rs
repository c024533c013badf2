//! Instances, allocations, guarantee profiles, and fairness checkers.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Whether every utility entry is non-negative (goods) or non-positive
/// (chores).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Goods,
    Chores,
}

impl Kind {
    pub fn flipped(self) -> Kind {
        match self {
            Kind::Goods => Kind::Chores,
            Kind::Chores => Kind::Goods,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Goods => "goods",
            Kind::Chores => "chores",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fair-division instance: agents, items, and a signed additive utility
/// matrix over exact rationals.
///
/// Immutable after construction; all entries match the sign constraint of
/// [`Kind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    kind: Kind,
    agents: Vec<String>,
    items: Vec<String>,
    utilities: Vec<Vec<Rational>>,
}

impl Instance {
    /// Validates dimensions and signs and builds an instance.
    pub fn new(
        kind: Kind,
        agents: Vec<String>,
        items: Vec<String>,
        utilities: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::DimensionMismatch(
                "an instance needs at least one agent".into(),
            ));
        }
        if utilities.len() != agents.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} utility rows for {} agents",
                utilities.len(),
                agents.len()
            )));
        }
        for (i, row) in utilities.iter().enumerate() {
            if row.len() != items.len() {
                return Err(Error::DimensionMismatch(format!(
                    "agent {} has {} utilities for {} items",
                    i,
                    row.len(),
                    items.len()
                )));
            }
            for (j, value) in row.iter().enumerate() {
                let bad = match kind {
                    Kind::Goods => value.is_negative(),
                    Kind::Chores => value.is_positive(),
                };
                if bad {
                    return Err(Error::SignViolation {
                        agent: i,
                        item: j,
                        value: value.to_string(),
                        kind: kind.as_str(),
                    });
                }
            }
        }
        Ok(Instance {
            kind,
            agents,
            items,
            utilities,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn utility(&self, agent: usize, item: usize) -> &Rational {
        &self.utilities[agent][item]
    }

    pub fn agent_row(&self, agent: usize) -> &[Rational] {
        &self.utilities[agent]
    }

    /// The corresponding instance: kind flipped, every entry negated.
    /// An involution: `i.negated().negated() == i`.
    pub fn negated(&self) -> Instance {
        Instance {
            kind: self.kind.flipped(),
            agents: self.agents.clone(),
            items: self.items.clone(),
            utilities: self
                .utilities
                .iter()
                .map(|row| row.iter().map(|v| -v).collect())
                .collect(),
        }
    }

    /// Sum of `agent`'s utilities over `bundle`; the empty bundle is worth 0.
    /// Repeated indices in `bundle` are counted once.
    pub fn bundle_utility(&self, agent: usize, bundle: &[usize]) -> Result<Rational> {
        if agent >= self.n_agents() {
            return Err(Error::IndexOutOfRange(format!(
                "agent {} of {}",
                agent,
                self.n_agents()
            )));
        }
        let mut seen = vec![false; self.n_items()];
        let mut total = Rational::zero();
        for &item in bundle {
            if item >= self.n_items() {
                return Err(Error::IndexOutOfRange(format!(
                    "item {} of {}",
                    item,
                    self.n_items()
                )));
            }
            if !seen[item] {
                seen[item] = true;
                total += &self.utilities[agent][item];
            }
        }
        Ok(total)
    }

    /// `agent`'s utility for the full item set.
    pub fn total_utility(&self, agent: usize) -> Rational {
        self.utilities[agent].iter().sum()
    }
}

/// An ordered partition of the item set into bundles; empty bundles are
/// legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
    n_items: usize,
}

impl Allocation {
    /// Validates that `bundles` partitions `0..n_items` and normalizes each
    /// bundle to ascending order.
    pub fn new(bundles: Vec<Vec<usize>>, n_items: usize) -> Result<Self> {
        let mut owner = vec![None; n_items];
        for (b, bundle) in bundles.iter().enumerate() {
            for &item in bundle {
                if item >= n_items {
                    return Err(Error::MalformedPartition(format!(
                        "item index {} out of range for {} items",
                        item, n_items
                    )));
                }
                if let Some(prev) = owner[item] {
                    return Err(Error::MalformedPartition(format!(
                        "item {} appears in bundles {} and {}",
                        item, prev, b
                    )));
                }
                owner[item] = Some(b);
            }
        }
        if let Some(missing) = owner.iter().position(|o| o.is_none()) {
            return Err(Error::MalformedPartition(format!(
                "item {} is not assigned to any bundle",
                missing
            )));
        }
        let mut bundles = bundles;
        for bundle in &mut bundles {
            bundle.sort_unstable();
        }
        Ok(Allocation { bundles, n_items })
    }

    /// Builds an allocation from a job-to-bundle assignment vector.
    pub fn from_assignment(assignment: &[usize], n_bundles: usize) -> Result<Self> {
        let mut bundles = vec![Vec::new(); n_bundles];
        for (item, &b) in assignment.iter().enumerate() {
            if b >= n_bundles {
                return Err(Error::MalformedPartition(format!(
                    "item {} assigned to bundle {} of {}",
                    item, b, n_bundles
                )));
            }
            bundles[b].push(item);
        }
        Ok(Allocation {
            bundles,
            n_items: assignment.len(),
        })
    }

    /// Every item in bundle `target`, the remaining bundles empty.
    pub fn all_items_to(target: usize, n_bundles: usize, n_items: usize) -> Self {
        assert!(target < n_bundles);
        let mut bundles = vec![Vec::new(); n_bundles];
        bundles[target] = (0..n_items).collect();
        Allocation { bundles, n_items }
    }

    /// The inverse view: item index -> bundle index.
    pub fn assignment(&self) -> Vec<usize> {
        let mut assignment = vec![0; self.n_items];
        for (b, bundle) in self.bundles.iter().enumerate() {
            for &item in bundle {
                assignment[item] = b;
            }
        }
        assignment
    }

    pub fn n_bundles(&self) -> usize {
        self.bundles.len()
    }

    pub fn n_items(&self) -> usize {
        self.n_items
    }

    pub fn bundle(&self, index: usize) -> &[usize] {
        &self.bundles[index]
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }
}

/// Which guarantee of an agent to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShareKind {
    /// Max-min share: partition to maximize the worst bundle.
    MaxMin,
    /// Min-max share: partition to minimize the best bundle.
    MinMax,
}

/// Both guarantees of one agent together with witnessing partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentGuarantee {
    pub mms_value: Rational,
    pub mms_witness: Allocation,
    pub mmax_value: Rational,
    pub mmax_witness: Allocation,
}

/// Per-agent guarantees for a whole instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuaranteeProfile {
    pub agents: Vec<AgentGuarantee>,
}

/// An extended non-negative ratio; `Infinite` only arises for goods
/// instances in which every agent's max-min share guarantee is zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioValue {
    Finite(Rational),
    Infinite,
}

impl RatioValue {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            RatioValue::Finite(r) => Some(r),
            RatioValue::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RatioValue::Finite(_))
    }
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioValue::Finite(r) => write!(f, "{}", r),
            RatioValue::Infinite => f.write_str("inf"),
        }
    }
}

/// An optimal ratio paired with a witnessing allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioResult {
    pub lambda: RatioValue,
    pub allocation: Allocation,
}

/// Fairness predicates checked per agent against a guarantee profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Criterion {
    /// Every agent's own bundle is worth at least her max-min share.
    MaxMinShare,
    /// Every agent's own bundle is worth at most her min-max share.
    PerverseMinMax,
    /// Own bundle worth at least `lambda` times the max-min share.
    LambdaMaxMin(RatioValue),
    /// Own bundle worth at most `lambda` times the min-max share.
    PerverseLambdaMinMax(RatioValue),
}

/// One agent's verdict; `slack` is `None` when the threshold is infinite.
/// Non-negative slack is a pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub agent: usize,
    pub bundle_value: Rational,
    pub passed: bool,
    pub slack: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Checks `allocation` against `criterion`, reporting a per-agent verdict
/// and slack.
///
/// The convention `inf * 0 = 0` applies when a lambda criterion carries an
/// infinite ratio and an agent's guarantee is zero.
pub fn check_allocation(
    instance: &Instance,
    allocation: &Allocation,
    criterion: &Criterion,
    profile: &GuaranteeProfile,
) -> Result<CheckReport> {
    if allocation.n_bundles() != instance.n_agents() {
        return Err(Error::MismatchedDimensions(format!(
            "{} bundles for {} agents",
            allocation.n_bundles(),
            instance.n_agents()
        )));
    }
    if allocation.n_items() != instance.n_items() {
        return Err(Error::MismatchedDimensions(format!(
            "allocation over {} items checked against {} items",
            allocation.n_items(),
            instance.n_items()
        )));
    }
    if profile.agents.len() != instance.n_agents() {
        return Err(Error::MismatchedDimensions(format!(
            "profile covers {} agents of {}",
            profile.agents.len(),
            instance.n_agents()
        )));
    }

    let entries = (0..instance.n_agents())
        .map(|i| {
            let value = instance.bundle_utility(i, allocation.bundle(i))?;
            let entry = match criterion {
                Criterion::MaxMinShare => {
                    at_least(i, value, profile.agents[i].mms_value.clone())
                }
                Criterion::PerverseMinMax => {
                    at_most(i, value, profile.agents[i].mmax_value.clone())
                }
                Criterion::LambdaMaxMin(lambda) => {
                    let guarantee = &profile.agents[i].mms_value;
                    match lambda {
                        RatioValue::Finite(l) => at_least(i, value, l * guarantee),
                        RatioValue::Infinite => infinite_at_least(i, value, guarantee),
                    }
                }
                Criterion::PerverseLambdaMinMax(lambda) => {
                    let guarantee = &profile.agents[i].mmax_value;
                    match lambda {
                        RatioValue::Finite(l) => at_most(i, value, l * guarantee),
                        RatioValue::Infinite => infinite_at_most(i, value, guarantee),
                    }
                }
            };
            Ok(entry)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CheckReport { entries })
}

fn at_least(agent: usize, value: Rational, threshold: Rational) -> CheckEntry {
    let slack = &value - &threshold;
    CheckEntry {
        agent,
        bundle_value: value,
        passed: !slack.is_negative(),
        slack: Some(slack),
    }
}

fn at_most(agent: usize, value: Rational, threshold: Rational) -> CheckEntry {
    let slack = &threshold - &value;
    CheckEntry {
        agent,
        bundle_value: value,
        passed: !slack.is_negative(),
        slack: Some(slack),
    }
}

// value >= inf * guarantee, with inf * 0 = 0.
fn infinite_at_least(agent: usize, value: Rational, guarantee: &Rational) -> CheckEntry {
    if guarantee.is_zero() {
        at_least(agent, value, Rational::zero())
    } else {
        CheckEntry {
            agent,
            passed: guarantee.is_negative(),
            bundle_value: value,
            slack: None,
        }
    }
}

// value <= inf * guarantee, with inf * 0 = 0.
fn infinite_at_most(agent: usize, value: Rational, guarantee: &Rational) -> CheckEntry {
    if guarantee.is_zero() {
        at_most(agent, value, Rational::zero())
    } else {
        CheckEntry {
            agent,
            passed: guarantee.is_positive(),
            bundle_value: value,
            slack: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn two_agent_r2() -> Instance {
        Instance::new(
            Kind::Goods,
            labels("a", 2),
            vec!["a".into(), "b".into()],
            vec![
                vec![Rational::int(2), Rational::int(1)],
                vec![Rational::int(1), Rational::int(2)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validates_goods_with_r_parameter() {
        let inst = two_agent_r2();
        assert_eq!(inst.n_agents(), 2);
        assert_eq!(inst.n_items(), 2);
        assert_eq!(inst.utility(0, 0), &Rational::int(2));
    }

    #[test]
    fn empty_instance_is_valid() {
        let inst = Instance::new(Kind::Goods, labels("a", 1), vec![], vec![vec![]]).unwrap();
        assert_eq!(inst.n_items(), 0);
        assert_eq!(inst.total_utility(0), Rational::zero());
    }

    #[test]
    fn chores_with_positive_entry_is_rejected() {
        let err = Instance::new(
            Kind::Chores,
            labels("a", 1),
            vec!["x".into()],
            vec![vec![Rational::int(1)]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SignViolation { .. }));
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let err = Instance::new(
            Kind::Goods,
            labels("a", 2),
            vec!["x".into()],
            vec![vec![Rational::int(1)], vec![]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn negation_flips_kind_and_is_an_involution() {
        let inst = two_agent_r2();
        let neg = inst.negated();
        assert_eq!(neg.kind(), Kind::Chores);
        assert_eq!(neg.utility(0, 0), &Rational::int(-2));
        assert_eq!(neg.negated(), inst);
    }

    #[test]
    fn bundle_utility_sums_and_ignores_duplicates() {
        let inst = two_agent_r2();
        assert_eq!(inst.bundle_utility(0, &[]).unwrap(), Rational::zero());
        assert_eq!(inst.bundle_utility(0, &[0, 1]).unwrap(), Rational::int(3));
        assert_eq!(inst.bundle_utility(0, &[0, 0]).unwrap(), Rational::int(2));
        assert!(matches!(
            inst.bundle_utility(2, &[]),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            inst.bundle_utility(0, &[5]),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn allocation_rejects_overlap_and_gaps() {
        assert!(matches!(
            Allocation::new(vec![vec![0], vec![0]], 1),
            Err(Error::MalformedPartition(_))
        ));
        assert!(matches!(
            Allocation::new(vec![vec![0], vec![]], 2),
            Err(Error::MalformedPartition(_))
        ));
        assert!(matches!(
            Allocation::new(vec![vec![2]], 1),
            Err(Error::MalformedPartition(_))
        ));
        let ok = Allocation::new(vec![vec![1, 0], vec![]], 2).unwrap();
        assert_eq!(ok.bundle(0), &[0, 1]);
    }

    #[test]
    fn assignment_round_trips() {
        let alloc = Allocation::from_assignment(&[1, 0, 1], 2).unwrap();
        assert_eq!(alloc.bundle(0), &[1]);
        assert_eq!(alloc.bundle(1), &[0, 2]);
        assert_eq!(alloc.assignment(), vec![1, 0, 1]);
    }

    #[test]
    fn single_agent_mms_check_has_zero_slack() {
        let inst = Instance::new(
            Kind::Goods,
            labels("a", 1),
            vec!["x".into(), "y".into()],
            vec![vec![Rational::int(2), Rational::int(3)]],
        )
        .unwrap();
        let everything = Allocation::all_items_to(0, 1, 2);
        let profile = GuaranteeProfile {
            agents: vec![AgentGuarantee {
                mms_value: Rational::int(5),
                mms_witness: everything.clone(),
                mmax_value: Rational::int(5),
                mmax_witness: everything.clone(),
            }],
        };
        let report =
            check_allocation(&inst, &everything, &Criterion::MaxMinShare, &profile).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.entries[0].slack, Some(Rational::zero()));
    }

    #[test]
    fn infinite_lambda_follows_the_zero_convention() {
        let inst = Instance::new(
            Kind::Goods,
            labels("a", 2),
            vec!["x".into()],
            vec![
                vec![Rational::zero()],
                vec![Rational::int(1)],
            ],
        )
        .unwrap();
        let alloc = Allocation::new(vec![vec![0], vec![]], 1).unwrap();
        let empty = Allocation::new(vec![vec![0], vec![]], 1).unwrap();
        let profile = GuaranteeProfile {
            agents: vec![
                AgentGuarantee {
                    mms_value: Rational::zero(),
                    mms_witness: empty.clone(),
                    mmax_value: Rational::zero(),
                    mmax_witness: empty.clone(),
                },
                AgentGuarantee {
                    mms_value: Rational::int(1),
                    mms_witness: empty.clone(),
                    mmax_value: Rational::int(1),
                    mmax_witness: empty,
                },
            ],
        };
        let report = check_allocation(
            &inst,
            &alloc,
            &Criterion::LambdaMaxMin(RatioValue::Infinite),
            &profile,
        )
        .unwrap();
        // Agent 0 has a zero guarantee: inf * 0 = 0, so her zero-value bundle passes.
        assert!(report.entries[0].passed);
        // Agent 1 has a positive guarantee: an infinite threshold cannot be met.
        assert!(!report.entries[1].passed);
        assert_eq!(report.entries[1].slack, None);
    }
}
