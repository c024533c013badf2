//! Exhaustive-enumeration ground truth.
//!
//! Every operation here literally scans all `N^M` assignments over integer
//! weights, independent of the branch-and-bound and DP engines it is used to
//! validate. Witnesses are reported for the first optimum in base-N counting
//! order (item 0 most significant), so results are reproducible.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, RatioResult, RatioValue, ShareKind};
use crate::rational::Rational;
use crate::scale;
use crate::scheduling::{Objective, Schedule, SchedulingProblem};

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_STATE_CAP: u128 = 20_000_000;

fn ensure_within_cap(n_bundles: usize, n_items: usize, cap: u128) -> Result<()> {
    let mut states: u128 = 1;
    for _ in 0..n_items {
        states = states.saturating_mul(n_bundles as u128);
        if states > cap {
            return Err(Error::TooLarge { states, cap });
        }
    }
    Ok(())
}

// Visits every assignment of items to bundles with incrementally maintained
// loads, where loads[b] = sum of weights[b][j] over items j in bundle b.
fn scan<F>(n_bundles: usize, n_items: usize, weights: &[Vec<BigInt>], visit: &mut F)
where
    F: FnMut(&[usize], &[BigInt]) -> ControlFlow<()>,
{
    let mut assignment = vec![0usize; n_items];
    let mut loads = vec![BigInt::zero(); n_bundles];
    let _ = scan_rec(0, n_items, weights, &mut assignment, &mut loads, visit);
}

fn scan_rec<F>(
    depth: usize,
    n_items: usize,
    weights: &[Vec<BigInt>],
    assignment: &mut Vec<usize>,
    loads: &mut Vec<BigInt>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[BigInt]) -> ControlFlow<()>,
{
    if depth == n_items {
        return visit(assignment, loads);
    }
    for bundle in 0..loads.len() {
        assignment[depth] = bundle;
        loads[bundle] += &weights[bundle][depth];
        let flow = scan_rec(depth + 1, n_items, weights, assignment, loads, visit);
        loads[bundle] -= &weights[bundle][depth];
        flow?;
    }
    ControlFlow::Continue(())
}

// Tracks the first strict optimum seen during a scan.
struct Best {
    value: Option<BigInt>,
    assignment: Vec<usize>,
}

impl Best {
    fn new() -> Self {
        Best {
            value: None,
            assignment: Vec::new(),
        }
    }

    fn offer(&mut self, value: &BigInt, assignment: &[usize], maximize: bool) {
        let improves = match &self.value {
            None => true,
            Some(best) => {
                if maximize {
                    value > best
                } else {
                    value < best
                }
            }
        };
        if improves {
            self.value = Some(value.clone());
            self.assignment = assignment.to_vec();
        }
    }
}

/// One agent's guarantee by direct enumeration of all partitions.
pub fn enumerate_guarantee(
    instance: &Instance,
    agent: usize,
    which: ShareKind,
    cap: u128,
) -> Result<(Rational, Allocation)> {
    if agent >= instance.n_agents() {
        return Err(Error::IndexOutOfRange(format!(
            "agent {} of {}",
            agent,
            instance.n_agents()
        )));
    }
    let n = instance.n_agents();
    let m = instance.n_items();
    ensure_within_cap(n, m, cap)?;

    let denom = scale::common_denominator(instance.agent_row(agent).iter());
    let row: Vec<BigInt> = instance
        .agent_row(agent)
        .iter()
        .map(|v| scale::scaled_int(v, &denom))
        .collect();
    let weights = vec![row; n];

    let maximize = which == ShareKind::MaxMin;
    let mut best = Best::new();
    scan(n, m, &weights, &mut |assignment, loads| {
        let value = match which {
            ShareKind::MaxMin => loads.iter().min().unwrap(),
            ShareKind::MinMax => loads.iter().max().unwrap(),
        };
        best.offer(value, assignment, maximize);
        ControlFlow::Continue(())
    });

    let value = Rational::from_big(num_rational::BigRational::new(
        best.value.expect("at least one assignment"),
        denom,
    ));
    Ok((value, Allocation::from_assignment(&best.assignment, n)?))
}

/// Searches every assignment for one where each agent's own bundle meets her
/// max-min share guarantee; `None` when the scan exhausts without a hit.
pub fn mms_allocation_search(instance: &Instance, cap: u128) -> Result<Option<Allocation>> {
    let n = instance.n_agents();
    let m = instance.n_items();
    ensure_within_cap(n, m, cap)?;

    let mut guarantees = Vec::with_capacity(n);
    for agent in 0..n {
        guarantees.push(enumerate_guarantee(instance, agent, ShareKind::MaxMin, cap)?.0);
    }

    let (weights, denom) = scale::integerize_matrix(instance.utilities());
    let thresholds: Vec<BigInt> = guarantees
        .iter()
        .map(|g| scale::scaled_int(g, &denom))
        .collect();

    let mut witness: Option<Vec<usize>> = None;
    scan(n, m, &weights, &mut |assignment, loads| {
        if loads.iter().zip(&thresholds).all(|(l, t)| l >= t) {
            witness = Some(assignment.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });

    witness
        .map(|a| Allocation::from_assignment(&a, n))
        .transpose()
}

/// The exact optimal ratio and a witnessing allocation, by enumeration.
///
/// For goods the ratio is the largest lambda for which some allocation gives
/// every positive-guarantee agent at least lambda times her guarantee
/// (infinite when no agent has a positive guarantee). For chores it is the
/// smallest such lambda over agents with negative guarantees, and 0 as soon
/// as some agent has a zero guarantee.
pub fn enumerate_optimal_ratio(instance: &Instance, cap: u128) -> Result<RatioResult> {
    let n = instance.n_agents();
    let m = instance.n_items();
    ensure_within_cap(n, m, cap)?;

    let mut guarantees = Vec::with_capacity(n);
    for agent in 0..n {
        guarantees.push(enumerate_guarantee(instance, agent, ShareKind::MaxMin, cap)?.0);
    }

    match instance.kind() {
        crate::model::Kind::Goods => {
            let constrained: Vec<usize> =
                (0..n).filter(|&i| guarantees[i].is_positive()).collect();
            if constrained.is_empty() {
                return Ok(RatioResult {
                    lambda: RatioValue::Infinite,
                    allocation: Allocation::all_items_to(0, n, m),
                });
            }
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    if guarantees[i].is_positive() {
                        instance
                            .agent_row(i)
                            .iter()
                            .map(|u| u / &guarantees[i])
                            .collect()
                    } else {
                        vec![Rational::zero(); m]
                    }
                })
                .collect();
            let (weights, denom) = scale::integerize_matrix(&rows);

            let mut best = Best::new();
            scan(n, m, &weights, &mut |assignment, loads| {
                let value = constrained.iter().map(|&i| &loads[i]).min().unwrap();
                best.offer(value, assignment, true);
                ControlFlow::Continue(())
            });
            Ok(RatioResult {
                lambda: RatioValue::Finite(Rational::from_big(num_rational::BigRational::new(
                    best.value.unwrap(),
                    denom,
                ))),
                allocation: Allocation::from_assignment(&best.assignment, n)?,
            })
        }
        crate::model::Kind::Chores => {
            if let Some(zero) = (0..n).find(|&i| guarantees[i].is_zero()) {
                // That agent values everything at 0; dumping all items on her
                // solves the 0-max-min problem.
                return Ok(RatioResult {
                    lambda: RatioValue::Finite(Rational::zero()),
                    allocation: Allocation::all_items_to(zero, n, m),
                });
            }
            // Both the bundle value and the guarantee are non-positive, so
            // each scaled row is non-negative and the ratio is min-max.
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    instance
                        .agent_row(i)
                        .iter()
                        .map(|u| u / &guarantees[i])
                        .collect()
                })
                .collect();
            let (weights, denom) = scale::integerize_matrix(&rows);

            let mut best = Best::new();
            scan(n, m, &weights, &mut |assignment, loads| {
                let value = loads.iter().max().unwrap();
                best.offer(value, assignment, false);
                ControlFlow::Continue(())
            });
            Ok(RatioResult {
                lambda: RatioValue::Finite(Rational::from_big(num_rational::BigRational::new(
                    best.value.unwrap(),
                    denom,
                ))),
                allocation: Allocation::from_assignment(&best.assignment, n)?,
            })
        }
    }
}

/// Optimal schedule by enumerating every assignment; the reference the
/// branch-and-bound solver is validated against.
pub fn enumerate_schedule(problem: &SchedulingProblem, cap: u128) -> Result<Schedule> {
    let n = problem.n_machines();
    let m = problem.n_jobs();
    ensure_within_cap(n, m, cap)?;

    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..m).map(|j| problem.time(i, j).clone()).collect())
        .collect();
    let (weights, denom) = scale::integerize_matrix(&rows);

    let maximize = problem.objective() == Objective::MaximizeCover;
    let mut best = Best::new();
    scan(n, m, &weights, &mut |assignment, loads| {
        let value = match problem.objective() {
            Objective::MinimizeMakespan => loads.iter().max().unwrap(),
            Objective::MaximizeCover => loads.iter().min().unwrap(),
        };
        best.offer(value, assignment, maximize);
        ControlFlow::Continue(())
    });

    Ok(Schedule {
        value: Rational::from_big(num_rational::BigRational::new(best.value.unwrap(), denom)),
        assignment: Allocation::from_assignment(&best.assignment, n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build, FixtureId};
    use crate::model::Kind;

    #[test]
    fn single_agent_guarantee_is_the_total() {
        let inst = build(&FixtureId::Identical {
            utilities: vec![Rational::int(2), Rational::int(3)],
            agents: 1,
        })
        .unwrap();
        let (value, witness) =
            enumerate_guarantee(&inst, 0, ShareKind::MaxMin, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(value, Rational::int(5));
        assert_eq!(witness.bundle(0), &[0, 1]);
    }

    #[test]
    fn two_agent_r_guarantees_and_ratio() {
        let inst = build(&FixtureId::TwoAgentR {
            r: Rational::int(5),
        })
        .unwrap();
        for agent in 0..2 {
            let (mms, _) =
                enumerate_guarantee(&inst, agent, ShareKind::MaxMin, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(mms, Rational::int(1));
            let (mmax, _) =
                enumerate_guarantee(&inst, agent, ShareKind::MinMax, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(mmax, Rational::int(5));
        }
        let ratio = enumerate_optimal_ratio(&inst, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(ratio.lambda, RatioValue::Finite(Rational::int(5)));
        // Witness gives each agent her r-valued item.
        assert_eq!(ratio.allocation.bundle(0), &[0]);
        assert_eq!(ratio.allocation.bundle(1), &[1]);

        let neg = inst.negated();
        let ratio = enumerate_optimal_ratio(&neg, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(ratio.lambda, RatioValue::Finite(Rational::ratio(1, 5)));
        assert_eq!(ratio.allocation.bundle(0), &[1]);
        assert_eq!(ratio.allocation.bundle(1), &[0]);
    }

    #[test]
    fn all_zero_goods_ratio_is_infinite() {
        let inst = Instance::new(
            Kind::Goods,
            vec!["1".into(), "2".into()],
            vec!["x".into()],
            vec![vec![Rational::zero()], vec![Rational::zero()]],
        )
        .unwrap();
        let ratio = enumerate_optimal_ratio(&inst, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(ratio.lambda, RatioValue::Infinite);
    }

    #[test]
    fn chores_with_a_zero_agent_have_ratio_zero() {
        let inst = Instance::new(
            Kind::Chores,
            vec!["1".into(), "2".into()],
            vec!["x".into()],
            vec![vec![Rational::zero()], vec![Rational::int(-1)]],
        )
        .unwrap();
        let ratio = enumerate_optimal_ratio(&inst, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(ratio.lambda, RatioValue::Finite(Rational::zero()));
        assert_eq!(ratio.allocation.bundle(0), &[0]);
    }

    #[test]
    fn single_agent_always_has_an_mms_allocation() {
        let inst = build(&FixtureId::Identical {
            utilities: vec![Rational::int(1)],
            agents: 1,
        })
        .unwrap();
        let found = mms_allocation_search(&inst, DEFAULT_STATE_CAP).unwrap();
        assert!(found.is_some());
        let ratio = enumerate_optimal_ratio(&inst, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(ratio.lambda, RatioValue::Finite(Rational::int(1)));
    }

    #[test]
    fn cap_is_enforced() {
        let inst = build(&FixtureId::TightRoundRobin { agents: 3 }).unwrap();
        let err = enumerate_guarantee(&inst, 0, ShareKind::MaxMin, 100).unwrap_err();
        assert!(matches!(err, Error::TooLarge { cap: 100, .. }));
    }
}
