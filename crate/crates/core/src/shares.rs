//! Per-agent guarantee computation via identical-machine scheduling.
//!
//! For goods, the min-max share of an agent is the optimal makespan over her
//! item values and the max-min share the optimal cover. Chores route through
//! the magnitudes of the same values with the result negated, which is exact
//! because flipping all signs swaps the two guarantees.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{AgentGuarantee, Allocation, GuaranteeProfile, Instance, Kind, ShareKind};
use crate::rational::Rational;
use crate::scheduling::{self, Objective, SchedulingProblem, SolveMode};

/// One agent's guarantee and a witnessing partition.
///
/// In exact mode the value is the true guarantee. In `Approx(delta)` mode a
/// min-max-type value `c` satisfies `g <= c <= (1 + delta) * g` and a
/// max-min-type value `g / (1 + delta) <= c <= g`, with the inequalities
/// understood on magnitudes for chores. The witness always achieves exactly
/// the returned value.
pub fn guarantee(
    instance: &Instance,
    agent: usize,
    which: ShareKind,
    mode: &SolveMode,
    budget: u64,
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

    let magnitudes: Vec<Rational> = instance.agent_row(agent).iter().map(|v| v.abs()).collect();
    if magnitudes.iter().all(|v| v.is_zero()) {
        return Ok((Rational::zero(), Allocation::all_items_to(0, n, m)));
    }

    let objective = match (instance.kind(), which) {
        (Kind::Goods, ShareKind::MaxMin) | (Kind::Chores, ShareKind::MinMax) => {
            Objective::MaximizeCover
        }
        (Kind::Goods, ShareKind::MinMax) | (Kind::Chores, ShareKind::MaxMin) => {
            Objective::MinimizeMakespan
        }
    };
    let problem = SchedulingProblem::identical(n, magnitudes, objective)?;
    let outcome = scheduling::solve(&problem, mode, budget)?;

    let value = match instance.kind() {
        Kind::Goods => outcome.schedule.value,
        Kind::Chores => -outcome.schedule.value,
    };
    Ok((value, outcome.schedule.assignment))
}

/// Both guarantees for every agent.
pub fn guarantee_profile(
    instance: &Instance,
    mode: &SolveMode,
    budget: u64,
) -> Result<GuaranteeProfile> {
    let agents = (0..instance.n_agents())
        .map(|agent| {
            let (mms_value, mms_witness) =
                guarantee(instance, agent, ShareKind::MaxMin, mode, budget)?;
            let (mmax_value, mmax_witness) =
                guarantee(instance, agent, ShareKind::MinMax, mode, budget)?;
            debug_assert!(mms_value <= mmax_value);
            Ok(AgentGuarantee {
                mms_value,
                mms_witness,
                mmax_value,
                mmax_witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GuaranteeProfile { agents })
}
