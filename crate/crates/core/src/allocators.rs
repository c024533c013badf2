//! Allocation algorithms: round-robin picking for chores and the exact /
//! approximate optimal-ratio solvers for both kinds.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Kind, RatioResult, RatioValue, ShareKind};
use crate::rational::Rational;
use crate::scheduling::{self, Objective, SchedulingProblem, SolveMode};
use crate::shares;

/// Error-budget split for the approximate optimal-ratio solver: `alpha`
/// bounds the guarantee approximation and `beta` the scheduling
/// approximation.
///
/// For chores both exceed 1 with `alpha * beta < 1 + epsilon`; for goods
/// both sit below 1 with `alpha * beta > 1 - epsilon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasConfig {
    pub epsilon: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

const SPLIT_DENOM: i64 = 1_000_000;

impl PtasConfig {
    pub fn new(kind: Kind, epsilon: Rational, alpha: Rational, beta: Rational) -> Result<Self> {
        let cfg = PtasConfig {
            epsilon,
            alpha,
            beta,
        };
        cfg.validate_for(kind)?;
        Ok(cfg)
    }

    /// Splits the error budget evenly: `alpha = beta ~ sqrt(1 + epsilon)`
    /// (chores) or `~ sqrt(1 - epsilon)` (goods), truncated to a denominator
    /// of 10^6.
    pub fn with_default_split(kind: Kind, epsilon: Rational) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::ConfigViolation(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        let one = Rational::int(1);
        let step = Rational::ratio(1, SPLIT_DENOM);
        let split = match kind {
            Kind::Chores => {
                let target = &one + &epsilon;
                let mut s = sqrt_down(&target);
                if &s * &s >= target {
                    s = s - step;
                }
                s
            }
            Kind::Goods => {
                if epsilon >= one {
                    // Any product in (0, 1) beats a non-positive 1 - epsilon.
                    Rational::ratio(1, 2)
                } else {
                    let target = &one - &epsilon;
                    let mut s = sqrt_down(&target) + step;
                    if s >= one {
                        s = Rational::ratio(SPLIT_DENOM - 1, SPLIT_DENOM);
                    }
                    s
                }
            }
        };
        PtasConfig::new(kind, epsilon, split.clone(), split)
    }

    pub fn validate_for(&self, kind: Kind) -> Result<()> {
        let one = Rational::int(1);
        if !self.epsilon.is_positive() {
            return Err(Error::ConfigViolation(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        let product = &self.alpha * &self.beta;
        match kind {
            Kind::Chores => {
                if self.alpha <= one || self.beta <= one {
                    return Err(Error::ConfigViolation(format!(
                        "chores need alpha > 1 and beta > 1, got alpha={}, beta={}",
                        self.alpha, self.beta
                    )));
                }
                if product >= &one + &self.epsilon {
                    return Err(Error::ConfigViolation(format!(
                        "chores need alpha * beta < 1 + epsilon, got {}",
                        product
                    )));
                }
            }
            Kind::Goods => {
                if !self.alpha.is_positive()
                    || !self.beta.is_positive()
                    || self.alpha >= one
                    || self.beta >= one
                {
                    return Err(Error::ConfigViolation(format!(
                        "goods need alpha and beta in (0, 1), got alpha={}, beta={}",
                        self.alpha, self.beta
                    )));
                }
                if product <= &one - &self.epsilon {
                    return Err(Error::ConfigViolation(format!(
                        "goods need alpha * beta > 1 - epsilon, got {}",
                        product
                    )));
                }
            }
        }
        Ok(())
    }
}

// floor(sqrt(x) * 10^6) / 10^6 for x >= 0.
fn sqrt_down(x: &Rational) -> Rational {
    let scale = BigInt::from(SPLIT_DENOM);
    let scaled = (x.numer() * &scale * &scale) / x.denom();
    Rational::from_big(num_rational::BigRational::new(scaled.sqrt(), scale))
}

/// Round-robin picking for chores: agents take turns in index order, each
/// taking the remaining item she finds least burdensome (ties to the lowest
/// item index).
///
/// The result gives every agent at least `(2 - 1/N)` times her max-min share
/// guarantee, and that factor is tight.
pub fn round_robin_chores(instance: &Instance) -> Result<Allocation> {
    if instance.kind() != Kind::Chores {
        return Err(Error::KindMismatch {
            expected: Kind::Chores.as_str(),
            actual: instance.kind().as_str(),
        });
    }
    let n = instance.n_agents();
    let m = instance.n_items();

    // Each agent's preference order: utility descending (least negative
    // first), then item index.
    let preferences: Vec<Vec<usize>> = (0..n)
        .map(|agent| {
            let row = instance.agent_row(agent);
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
            order
        })
        .collect();

    let mut cursors = vec![0usize; n];
    let mut taken = vec![false; m];
    let mut bundles = vec![Vec::new(); n];
    for turn in 0..m {
        let agent = turn % n;
        let cursor = &mut cursors[agent];
        while taken[preferences[agent][*cursor]] {
            *cursor += 1;
        }
        let item = preferences[agent][*cursor];
        taken[item] = true;
        bundles[agent].push(item);
    }
    Allocation::new(bundles, m)
}

/// Exact optimal ratio and allocation via guarantee computation plus one
/// unrelated-machines scheduling solve.
pub fn optimal_mms_exact(instance: &Instance, budget: u64) -> Result<RatioResult> {
    let n = instance.n_agents();
    let m = instance.n_items();
    match instance.kind() {
        Kind::Chores => {
            let mirror = instance.negated();
            let mut scale_factors = Vec::with_capacity(n);
            for agent in 0..n {
                scale_factors.push(
                    shares::guarantee(&mirror, agent, ShareKind::MinMax, &SolveMode::Exact, budget)?
                        .0,
                );
            }
            if let Some(zero) = scale_factors.iter().position(|c| c.is_zero()) {
                // That agent values everything at 0, so she can absorb all
                // items and the ratio collapses to 0.
                return Ok(RatioResult {
                    lambda: RatioValue::Finite(Rational::zero()),
                    allocation: Allocation::all_items_to(zero, n, m),
                });
            }
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    mirror
                        .agent_row(i)
                        .iter()
                        .map(|u| u / &scale_factors[i])
                        .collect()
                })
                .collect();
            let problem = SchedulingProblem::unrelated(rows, Objective::MinimizeMakespan)?;
            let outcome = scheduling::solve(&problem, &SolveMode::Exact, budget)?;
            Ok(RatioResult {
                lambda: RatioValue::Finite(outcome.schedule.value),
                allocation: outcome.schedule.assignment,
            })
        }
        Kind::Goods => {
            let mut guarantees = Vec::with_capacity(n);
            for agent in 0..n {
                guarantees.push(
                    shares::guarantee(instance, agent, ShareKind::MaxMin, &SolveMode::Exact, budget)?
                        .0,
                );
            }
            let constrained: Vec<usize> =
                (0..n).filter(|&i| guarantees[i].is_positive()).collect();
            if constrained.is_empty() {
                return Ok(RatioResult {
                    lambda: RatioValue::Infinite,
                    allocation: Allocation::all_items_to(0, n, m),
                });
            }
            let rows: Vec<Vec<Rational>> = constrained
                .iter()
                .map(|&i| {
                    instance
                        .agent_row(i)
                        .iter()
                        .map(|u| u / &guarantees[i])
                        .collect()
                })
                .collect();
            let problem = SchedulingProblem::unrelated(rows, Objective::MaximizeCover)?;
            let outcome = scheduling::solve(&problem, &SolveMode::Exact, budget)?;
            Ok(RatioResult {
                lambda: RatioValue::Finite(outcome.schedule.value),
                allocation: expand(&outcome.schedule.assignment, &constrained, n)?,
            })
        }
    }
}

/// An allocation plus the factor its construction certifies: the output
/// solves the `(factor * lambda)`-max-min problem whenever the plain
/// `lambda`-max-min problem is solvable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasOutcome {
    pub allocation: Allocation,
    pub certified_factor: Rational,
}

/// Polynomial-time approximation of an optimal-ratio allocation for a fixed
/// number of agents: guarantees within factor `alpha`, scheduling within
/// factor `beta`.
///
/// For chores every agent ends up with at least `(1 + epsilon) * lambda`
/// times her guarantee; for goods at least `(1 - epsilon) * lambda` times,
/// where lambda is the instance's optimal ratio. The certified factor
/// reported is the sharper `alpha * beta`.
pub fn optimal_mms_ptas(
    instance: &Instance,
    config: &PtasConfig,
    budget: u64,
) -> Result<PtasOutcome> {
    config.validate_for(instance.kind())?;
    let n = instance.n_agents();
    let m = instance.n_items();
    let one = Rational::int(1);
    let certified_factor = &config.alpha * &config.beta;

    match instance.kind() {
        Kind::Chores => {
            let mirror = instance.negated();
            // A (1 + delta)-approximate min-max value with delta = alpha - 1
            // lands in [g, alpha * g].
            let guarantee_mode = SolveMode::Approx(&config.alpha - &one);
            let mut scale_factors = Vec::with_capacity(n);
            for agent in 0..n {
                scale_factors.push(
                    shares::guarantee(&mirror, agent, ShareKind::MinMax, &guarantee_mode, budget)?
                        .0,
                );
            }
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    mirror
                        .agent_row(i)
                        .iter()
                        .map(|u| {
                            if scale_factors[i].is_zero() {
                                Rational::zero()
                            } else {
                                u / &scale_factors[i]
                            }
                        })
                        .collect()
                })
                .collect();
            let problem = SchedulingProblem::unrelated(rows, Objective::MinimizeMakespan)?;
            let schedule_mode = SolveMode::Approx(&config.beta - &one);
            let outcome = scheduling::solve(&problem, &schedule_mode, budget)?;
            Ok(PtasOutcome {
                allocation: outcome.schedule.assignment,
                certified_factor,
            })
        }
        Kind::Goods => {
            // A cover value within (1 + delta) with delta = (1 - alpha)/alpha
            // lands in [alpha * g, g].
            let guarantee_mode =
                SolveMode::Approx((&one - &config.alpha) / &config.alpha);
            let mut guarantees = Vec::with_capacity(n);
            for agent in 0..n {
                guarantees.push(
                    shares::guarantee(instance, agent, ShareKind::MaxMin, &guarantee_mode, budget)?
                        .0,
                );
            }
            let constrained: Vec<usize> =
                (0..n).filter(|&i| guarantees[i].is_positive()).collect();
            if constrained.is_empty() {
                return Ok(PtasOutcome {
                    allocation: Allocation::all_items_to(0, n, m),
                    certified_factor,
                });
            }
            let rows: Vec<Vec<Rational>> = constrained
                .iter()
                .map(|&i| {
                    instance
                        .agent_row(i)
                        .iter()
                        .map(|u| u / &guarantees[i])
                        .collect()
                })
                .collect();
            let problem = SchedulingProblem::unrelated(rows, Objective::MaximizeCover)?;
            let schedule_mode = SolveMode::Approx((&one - &config.beta) / &config.beta);
            let outcome = scheduling::solve(&problem, &schedule_mode, budget)?;
            Ok(PtasOutcome {
                allocation: expand(&outcome.schedule.assignment, &constrained, n)?,
                certified_factor,
            })
        }
    }
}

// Lifts an allocation over the constrained agents back to all n agents;
// everyone else gets an empty bundle.
fn expand(reduced: &Allocation, constrained: &[usize], n: usize) -> Result<Allocation> {
    let mapped: Vec<usize> = reduced
        .assignment()
        .iter()
        .map(|&b| constrained[b])
        .collect();
    Allocation::from_assignment(&mapped, n)
}
