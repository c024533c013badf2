//! Parallel-machine scheduling solvers.
//!
//! Covers makespan minimization and cover maximization on identical or
//! unrelated machines, exactly (branch-and-bound) or approximately (a
//! rounded-load dynamic program with a certified factor).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::Allocation;
use crate::rational::Rational;
use crate::scale;

mod approx;
mod exact;

/// Default node budget for exact searches and approximate DP states.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Job processing times: one shared list for identical machines, or a full
/// machine-by-job matrix for unrelated machines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessingTimes {
    Identical(Vec<Rational>),
    Unrelated(Vec<Vec<Rational>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Minimize the latest machine's finishing time.
    MinimizeMakespan,
    /// Maximize the earliest machine's finishing time.
    MaximizeCover,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingProblem {
    n_machines: usize,
    times: ProcessingTimes,
    objective: Objective,
}

impl SchedulingProblem {
    pub fn identical(
        n_machines: usize,
        times: Vec<Rational>,
        objective: Objective,
    ) -> Result<Self> {
        if n_machines == 0 {
            return Err(Error::DimensionMismatch("need at least one machine".into()));
        }
        for (j, t) in times.iter().enumerate() {
            if t.is_negative() {
                return Err(Error::DimensionMismatch(format!(
                    "negative processing time {t} for job {j}"
                )));
            }
        }
        Ok(SchedulingProblem {
            n_machines,
            times: ProcessingTimes::Identical(times),
            objective,
        })
    }

    pub fn unrelated(times: Vec<Vec<Rational>>, objective: Objective) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::DimensionMismatch("need at least one machine".into()));
        }
        let n_jobs = times[0].len();
        for (i, row) in times.iter().enumerate() {
            if row.len() != n_jobs {
                return Err(Error::DimensionMismatch(format!(
                    "machine {} has {} processing times, expected {}",
                    i,
                    row.len(),
                    n_jobs
                )));
            }
            for (j, t) in row.iter().enumerate() {
                if t.is_negative() {
                    return Err(Error::DimensionMismatch(format!(
                        "negative processing time {t} for machine {i}, job {j}"
                    )));
                }
            }
        }
        Ok(SchedulingProblem {
            n_machines: times.len(),
            times: ProcessingTimes::Unrelated(times),
            objective,
        })
    }

    pub fn n_machines(&self) -> usize {
        self.n_machines
    }

    pub fn n_jobs(&self) -> usize {
        match &self.times {
            ProcessingTimes::Identical(times) => times.len(),
            ProcessingTimes::Unrelated(times) => times[0].len(),
        }
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn is_identical(&self) -> bool {
        matches!(self.times, ProcessingTimes::Identical(_))
    }

    pub fn time(&self, machine: usize, job: usize) -> &Rational {
        match &self.times {
            ProcessingTimes::Identical(times) => &times[job],
            ProcessingTimes::Unrelated(times) => &times[machine][job],
        }
    }
}

/// Exact search, or an approximation within a `(1 + delta)` factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    Approx(Rational),
}

/// A machine assignment together with its exact objective value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub assignment: Allocation,
    pub value: Rational,
}

/// The bound the solver certifies: the returned value is at most
/// `factor * OPT` for makespan, and at least `OPT / factor` for cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCertificate {
    pub factor: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub schedule: Schedule,
    pub certificate: FactorCertificate,
}

// Integer view of a problem: all times scaled by one common denominator.
pub(crate) struct IntTimes {
    pub weights: Vec<Vec<BigInt>>,
    pub denom: BigInt,
    pub identical: bool,
}

impl IntTimes {
    fn of(problem: &SchedulingProblem) -> IntTimes {
        match &problem.times {
            ProcessingTimes::Identical(times) => {
                let denom = scale::common_denominator(times.iter());
                let row: Vec<BigInt> = times.iter().map(|t| scale::scaled_int(t, &denom)).collect();
                IntTimes {
                    weights: vec![row; problem.n_machines],
                    denom,
                    identical: true,
                }
            }
            ProcessingTimes::Unrelated(times) => {
                let (weights, denom) = scale::integerize_matrix(times);
                IntTimes {
                    weights,
                    denom,
                    identical: false,
                }
            }
        }
    }

    fn objective_value(&self, assignment: &[usize], objective: Objective) -> BigInt {
        let n = self.weights.len();
        let mut loads = vec![BigInt::zero(); n];
        for (job, &machine) in assignment.iter().enumerate() {
            loads[machine] += &self.weights[machine][job];
        }
        match objective {
            Objective::MinimizeMakespan => loads.into_iter().max().unwrap(),
            Objective::MaximizeCover => loads.into_iter().min().unwrap(),
        }
    }
}

/// Solves `problem` in the requested mode.
///
/// Deterministic: identical inputs yield identical schedules. In exact mode
/// the assignment is the lexicographically smallest optimal job-to-machine
/// vector. `budget` caps search nodes / DP states; exceeding it returns
/// [`Error::BudgetExceeded`] and callers should fall back to an approximate
/// mode.
pub fn solve(problem: &SchedulingProblem, mode: &SolveMode, budget: u64) -> Result<SolveOutcome> {
    let times = IntTimes::of(problem);
    let (assignment, factor) = match mode {
        SolveMode::Exact => {
            let (_, assignment) = exact::solve(&times, problem.objective, budget)?;
            (assignment, Rational::int(1))
        }
        SolveMode::Approx(delta) => {
            if !delta.is_positive() {
                return Err(Error::ConfigViolation(format!(
                    "approximation tolerance must be positive, got {delta}"
                )));
            }
            let assignment = approx::solve(&times, problem.objective, delta, budget)?;
            (assignment, Rational::int(1) + delta)
        }
    };
    let value = Rational::from_big(num_rational::BigRational::new(
        times.objective_value(&assignment, problem.objective),
        times.denom.clone(),
    ));
    Ok(SolveOutcome {
        schedule: Schedule {
            assignment: Allocation::from_assignment(&assignment, problem.n_machines)?,
            value,
        },
        certificate: FactorCertificate { factor },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| Rational::int(v)).collect()
    }

    #[test]
    fn two_unit_jobs_cover_two_machines() {
        let problem =
            SchedulingProblem::identical(2, rats(&[1, 1]), Objective::MaximizeCover).unwrap();
        let outcome = solve(&problem, &SolveMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(outcome.schedule.value, Rational::int(1));
        assert_eq!(outcome.schedule.assignment.assignment(), vec![0, 1]);
        assert_eq!(outcome.certificate.factor, Rational::int(1));
    }

    #[test]
    fn cover_of_six_thirds_and_a_unit_job() {
        // Three machines, six jobs of 1/3 and one of 1: two 1/3 jobs land on
        // each of two machines, the unit job covers the third; the minimum
        // cover is 2/3. Cross-checked by brute force in the oracle tests.
        let mut times = vec![Rational::ratio(1, 3); 6];
        times.push(Rational::int(1));
        let problem = SchedulingProblem::identical(3, times, Objective::MaximizeCover).unwrap();
        let outcome = solve(&problem, &SolveMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(outcome.schedule.value, Rational::ratio(2, 3));
    }

    #[test]
    fn empty_problem_is_legal() {
        for objective in [Objective::MinimizeMakespan, Objective::MaximizeCover] {
            let problem = SchedulingProblem::identical(3, vec![], objective).unwrap();
            let outcome = solve(&problem, &SolveMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(outcome.schedule.value, Rational::int(0));
            assert_eq!(outcome.schedule.assignment.n_items(), 0);
        }
    }

    #[test]
    fn cover_with_fewer_jobs_than_machines_is_zero() {
        let problem =
            SchedulingProblem::identical(3, rats(&[5, 7]), Objective::MaximizeCover).unwrap();
        let outcome = solve(&problem, &SolveMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(outcome.schedule.value, Rational::int(0));
        assert_eq!(outcome.schedule.assignment.assignment(), vec![0, 0]);
    }

    #[test]
    fn makespan_on_unrelated_machines() {
        // Machine 0 is fast for job 0, machine 1 for job 1.
        let times = vec![rats(&[1, 10]), rats(&[10, 1])];
        let problem = SchedulingProblem::unrelated(times, Objective::MinimizeMakespan).unwrap();
        let outcome = solve(&problem, &SolveMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(outcome.schedule.value, Rational::int(1));
        assert_eq!(outcome.schedule.assignment.assignment(), vec![0, 1]);
    }

    #[test]
    fn exact_ties_break_to_the_lexicographically_smallest_assignment() {
        // Both machines identical, two equal jobs: [0, 1] and [1, 0] are both
        // optimal; lexicographic tie-breaking picks [0, 1].
        let problem =
            SchedulingProblem::identical(2, rats(&[3, 3]), Objective::MinimizeMakespan).unwrap();
        let outcome = solve(&problem, &SolveMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(outcome.schedule.assignment.assignment(), vec![0, 1]);
    }

    #[test]
    fn negative_times_are_rejected() {
        assert!(SchedulingProblem::identical(
            2,
            vec![Rational::int(-1)],
            Objective::MinimizeMakespan
        )
        .is_err());
    }

    #[test]
    fn nonpositive_delta_is_rejected() {
        let problem =
            SchedulingProblem::identical(2, rats(&[1]), Objective::MinimizeMakespan).unwrap();
        let err = solve(
            &problem,
            &SolveMode::Approx(Rational::int(0)),
            DEFAULT_NODE_BUDGET,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConfigViolation(_)));
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let problem = SchedulingProblem::identical(
            3,
            rats(&[7, 9, 4, 6, 2, 8, 5, 3, 1, 10]),
            Objective::MinimizeMakespan,
        )
        .unwrap();
        let err = solve(&problem, &SolveMode::Exact, 5).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 5 });
    }
}
