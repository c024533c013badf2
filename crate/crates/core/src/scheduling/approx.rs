//! Certified-factor approximation via dynamic programming over rounded load
//! vectors.
//!
//! Processing times are rounded down to an arithmetic grid sized from an
//! instance lower bound; the DP then runs over integer grid units. The grid
//! is fine enough that the per-machine rounding loss stays within the
//! requested tolerance: the returned makespan is at most `(1 + delta) * OPT`
//! and the returned cover at least `OPT / (1 + delta)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{IntTimes, Objective};

pub(super) fn solve(
    times: &IntTimes,
    objective: Objective,
    delta: &Rational,
    budget: u64,
) -> Result<Vec<usize>> {
    let n = times.weights.len();
    let m = times.weights[0].len();
    let mut assignment = vec![0usize; m];
    let active: Vec<usize> = (0..m)
        .filter(|&j| (0..n).any(|i| !times.weights[i][j].is_zero()))
        .collect();
    if active.is_empty() {
        return Ok(assignment);
    }
    match objective {
        Objective::MinimizeMakespan => makespan(times, &active, delta, budget, &mut assignment)?,
        Objective::MaximizeCover => cover(times, &active, delta, budget, &mut assignment)?,
    }
    Ok(assignment)
}

fn makespan(
    times: &IntTimes,
    active: &[usize],
    delta: &Rational,
    budget: u64,
    assignment: &mut [usize],
) -> Result<()> {
    let w = &times.weights;
    let n = w.len();
    let minima: Vec<&BigInt> = active
        .iter()
        .map(|&j| (0..n).map(|i| &w[i][j]).min().unwrap())
        .collect();
    let sum_min: BigInt = minima.iter().copied().sum();
    let max_min = (*minima.iter().max().unwrap()).clone();

    if max_min.is_zero() {
        // Every job is free somewhere; the optimum is 0.
        for &job in active {
            assignment[job] = (0..n).position(|i| w[i][job].is_zero()).unwrap();
        }
        return Ok(());
    }

    // Lower bound max(sum_min / n, max_min) = lb_num / n; the grid step is
    // delta * lb / (2 * jobs), so a machine's total rounding loss is at most
    // (delta / 2) * OPT.
    let lb_num = sum_min.clone().max(&max_min * BigInt::from(n));
    let grid_num = delta.numer() * &lb_num;
    let grid_den = delta.denom() * BigInt::from(2 * active.len()) * BigInt::from(n);
    let unit = |value: &BigInt| -> u128 {
        ((value * &grid_den) / &grid_num)
            .to_u128()
            .unwrap_or(u128::MAX)
    };
    // Rounded loads above sum_min can never be optimal.
    let cap = unit(&sum_min);

    let units: Vec<Vec<u128>> = (0..n)
        .map(|i| active.iter().map(|&j| unit(&w[i][j])).collect())
        .collect();

    let pick = dp(n, &units, Some(cap), None, budget, |state| {
        Score::Minimize(*state.iter().max().unwrap())
    })?;
    for (pos, &machine) in pick.iter().enumerate() {
        assignment[active[pos]] = machine;
    }
    Ok(())
}

fn cover(
    times: &IntTimes,
    active: &[usize],
    delta: &Rational,
    budget: u64,
    assignment: &mut [usize],
) -> Result<()> {
    let w = &times.weights;
    let n = w.len();
    if active.len() < n {
        return Ok(()); // optimum 0; all jobs stay on machine 0
    }
    // A perfect machine-to-job matching on positive times lower-bounds the
    // optimum; without one the optimum is 0.
    let matching_bound = max_min_matching_bound(w, active);
    if matching_bound.is_zero() {
        return Ok(());
    }

    // Grid step delta * bound / (2 * jobs * (1 + delta)): the recovered
    // cover is at least OPT - (delta / (1 + delta)) * OPT = OPT / (1 + delta).
    let one_plus = delta.numer() + delta.denom();
    let grid_num = delta.numer() * &matching_bound;
    let grid_den = BigInt::from(2 * active.len()) * one_plus;
    let unit = |value: &BigInt| -> u128 {
        ((value * &grid_den) / &grid_num)
            .to_u128()
            .unwrap_or(u128::MAX)
    };

    // Loads beyond the mean of the per-job maxima cannot be the cover;
    // clamping there merges states without affecting the objective.
    let sum_max: BigInt = active
        .iter()
        .map(|&j| (0..n).map(|i| &w[i][j]).max().unwrap())
        .sum();
    let clamp = unit(&(sum_max / BigInt::from(n))).saturating_add(1);

    let units: Vec<Vec<u128>> = (0..n)
        .map(|i| {
            active
                .iter()
                .map(|&j| unit(&w[i][j]).min(clamp))
                .collect()
        })
        .collect();

    let pick = dp(n, &units, None, Some(clamp), budget, |state| {
        Score::Maximize(*state.iter().min().unwrap())
    })?;
    for (pos, &machine) in pick.iter().enumerate() {
        assignment[active[pos]] = machine;
    }
    Ok(())
}

enum Score {
    Minimize(u128),
    Maximize(u128),
}

impl Score {
    fn better_than(&self, other: &Score) -> bool {
        match (self, other) {
            (Score::Minimize(a), Score::Minimize(b)) => a < b,
            (Score::Maximize(a), Score::Maximize(b)) => a > b,
            _ => unreachable!(),
        }
    }
}

// Layered DP over rounded load vectors; first writer wins per state, with
// deterministic iteration (sorted states, machines in index order).
fn dp(
    n: usize,
    units: &[Vec<u128>],
    cap: Option<u128>,
    clamp: Option<u128>,
    budget: u64,
    score: impl Fn(&[u128]) -> Score,
) -> Result<Vec<usize>> {
    let jobs = units[0].len();
    let mut layer_states: Vec<Vec<Vec<u128>>> = vec![vec![vec![0; n]]];
    let mut back: Vec<Vec<(u32, u8)>> = Vec::with_capacity(jobs);
    let mut total_states: u64 = 1;

    for pos in 0..jobs {
        let mut next: BTreeMap<Vec<u128>, (u32, u8)> = BTreeMap::new();
        for (prev_idx, state) in layer_states[pos].iter().enumerate() {
            for machine in 0..n {
                let mut load = state[machine].saturating_add(units[machine][pos]);
                if let Some(cap) = cap {
                    if load > cap {
                        continue;
                    }
                }
                if let Some(clamp) = clamp {
                    load = load.min(clamp);
                }
                let mut key = state.clone();
                key[machine] = load;
                next.entry(key)
                    .or_insert((prev_idx as u32, machine as u8));
            }
        }
        total_states += next.len() as u64;
        if total_states > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut states = Vec::with_capacity(next.len());
        let mut pointers = Vec::with_capacity(next.len());
        for (state, pointer) in next {
            states.push(state);
            pointers.push(pointer);
        }
        layer_states.push(states);
        back.push(pointers);
    }

    // Ties resolve to the first state in sorted order.
    let last = layer_states.last().unwrap();
    let mut best_idx = 0;
    let mut best_score = score(&last[0]);
    for (idx, state) in last.iter().enumerate().skip(1) {
        let s = score(state);
        if s.better_than(&best_score) {
            best_score = s;
            best_idx = idx;
        }
    }

    let mut picks = vec![0usize; jobs];
    let mut idx = best_idx;
    for pos in (0..jobs).rev() {
        let (prev_idx, machine) = back[pos][idx];
        picks[pos] = machine as usize;
        idx = prev_idx as usize;
    }
    Ok(picks)
}

// Largest t such that every machine can be matched to a distinct job with
// time >= t; 0 when no positive perfect matching exists.
fn max_min_matching_bound(w: &[Vec<BigInt>], active: &[usize]) -> BigInt {
    let n = w.len();
    let mut values: Vec<&BigInt> = Vec::new();
    for row in w {
        for &j in active {
            if !row[j].is_zero() {
                values.push(&row[j]);
            }
        }
    }
    values.sort_unstable();
    values.dedup();
    if values.is_empty() {
        return BigInt::zero();
    }
    // Feasibility is monotone in the threshold.
    let feasible = |t: &BigInt| -> bool { has_perfect_matching(w, active, t) };
    if !feasible(values[0]) {
        return BigInt::zero();
    }
    let (mut lo, mut hi) = (0, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if feasible(values[mid]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    values[lo].clone()
}

fn has_perfect_matching(w: &[Vec<BigInt>], active: &[usize], threshold: &BigInt) -> bool {
    let n = w.len();
    let mut matched_job: Vec<Option<usize>> = vec![None; active.len()];
    for machine in 0..n {
        let mut visited = vec![false; active.len()];
        if !augment(w, active, threshold, machine, &mut visited, &mut matched_job) {
            return false;
        }
    }
    true
}

fn augment(
    w: &[Vec<BigInt>],
    active: &[usize],
    threshold: &BigInt,
    machine: usize,
    visited: &mut [bool],
    matched_job: &mut [Option<usize>],
) -> bool {
    for (pos, &job) in active.iter().enumerate() {
        if visited[pos] || &w[machine][job] < threshold {
            continue;
        }
        visited[pos] = true;
        let free = match matched_job[pos] {
            None => true,
            Some(owner) => augment(w, active, threshold, owner, visited, matched_job),
        };
        if free {
            matched_job[pos] = Some(machine);
            return true;
        }
    }
    false
}
