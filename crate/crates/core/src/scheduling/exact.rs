//! Depth-first branch-and-bound for exact schedules.
//!
//! Phase 1 finds the optimal value, branching on large jobs first with
//! average/largest-job bounds and a visited-load-vector memo. Phase 2
//! reconstructs the lexicographically smallest assignment achieving that
//! value by a threshold search in original job order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::{IntTimes, Objective};

// Beyond this many recorded states the search keeps running without the memo.
const MEMO_CAP: usize = 1 << 22;

pub(super) fn solve(
    times: &IntTimes,
    objective: Objective,
    budget: u64,
) -> Result<(BigInt, Vec<usize>)> {
    let n = times.weights.len();
    let m = times.weights[0].len();
    let mut assignment = vec![0usize; m];

    // Jobs with zero time on every machine never move either objective.
    let active: Vec<usize> = (0..m)
        .filter(|&j| (0..n).any(|i| !times.weights[i][j].is_zero()))
        .collect();
    if active.is_empty() {
        return Ok((BigInt::zero(), assignment));
    }
    if objective == Objective::MaximizeCover && active.len() < n {
        // Some machine must stay empty, so the optimum is 0 and every
        // assignment achieves it.
        return Ok((BigInt::zero(), assignment));
    }

    let mut search = Search {
        w: &times.weights,
        n,
        n_big: BigInt::from(n),
        identical: times.identical,
        objective,
        budget,
        nodes: 0,
        memo: HashSet::new(),
    };

    let mut by_size = active.clone();
    by_size.sort_by(|&a, &b| {
        search
            .column_max(b)
            .cmp(search.column_max(a))
            .then_with(|| a.cmp(&b))
    });
    let optimum = search.optimal_value(&by_size)?;
    search.lex_witness(&active, &optimum, &mut assignment)?;
    Ok((optimum, assignment))
}

struct Search<'a> {
    w: &'a [Vec<BigInt>],
    n: usize,
    n_big: BigInt,
    identical: bool,
    objective: Objective,
    budget: u64,
    nodes: u64,
    memo: HashSet<(usize, Vec<BigInt>)>,
}

// Precomputed tails for a fixed branching order.
struct SuffixBounds {
    // MinimizeMakespan: sums of per-job minima; MaximizeCover: of maxima.
    extremal_sum: Vec<BigInt>,
    // Largest per-job minimum in the tail (makespan bound only).
    largest_min: Vec<BigInt>,
    // Per-machine tail totals (cover bound only).
    row_sums: Vec<Vec<BigInt>>,
}

impl<'a> Search<'a> {
    fn column_max(&self, job: usize) -> &BigInt {
        (0..self.n).map(|i| &self.w[i][job]).max().unwrap()
    }

    fn column_min(&self, job: usize) -> &BigInt {
        (0..self.n).map(|i| &self.w[i][job]).min().unwrap()
    }

    fn suffix_bounds(&self, order: &[usize]) -> SuffixBounds {
        let len = order.len();
        let mut extremal_sum = vec![BigInt::zero(); len + 1];
        let mut largest_min = vec![BigInt::zero(); len + 1];
        let mut row_sums = vec![vec![BigInt::zero(); len + 1]; self.n];
        for k in (0..len).rev() {
            let job = order[k];
            let per_job = match self.objective {
                Objective::MinimizeMakespan => self.column_min(job),
                Objective::MaximizeCover => self.column_max(job),
            };
            extremal_sum[k] = &extremal_sum[k + 1] + per_job;
            largest_min[k] = (&largest_min[k + 1]).max(self.column_min(job)).clone();
            for i in 0..self.n {
                row_sums[i][k] = &row_sums[i][k + 1] + &self.w[i][job];
            }
        }
        SuffixBounds {
            extremal_sum,
            largest_min,
            row_sums,
        }
    }

    // List scheduling in branching order; seeds the incumbent.
    fn greedy_value(&self, order: &[usize]) -> BigInt {
        let mut loads = vec![BigInt::zero(); self.n];
        for &job in order {
            let pick = match self.objective {
                Objective::MinimizeMakespan => (0..self.n)
                    .min_by(|&a, &b| {
                        (&loads[a] + &self.w[a][job])
                            .cmp(&(&loads[b] + &self.w[b][job]))
                            .then(a.cmp(&b))
                    })
                    .unwrap(),
                Objective::MaximizeCover => (0..self.n)
                    .min_by(|&a, &b| loads[a].cmp(&loads[b]).then(a.cmp(&b)))
                    .unwrap(),
            };
            loads[pick] += &self.w[pick][job];
        }
        match self.objective {
            Objective::MinimizeMakespan => loads.into_iter().max().unwrap(),
            Objective::MaximizeCover => loads.into_iter().min().unwrap(),
        }
    }

    fn optimal_value(&mut self, order: &[usize]) -> Result<BigInt> {
        let bounds = self.suffix_bounds(order);
        let mut best = self.greedy_value(order);
        let mut loads = vec![BigInt::zero(); self.n];
        let mut sum = BigInt::zero();
        self.memo.clear();
        self.improve(0, order, &bounds, &mut loads, &mut sum, &mut best)?;
        Ok(best)
    }

    fn improve(
        &mut self,
        k: usize,
        order: &[usize],
        bounds: &SuffixBounds,
        loads: &mut [BigInt],
        sum: &mut BigInt,
        best: &mut BigInt,
    ) -> Result<()> {
        self.tick()?;
        if k == order.len() {
            match self.objective {
                Objective::MinimizeMakespan => {
                    let value = loads.iter().max().unwrap();
                    if value < best {
                        *best = value.clone();
                    }
                }
                Objective::MaximizeCover => {
                    let value = loads.iter().min().unwrap();
                    if value > best {
                        *best = value.clone();
                    }
                }
            }
            return Ok(());
        }

        match self.objective {
            Objective::MinimizeMakespan => {
                // No completion can beat the incumbent from here.
                if loads.iter().max().unwrap() >= best
                    || &bounds.largest_min[k] >= best
                    || &*sum + &bounds.extremal_sum[k] >= &*best * &self.n_big
                {
                    return Ok(());
                }
            }
            Objective::MaximizeCover => {
                if &*sum + &bounds.extremal_sum[k] <= &*best * &self.n_big {
                    return Ok(());
                }
                let reach = (0..self.n)
                    .map(|i| &loads[i] + &bounds.row_sums[i][k])
                    .min()
                    .unwrap();
                if &reach <= best {
                    return Ok(());
                }
            }
        }

        let key = (k, self.canonical(loads));
        if self.memo.contains(&key) {
            return Ok(());
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }

        let job = order[k];
        // Fill light machines first; good incumbents appear early.
        let mut machines: Vec<usize> = (0..self.n).collect();
        machines.sort_by(|&a, &b| loads[a].cmp(&loads[b]).then(a.cmp(&b)));
        let mut last_tried: Option<BigInt> = None;
        for &i in &machines {
            if self.identical {
                // Equal loads on identical machines are interchangeable.
                if last_tried.as_ref() == Some(&loads[i]) {
                    continue;
                }
                last_tried = Some(loads[i].clone());
            }
            loads[i] += &self.w[i][job];
            *sum += &self.w[i][job];
            self.improve(k + 1, order, bounds, loads, sum, best)?;
            loads[i] -= &self.w[i][job];
            *sum -= &self.w[i][job];
        }
        Ok(())
    }

    fn lex_witness(
        &mut self,
        order: &[usize],
        target: &BigInt,
        assignment: &mut [usize],
    ) -> Result<()> {
        let bounds = self.suffix_bounds(order);
        let target_scaled = target * &self.n_big;
        let mut loads = vec![BigInt::zero(); self.n];
        let mut sum = BigInt::zero();
        self.memo.clear();
        let found = self.reconstruct(
            0,
            order,
            &bounds,
            &mut loads,
            &mut sum,
            target,
            &target_scaled,
            assignment,
        )?;
        if !found {
            unreachable!("optimal value {target} admits no schedule");
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn reconstruct(
        &mut self,
        k: usize,
        order: &[usize],
        bounds: &SuffixBounds,
        loads: &mut [BigInt],
        sum: &mut BigInt,
        target: &BigInt,
        target_scaled: &BigInt,
        assignment: &mut [usize],
    ) -> Result<bool> {
        self.tick()?;
        if k == order.len() {
            return Ok(true);
        }

        let infeasible = match self.objective {
            Objective::MinimizeMakespan => {
                loads.iter().max().unwrap() > target
                    || &bounds.largest_min[k] > target
                    || &(&*sum + &bounds.extremal_sum[k]) > target_scaled
            }
            Objective::MaximizeCover => {
                &(&*sum + &bounds.extremal_sum[k]) < target_scaled
                    || (0..self.n)
                        .map(|i| &loads[i] + &bounds.row_sums[i][k])
                        .min()
                        .unwrap()
                        < *target
            }
        };
        if infeasible {
            return Ok(false);
        }

        let key = (k, self.canonical(loads));
        if self.memo.contains(&key) {
            return Ok(false);
        }

        let job = order[k];
        let mut failed_loads: Vec<BigInt> = Vec::new();
        for i in 0..self.n {
            // A machine whose load equals one that already failed fails too.
            if self.identical && failed_loads.contains(&loads[i]) {
                continue;
            }
            assignment[job] = i;
            loads[i] += &self.w[i][job];
            *sum += &self.w[i][job];
            let done = self.reconstruct(
                k + 1,
                order,
                bounds,
                loads,
                sum,
                target,
                target_scaled,
                assignment,
            )?;
            loads[i] -= &self.w[i][job];
            *sum -= &self.w[i][job];
            if done {
                return Ok(true);
            }
            if self.identical {
                failed_loads.push(loads[i].clone());
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
        Ok(false)
    }

    fn canonical(&self, loads: &[BigInt]) -> Vec<BigInt> {
        let mut key = loads.to_vec();
        if self.identical {
            key.sort_unstable();
        }
        key
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }
}
