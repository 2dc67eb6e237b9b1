//! Slow, obviously correct baselines: Bellman's `O(nW)` table and exhaustive
//! enumeration. Each refuses inputs beyond an explicit budget instead of
//! running out of memory.

use crate::error::{Error, Result};
use crate::ext::ExtProfit;
use crate::model::{BoundedInstance, Instance01};

/// Size limits for the oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Maximum `items * (capacity + 1)` table updates.
    pub cells: u128,
    /// Maximum DP row length (memory is 16 bytes per entry).
    pub capacity: u64,
    /// Maximum item count for exhaustive enumeration.
    pub brute_force_items: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            cells: 4_000_000_000,
            capacity: 1 << 25,
            brute_force_items: 24,
        }
    }
}

pub fn bellman_01(instance: &Instance01) -> Result<ExtProfit> {
    bellman_01_with_budget(instance, &OracleBudget::default())
}

pub fn bellman_01_with_budget(instance: &Instance01, budget: &OracleBudget) -> Result<ExtProfit> {
    let items: Vec<(u128, i128)> = instance
        .items()
        .iter()
        .map(|it| (it.weight as u128, it.profit))
        .collect();
    bellman_table(&items, instance.capacity(), budget)
}

/// Bounded Knapsack by binary splitting: item `i` becomes pieces of
/// `1, 2, 4, ..` copies plus a remainder, then a 0-1 table.
pub fn bellman_bounded(instance: &BoundedInstance) -> Result<ExtProfit> {
    bellman_bounded_with_budget(instance, &OracleBudget::default())
}

pub fn bellman_bounded_with_budget(
    instance: &BoundedInstance,
    budget: &OracleBudget,
) -> Result<ExtProfit> {
    let cap = instance.capacity() as u128;
    let mut pieces = Vec::new();
    for it in instance.items() {
        let mut left = it.multiplicity as u128;
        let mut k = 1u128;
        while left > 0 {
            let take = k.min(left);
            let w = take * it.weight as u128;
            // pieces heavier than the knapsack can never be used
            if w <= cap {
                pieces.push((w, take as i128 * it.profit));
            }
            left -= take;
            k *= 2;
        }
    }
    bellman_table(&pieces, instance.capacity(), budget)
}

fn bellman_table(
    items: &[(u128, i128)],
    capacity: u64,
    budget: &OracleBudget,
) -> Result<ExtProfit> {
    let total: u128 = items.iter().map(|&(w, _)| w).sum();
    let cap = (capacity as u128).min(total) as u64;
    if cap > budget.capacity {
        return Err(Error::BudgetExceeded {
            what: "Bellman table width",
            needed: cap as u128 + 1,
            budget: budget.capacity as u128 + 1,
        });
    }
    let cells = items.len() as u128 * (cap as u128 + 1);
    if cells > budget.cells {
        return Err(Error::BudgetExceeded {
            what: "Bellman table",
            needed: cells,
            budget: budget.cells,
        });
    }
    let cap = cap as usize;
    let mut best = vec![0i128; cap + 1];
    for &(w, p) in items {
        if w > cap as u128 {
            continue;
        }
        let w = w as usize;
        for c in (w..=cap).rev() {
            let cand = best[c - w] + p;
            if cand > best[c] {
                best[c] = cand;
            }
        }
    }
    Ok(ExtProfit::new(best[cap]))
}

/// Enumerates all `2^n` subsets.
pub fn brute_force_01(instance: &Instance01) -> Result<ExtProfit> {
    brute_force_01_with_budget(instance, &OracleBudget::default())
}

pub fn brute_force_01_with_budget(
    instance: &Instance01,
    budget: &OracleBudget,
) -> Result<ExtProfit> {
    let n = instance.len();
    if n > budget.brute_force_items {
        return Err(Error::BudgetExceeded {
            what: "exhaustive enumeration",
            needed: 1u128 << n.min(127),
            budget: 1u128 << budget.brute_force_items,
        });
    }
    let items = instance.items();
    let cap = instance.capacity() as u128;
    let mut best = 0i128;
    for mask in 0u64..(1u64 << n) {
        let (mut w, mut p) = (0u128, 0i128);
        for (i, it) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w += it.weight as u128;
                p += it.profit;
            }
        }
        if w <= cap && p > best {
            best = p;
        }
    }
    Ok(ExtProfit::new(best))
}
