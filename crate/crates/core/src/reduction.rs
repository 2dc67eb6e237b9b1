//! Bounded Knapsack to 0-1 Knapsack on at most `4 w_max^2` items with
//! pairwise distinct profit-to-weight ratios.
//!
//! Some optimal solution differs from the greedy prefix `g` in fewer than
//! `2 w_max` copies. So within every weight class all but the `2 w_max`
//! least profitable copies picked by `g` can be committed, and all but the
//! `2 w_max` most profitable unpicked copies can be dropped. The trimming
//! works on multiplicities and never touches individual copies, so its cost
//! does not depend on `sum u_i`.
//!
//! The surviving copies are written out explicitly and their profits
//! perturbed to `M * p_i + (n - i) * w_i` with `M = n^2 w_max + 1`. The
//! perturbation term of any feasible set stays below `M`, so
//! `floor(opt / M)` recovers the unperturbed optimum.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::ext::ExtProfit;
use crate::model::{ratio_cmp, BoundedInstance, BoundedItem, Instance01, Item01};
use crate::solver01::{self, SolveStats, SolverConfig, MAX_SOLVER_PROFIT};

/// Output of [`trim_bounded`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trimmed {
    /// The remaining copies (canonically sorted, zero multiplicities dropped).
    pub instance: BoundedInstance,
    /// Profit of the committed copies, `P`.
    pub committed_profit: i128,
}

impl Trimmed {
    /// The capacity left after committing, `W̄`.
    pub fn reduced_capacity(&self) -> u64 {
        self.instance.capacity()
    }
}

/// A perturbed 0-1 instance plus what is needed to map its optimum back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub instance01: Instance01,
    pub committed_profit: i128,
    pub reduced_capacity: u64,
    pub scale: i128,
    pub n_bar: usize,
}

/// Commits and drops copies per weight class as described in the module
/// docs. The input is sorted canonically first.
pub fn trim_bounded(instance: &BoundedInstance) -> Result<Trimmed> {
    let sorted = instance.canonical_sort();
    let items = sorted.items();
    let g = sorted.maximal_prefix();
    let keep = 2 * sorted.max_weight() as u128;

    let picked = |i: usize| -> u128 {
        match i.cmp(&g.cut) {
            Ordering::Less => items[i].multiplicity as u128,
            Ordering::Equal => g.partial as u128,
            Ordering::Greater => 0,
        }
    };

    let mut classes: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, it) in items.iter().enumerate() {
        classes.entry(it.weight).or_default().push(i);
    }

    let mut removed = vec![0u128; items.len()];
    let mut committed = vec![0u128; items.len()];
    for class in classes.values() {
        // drop the least profitable unpicked copies, walking from the back
        let unpicked: u128 = class
            .iter()
            .map(|&i| items[i].multiplicity as u128 - picked(i))
            .sum();
        let mut excess = unpicked.saturating_sub(keep);
        for &i in class.iter().rev() {
            if excess == 0 {
                break;
            }
            let r = (items[i].multiplicity as u128 - picked(i)).min(excess);
            removed[i] = r;
            excess -= r;
        }

        // commit the most profitable picked copies, walking from the front
        let taken: u128 = class.iter().map(|&i| picked(i)).sum();
        let mut excess = taken.saturating_sub(keep);
        for &i in class {
            if excess == 0 {
                break;
            }
            let c = picked(i).min(excess);
            committed[i] = c;
            excess -= c;
        }
    }

    let mut profit = 0i128;
    let mut weight = 0u128;
    let mut rest = Vec::new();
    for (i, it) in items.iter().enumerate() {
        profit += committed[i] as i128 * it.profit;
        weight += committed[i] * it.weight as u128;
        let left = it.multiplicity as u128 - removed[i] - committed[i];
        if left > 0 {
            rest.push(BoundedItem::new(it.weight, it.profit, left as u64));
        }
    }
    // committed copies are a subset of g, which fits
    let capacity = sorted.capacity() - weight as u64;
    Ok(Trimmed {
        instance: BoundedInstance::new(rest, capacity)?,
        committed_profit: profit,
    })
}

/// Writes out every copy, preserving order.
pub fn expand_to_01(trimmed: &BoundedInstance) -> Result<Instance01> {
    let w_max = trimmed.max_weight() as u128;
    let total = trimmed.total_multiplicity();
    if total > 4 * w_max * w_max {
        return Err(Error::Precondition(format!(
            "{total} copies left after trimming, expected at most 4 * {w_max}^2"
        )));
    }
    let items = trimmed
        .items()
        .iter()
        .flat_map(|it| {
            std::iter::repeat_n(Item01::new(it.weight, it.profit), it.multiplicity as usize)
        })
        .collect();
    Instance01::new(items, trimmed.capacity())
}

/// Returns the instance with profits `M * p_i + (n - i) * w_i` (1-based `i`)
/// and the scale `M = n^2 w_max + 1`. The input must be canonically sorted.
pub fn perturb_profits(instance: &Instance01) -> Result<(Instance01, i128)> {
    if !instance.is_sorted() {
        return Err(Error::Precondition(
            "perturb_profits needs sorted items".into(),
        ));
    }
    let n = instance.len() as i128;
    let too_large = || {
        Error::TooLarge(format!(
            "perturbed profits of {n} items exceed 2^96; reduce the item count, w_max or p_max"
        ))
    };
    let scale = n
        .checked_mul(n)
        .and_then(|v| v.checked_mul(instance.max_weight() as i128))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(too_large)?;
    let mut total = 0i128;
    let mut items = Vec::with_capacity(instance.len());
    for (k, it) in instance.items().iter().enumerate() {
        let bonus = (n - 1 - k as i128) * it.weight as i128;
        let p = scale
            .checked_mul(it.profit)
            .and_then(|v| v.checked_add(bonus))
            .ok_or_else(too_large)?;
        total = total.checked_add(p).ok_or_else(too_large)?;
        items.push(Item01::new(it.weight, p));
    }
    if total > MAX_SOLVER_PROFIT {
        return Err(too_large());
    }
    let out = Instance01::new(items, instance.capacity())?;
    let strict = out.items().windows(2).all(|w| {
        ratio_cmp(w[0].weight, w[0].profit, w[1].weight, w[1].profit) == Ordering::Greater
    });
    if !strict {
        return Err(Error::Precondition("perturbation left equal ratios".into()));
    }
    Ok((out, scale))
}

/// `floor(value / M) + P`.
pub fn recover(value_perturbed: ExtProfit, reduced: &ReducedInstance) -> ExtProfit {
    let v = value_perturbed
        .finite()
        .expect("perturbed optimum is finite");
    assert!(v >= 0, "perturbed optimum is non-negative");
    ExtProfit::new(v / reduced.scale + reduced.committed_profit)
}

/// Trim, expand and perturb.
pub fn reduce(instance: &BoundedInstance) -> Result<ReducedInstance> {
    let trimmed = trim_bounded(instance)?;
    let expanded = expand_to_01(&trimmed.instance)?;
    let n_bar = expanded.len();
    let (instance01, scale) = perturb_profits(&expanded)?;
    Ok(ReducedInstance {
        instance01,
        committed_profit: trimmed.committed_profit,
        reduced_capacity: trimmed.reduced_capacity(),
        scale,
        n_bar,
    })
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundedStats {
    pub n_bar: usize,
    pub committed_profit: i128,
    pub scale: i128,
    pub reduction_time: Duration,
    pub solve: SolveStats,
}

pub fn solve_bounded(instance: &BoundedInstance) -> Result<ExtProfit> {
    solve_bounded_with(instance, &SolverConfig::default()).map(|(v, _)| v)
}

pub fn solve_bounded_with(
    instance: &BoundedInstance,
    config: &SolverConfig,
) -> Result<(ExtProfit, BoundedStats)> {
    if instance.total_weight() <= instance.capacity() as u128 {
        return Ok((
            ExtProfit::new(instance.total_profit()),
            BoundedStats::default(),
        ));
    }
    let start = Instant::now();
    let reduced = reduce(instance)?;
    let reduction_time = start.elapsed();
    let (value, solve) = solver01::solve_01_auto_with(&reduced.instance01, config)?;
    let stats = BoundedStats {
        n_bar: reduced.n_bar,
        committed_profit: reduced.committed_profit,
        scale: reduced.scale,
        reduction_time,
        solve,
    };
    Ok((recover(value, &reduced), stats))
}
