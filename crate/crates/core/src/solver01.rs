//! 0-1 Knapsack from a partitioning with proximity bounds.
//!
//! Starting from the greedy prefix `g`, an optimal solution is `g` plus some
//! unpicked items (weight `a`) minus some picked items (weight `b`). Two
//! profile sequences are built part by part: `z_plus[a]` is the profit of
//! some unpicked subset of weight `a`, `z_minus[b]` the negated profit of
//! some picked subset of weight `b`. Within one part and weight class the
//! best subsets are prefixes of the profit order, so each class contributes
//! a concave sequence and is folded in with [`conv_concave_truncated`].
//! After part `j` both profiles are cut to `Δ_1 + .. + Δ_j`, which keeps the
//! total work at `O(n + k * sum_j |supp(I_j)| * Δ_j)`.
//!
//! Both profiles are additionally cut at `(2 w_max - 1) * w_max`: the
//! optimal solution closest to `g` changes at most `2 w_max - 1` items, so
//! neither `a` nor `b` can exceed that weight.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::ext::ExtProfit;
use crate::maxplus::{conv_concave_truncated, prefix_max, ConcaveSeq, ProfitSeq};
use crate::model::{Instance01, PrefixSolution};
use crate::proximity::{self, Part, ProximityConfig, Side};

/// Instances whose total profit exceeds this are refused by the solver, so
/// that no intermediate value can overflow.
pub const MAX_SOLVER_PROFIT: i128 = 1 << 96;

/// Profits of all items of one weight on one side of `g`, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightGroup {
    pub weight: u64,
    pub profits: Vec<ExtProfit>,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub proximity: ProximityConfig,
    /// Longest profile sequence the solver may allocate.
    pub max_profile_len: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            proximity: ProximityConfig::default(),
            max_profile_len: 1 << 25,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveStats {
    pub parts: usize,
    pub delta_sum: u128,
    pub profile_len: usize,
    pub partition_time: Duration,
    pub combine_time: Duration,
}

/// Best profit for every total weight `0..=budget` using items of equal
/// weight: the `i` largest profits at weight `i * weight`.
pub fn equal_weights(group: &WeightGroup, budget: usize) -> Result<ConcaveSeq> {
    if group.weight == 0 {
        return Err(Error::Precondition("zero weight".into()));
    }
    if group.profits.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(
            "equal_weights needs profits in non-increasing order".into(),
        ));
    }
    let fits = (budget as u64 / group.weight).min(group.profits.len() as u64) as usize;
    let mut steps = Vec::with_capacity(fits + 1);
    let mut acc = ExtProfit::ZERO;
    steps.push(acc);
    for &p in &group.profits[..fits] {
        acc = acc + p;
        steps.push(acc);
    }
    ConcaveSeq::new(steps, group.weight as usize, budget + 1)
}

/// Optimal value of `instance` given parts whose bounds are valid for one
/// common optimal solution.
///
/// The instance must have strictly decreasing ratios and the parts must be
/// ordered by non-decreasing `delta` and cover every item exactly once.
pub fn solve_01(instance: &Instance01, parts: &[Part]) -> Result<ExtProfit> {
    solve_01_with(instance, parts, &SolverConfig::default()).map(|(v, _)| v)
}

pub fn solve_01_with(
    instance: &Instance01,
    parts: &[Part],
    config: &SolverConfig,
) -> Result<(ExtProfit, SolveStats)> {
    check_solver_input(instance)?;
    if parts.windows(2).any(|w| w[0].delta > w[1].delta) {
        return Err(Error::Precondition("parts must be sorted by delta".into()));
    }
    let mut seen = vec![false; instance.len()];
    for &i in parts.iter().flat_map(|p| &p.indices) {
        if i >= instance.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Precondition(format!(
                "item {i} not covered exactly once"
            )));
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Precondition("parts do not cover every item".into()));
    }

    let start = Instant::now();
    let g = instance.maximal_prefix();
    let profiles = combine(instance, &g, parts, config)?;
    let value = finish(instance, &g, &profiles);
    if cfg!(debug_assertions) && instance.len() <= 24 {
        check_realisable(instance, &g, &profiles);
    }
    let stats = SolveStats {
        parts: parts.len(),
        delta_sum: parts.iter().map(|p| p.delta).sum(),
        profile_len: profiles.plus.len(),
        combine_time: start.elapsed(),
        ..SolveStats::default()
    };
    Ok((value, stats))
}

/// Sorts, partitions and solves. Ratios must be pairwise distinct.
pub fn solve_01_auto(instance: &Instance01) -> Result<ExtProfit> {
    solve_01_auto_with(instance, &SolverConfig::default()).map(|(v, _)| v)
}

pub fn solve_01_auto_with(
    instance: &Instance01,
    config: &SolverConfig,
) -> Result<(ExtProfit, SolveStats)> {
    let sorted = instance.canonical_sort();
    check_solver_input(&sorted)?;
    if sorted.total_weight() <= sorted.capacity() as u128 {
        return Ok((ExtProfit::new(sorted.total_profit()), SolveStats::default()));
    }
    let start = Instant::now();
    let g = sorted.maximal_prefix();
    let mut parts = proximity::partition(&sorted, &g, config.proximity)?;
    parts.sort_by_key(|p| p.delta);
    let partition_time = start.elapsed();
    let (value, mut stats) = solve_01_with(&sorted, &parts, config)?;
    stats.partition_time = partition_time;
    Ok((value, stats))
}

fn check_solver_input(instance: &Instance01) -> Result<()> {
    if !instance.has_strictly_decreasing_ratios() {
        return Err(Error::Precondition(
            "items must be sorted with pairwise distinct profit-to-weight ratios".into(),
        ));
    }
    if instance.total_profit() > MAX_SOLVER_PROFIT {
        return Err(Error::TooLarge("total profit exceeds 2^96".into()));
    }
    Ok(())
}

struct Profiles {
    plus: ProfitSeq,
    minus: ProfitSeq,
}

fn combine(
    instance: &Instance01,
    g: &PrefixSolution,
    parts: &[Part],
    config: &SolverConfig,
) -> Result<Profiles> {
    // Some optimum differs from g in at most 2 w_max - 1 items, so the added
    // weight a and removed weight r satisfy a + r <= (2 w_max - 1) w_max.
    // Feasibility gives a - r <= slack and maximality of the optimum gives
    // r - a <= w_max - 1 - slack.
    let w_max = instance.max_weight() as u128;
    let slack = (instance.capacity() - g.total_weight) as u128;
    let pair = (2 * w_max).saturating_sub(1) * w_max;
    let cap_plus = (pair + slack) / 2;
    let cap_minus = (pair + w_max).saturating_sub(1 + slack) / 2;
    let cap = cap_plus.max(cap_minus);
    let delta_sum: u128 = parts.iter().map(|p| p.delta).sum();
    let needed = delta_sum.min(cap) + 1;
    if needed > config.max_profile_len as u128 {
        return Err(Error::BudgetExceeded {
            what: "profile sequence",
            needed,
            budget: config.max_profile_len as u128,
        });
    }

    let mut plus: ProfitSeq = vec![ExtProfit::ZERO];
    let mut minus: ProfitSeq = vec![ExtProfit::ZERO];
    let mut apply = |groups: Vec<WeightGroup>, budget: u128, total: u128| -> Result<()> {
        let lp = total.min(cap_plus) as usize;
        let lm = total.min(cap_minus) as usize;
        for group in groups {
            let (z, limit) = match group.side {
                Side::Unpicked => (&mut plus, lp),
                Side::Picked => (&mut minus, lm),
            };
            let y = equal_weights(&group, budget.min(limit as u128) as usize)?;
            *z = conv_concave_truncated(z, &y, limit + 1);
        }
        plus.resize(lp + 1, ExtProfit::NEG_INF);
        minus.resize(lm + 1, ExtProfit::NEG_INF);
        Ok(())
    };

    // Once the running bound reaches both caps every later part is truncated
    // to the same lengths, so their equal-weight groups are pooled by
    // (weight, side) and convolved once each.
    let mut total = 0u128;
    let mut pooled: BTreeMap<(u64, bool), Vec<ExtProfit>> = BTreeMap::new();
    for part in parts {
        total += part.delta;
        if total >= cap {
            for group in weight_groups(instance, g, part) {
                let key = (group.weight, group.side == Side::Picked);
                pooled.entry(key).or_default().extend(group.profits);
            }
            continue;
        }
        apply(weight_groups(instance, g, part), part.delta, total)?;
    }
    if !pooled.is_empty() {
        let groups = pooled
            .into_iter()
            .map(|((weight, picked), mut profits)| {
                profits.sort_unstable_by(|a, b| b.cmp(a));
                WeightGroup {
                    weight,
                    profits,
                    side: if picked { Side::Picked } else { Side::Unpicked },
                }
            })
            .collect();
        apply(groups, cap, cap)?;
    }
    Ok(Profiles { plus, minus })
}

/// Splits a part by weight and side. Unpicked profits come in index order
/// (already non-increasing); picked profits are negated and reversed so the
/// cheapest removals come first.
fn weight_groups(instance: &Instance01, g: &PrefixSolution, part: &Part) -> Vec<WeightGroup> {
    let items = instance.items();
    let mut order = part.indices.clone();
    order.sort_by_key(|&i| items[i].weight);
    let mut groups: Vec<WeightGroup> = Vec::new();
    for chunk in order.chunk_by(|&a, &b| items[a].weight == items[b].weight) {
        let weight = items[chunk[0]].weight;
        let unpicked: Vec<ExtProfit> = chunk
            .iter()
            .filter(|&&i| !g.picks(i))
            .map(|&i| ExtProfit::new(items[i].profit))
            .collect();
        let picked: Vec<ExtProfit> = chunk
            .iter()
            .rev()
            .filter(|&&i| g.picks(i))
            .map(|&i| -ExtProfit::new(items[i].profit))
            .collect();
        if !unpicked.is_empty() {
            groups.push(WeightGroup {
                weight,
                profits: unpicked,
                side: Side::Unpicked,
            });
        }
        if !picked.is_empty() {
            groups.push(WeightGroup {
                weight,
                profits: picked,
                side: Side::Picked,
            });
        }
    }
    groups
}

/// `p^T g + max_b s_plus[min(b + W - w^T g, D)] + z_minus[b]`.
fn finish(instance: &Instance01, g: &PrefixSolution, profiles: &Profiles) -> ExtProfit {
    let s_plus = prefix_max(&profiles.plus);
    let d = s_plus.len() - 1;
    let slack = (instance.capacity() - g.total_weight) as usize;
    let best = profiles
        .minus
        .iter()
        .enumerate()
        .map(|(b, &zm)| s_plus[(b.saturating_add(slack)).min(d)] + zm)
        .max()
        .expect("profiles are never empty");
    let value = g.total_profit + best;
    debug_assert!(value >= g.total_profit);
    value
}

/// Every finite profile entry must be achieved by an actual subset of the
/// right side with exactly that weight, so it cannot beat the best such
/// subset.
fn check_realisable(instance: &Instance01, g: &PrefixSolution, profiles: &Profiles) {
    let items = instance.items();
    let side = |picked: bool| -> Vec<(usize, i128)> {
        (0..items.len())
            .filter(|&i| g.picks(i) == picked)
            .map(|i| {
                let p = items[i].profit;
                (items[i].weight as usize, if picked { -p } else { p })
            })
            .collect()
    };
    for (z, members) in [(&profiles.plus, side(false)), (&profiles.minus, side(true))] {
        let best = best_exact_weight(&members, z.len());
        for (w, (&have, &cap)) in z.iter().zip(&best).enumerate() {
            assert!(
                have <= cap,
                "profile entry {have} at weight {w} exceeds every realising subset ({cap})"
            );
        }
    }
}

/// Max profit of any subset with total weight exactly `w`, for `w < len`,
/// by Gray-code enumeration.
fn best_exact_weight(members: &[(usize, i128)], len: usize) -> Vec<ExtProfit> {
    let mut best = vec![ExtProfit::NEG_INF; len];
    let (mut w, mut p) = (0usize, 0i128);
    let mut mask = 0u32;
    best[0] = ExtProfit::ZERO;
    for step in 1u32..(1u32 << members.len()) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        let (bw, bp) = members[bit];
        if mask >> bit & 1 == 1 {
            w += bw;
            p += bp;
        } else {
            w -= bw;
            p -= bp;
        }
        if w < len && ExtProfit::new(p) > best[w] {
            best[w] = ExtProfit::new(p);
        }
    }
    best
}
