//! Problem instances, exact ratio comparison and maximal prefix solutions.
//!
//! Items are compared by profit-to-weight ratio through cross-multiplication
//! in `i128`. The input caps [`MAX_WEIGHT`] and [`MAX_PROFIT`] keep every
//! product `p_i * w_j` below `2^126`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ext::ExtProfit;

/// Largest admissible item weight.
pub const MAX_WEIGHT: u64 = 1 << 32;
/// Largest admissible item profit.
pub const MAX_PROFIT: i128 = 1 << 94;
/// Upper limit on the total profit of an instance (all copies counted).
pub const MAX_TOTAL_PROFIT: i128 = 1 << 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item01 {
    pub weight: u64,
    pub profit: i128,
}

impl Item01 {
    pub fn new(weight: u64, profit: i128) -> Self {
        Item01 { weight, profit }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundedItem {
    pub weight: u64,
    pub profit: i128,
    pub multiplicity: u64,
}

impl BoundedItem {
    pub fn new(weight: u64, profit: i128, multiplicity: u64) -> Self {
        BoundedItem {
            weight,
            profit,
            multiplicity,
        }
    }
}

/// Ratio order of two `(weight, profit)` pairs: `Greater` means the first
/// pair has the strictly larger profit-to-weight ratio.
#[inline]
pub fn ratio_cmp(w_a: u64, p_a: i128, w_b: u64, p_b: i128) -> Ordering {
    (p_a * w_b as i128).cmp(&(p_b * w_a as i128))
}

fn check_item(index: usize, weight: u64, profit: i128) -> Result<()> {
    let reason = if weight == 0 {
        "weight must be positive".to_string()
    } else if weight > MAX_WEIGHT {
        format!("weight {weight} exceeds {MAX_WEIGHT}")
    } else if profit <= 0 {
        "profit must be positive".to_string()
    } else if profit > MAX_PROFIT {
        format!("profit {profit} exceeds 2^94")
    } else {
        return Ok(());
    };
    Err(Error::InvalidItem { index, reason })
}

/// A 0-1 Knapsack instance `(w, p, W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance01 {
    items: Vec<Item01>,
    capacity: u64,
}

impl Instance01 {
    pub fn new(items: Vec<Item01>, capacity: u64) -> Result<Self> {
        let mut total = 0i128;
        for (i, it) in items.iter().enumerate() {
            check_item(i, it.weight, it.profit)?;
            total += it.profit;
            if total > MAX_TOTAL_PROFIT {
                return Err(Error::TooLarge("total profit exceeds 2^120".into()));
            }
        }
        Ok(Instance01 { items, capacity })
    }

    pub fn items(&self) -> &[Item01] {
        &self.items
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn max_weight(&self) -> u64 {
        self.items.iter().map(|it| it.weight).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u128 {
        self.items.iter().map(|it| it.weight as u128).sum()
    }

    pub fn total_profit(&self) -> i128 {
        self.items.iter().map(|it| it.profit).sum()
    }

    pub fn with_capacity(&self, capacity: u64) -> Self {
        Instance01 {
            items: self.items.clone(),
            capacity,
        }
    }

    /// Stable sort by non-increasing ratio; equal ratios keep input order.
    pub fn canonical_sort(&self) -> Self {
        let mut items = self.items.clone();
        items.sort_by(|a, b| ratio_cmp(b.weight, b.profit, a.weight, a.profit));
        Instance01 {
            items,
            capacity: self.capacity,
        }
    }

    pub fn is_sorted(&self) -> bool {
        self.items.windows(2).all(|p| {
            ratio_cmp(p[0].weight, p[0].profit, p[1].weight, p[1].profit) != Ordering::Less
        })
    }

    /// Sorted with every adjacent pair strictly decreasing in ratio.
    pub fn has_strictly_decreasing_ratios(&self) -> bool {
        self.items.windows(2).all(|p| {
            ratio_cmp(p[0].weight, p[0].profit, p[1].weight, p[1].profit) == Ordering::Greater
        })
    }

    /// The longest prefix of the current item order that fits.
    pub fn maximal_prefix(&self) -> PrefixSolution {
        let mut weight = 0u64;
        let mut profit = 0i128;
        let mut cut = self.items.len();
        for (i, it) in self.items.iter().enumerate() {
            match weight.checked_add(it.weight) {
                Some(w) if w <= self.capacity => {
                    weight = w;
                    profit += it.profit;
                }
                _ => {
                    cut = i;
                    break;
                }
            }
        }
        PrefixSolution {
            cut,
            partial: 0,
            total_weight: weight,
            total_profit: ExtProfit::new(profit),
        }
    }
}

/// A Bounded Knapsack instance `(w, p, u, W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedInstance {
    items: Vec<BoundedItem>,
    capacity: u64,
}

impl BoundedInstance {
    pub fn new(items: Vec<BoundedItem>, capacity: u64) -> Result<Self> {
        let mut total = 0i128;
        for (i, it) in items.iter().enumerate() {
            check_item(i, it.weight, it.profit)?;
            if it.multiplicity == 0 {
                return Err(Error::InvalidItem {
                    index: i,
                    reason: "multiplicity must be positive".into(),
                });
            }
            total = (it.multiplicity as i128)
                .checked_mul(it.profit)
                .and_then(|p| p.checked_add(total))
                .filter(|&t| t <= MAX_TOTAL_PROFIT)
                .ok_or_else(|| Error::TooLarge("total profit exceeds 2^120".into()))?;
        }
        Ok(BoundedInstance { items, capacity })
    }

    /// Every item with multiplicity one.
    pub fn from_01(instance: &Instance01) -> Self {
        BoundedInstance {
            items: instance
                .items()
                .iter()
                .map(|it| BoundedItem::new(it.weight, it.profit, 1))
                .collect(),
            capacity: instance.capacity(),
        }
    }

    pub fn items(&self) -> &[BoundedItem] {
        &self.items
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn max_weight(&self) -> u64 {
        self.items.iter().map(|it| it.weight).max().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.items.iter().map(|it| it.multiplicity as u128).sum()
    }

    /// `sum_i u_i * w_i`.
    pub fn total_weight(&self) -> u128 {
        self.items
            .iter()
            .map(|it| it.multiplicity as u128 * it.weight as u128)
            .sum()
    }

    /// `sum_i u_i * p_i`; fits by construction.
    pub fn total_profit(&self) -> i128 {
        self.items
            .iter()
            .map(|it| it.multiplicity as i128 * it.profit)
            .sum()
    }

    pub fn with_capacity(&self, capacity: u64) -> Self {
        BoundedInstance {
            items: self.items.clone(),
            capacity,
        }
    }

    pub fn canonical_sort(&self) -> Self {
        let mut items = self.items.clone();
        items.sort_by(|a, b| ratio_cmp(b.weight, b.profit, a.weight, a.profit));
        BoundedInstance {
            items,
            capacity: self.capacity,
        }
    }

    pub fn is_sorted(&self) -> bool {
        self.items.windows(2).all(|p| {
            ratio_cmp(p[0].weight, p[0].profit, p[1].weight, p[1].profit) != Ordering::Less
        })
    }

    /// Takes every copy of items `0..cut`, then as many copies of item `cut`
    /// as still fit.
    pub fn maximal_prefix(&self) -> PrefixSolution {
        let cap = self.capacity as u128;
        let mut weight = 0u128;
        let mut profit = 0i128;
        for (i, it) in self.items.iter().enumerate() {
            let full = it.multiplicity as u128 * it.weight as u128;
            if weight + full <= cap {
                weight += full;
                profit += it.multiplicity as i128 * it.profit;
                continue;
            }
            let partial = ((cap - weight) / it.weight as u128) as u64;
            weight += partial as u128 * it.weight as u128;
            profit += partial as i128 * it.profit;
            return PrefixSolution {
                cut: i,
                partial,
                total_weight: weight as u64,
                total_profit: ExtProfit::new(profit),
            };
        }
        PrefixSolution {
            cut: self.items.len(),
            partial: 0,
            total_weight: weight as u64,
            total_profit: ExtProfit::new(profit),
        }
    }
}

/// The maximal prefix solution `g`.
///
/// `cut` is zero-based: items `0..cut` are taken completely, item `cut`
/// (if any) is taken `partial` times (always 0 for 0-1 instances) and later
/// items are not taken. `cut == n` means everything fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixSolution {
    pub cut: usize,
    pub partial: u64,
    pub total_weight: u64,
    pub total_profit: ExtProfit,
}

impl PrefixSolution {
    /// `g_i` for a 0-1 instance.
    #[inline]
    pub fn picks(&self, index: usize) -> bool {
        index < self.cut
    }
}
