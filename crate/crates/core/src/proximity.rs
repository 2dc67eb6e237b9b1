//! Item partitioning with per-part proximity bounds.
//!
//! [`single_step`] looks at the live items `U`, finds the class of weights
//! with the largest multiplicity (counts in `(m/2, m]` for the largest power
//! of two `m` that occurs), and carves off half of that class on one side of
//! the greedy prefix `g`: either the earliest picked items or the latest
//! unpicked ones. For the carved set `I` some optimal solution differs from
//! `g` by total weight at most
//!
//! ```text
//! delta = ceil(36000000 * log2(2n)^3 * m * w_max^2 / |I|)
//! ```
//!
//! and `|supp(w(I))| * delta <= 300000000 * log2(2n)^3 * w_max^2`.
//! [`partition`] repeats this until no item is left; the potential
//! `log2(m) * 2 * ceil(log_{4/3} n) + ceil(log_{4/3} |J|)` drops in every
//! step, so there are `O(log^2 n)` parts.
//!
//! The bound above holds for every optimal solution, including one that is
//! closest to `g`. That solution changes at most `2 w_max - 1` items, so the
//! same part also has bound `(2 w_max - 1) * w_max`, and trivially
//! `sum_{i in I} w_i`. [`cap_delta`] takes the minimum of the three; all of
//! them hold for one common optimal solution, which is what the combining
//! dynamic program needs.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::model::{Instance01, PrefixSolution};

/// The constant in the per-step proximity bound.
pub const DELTA_CONSTANT: f64 = 36_000_000.0;
/// The constant in the bound on `support * delta`.
pub const PRODUCT_CONSTANT: f64 = 300_000_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProximityConfig {
    /// Replaces [`DELTA_CONSTANT`]. Any value below it makes the bounds
    /// unproven and the solver heuristic.
    pub delta_constant_override: Option<f64>,
}

impl ProximityConfig {
    pub fn delta_constant(&self) -> f64 {
        self.delta_constant_override.unwrap_or(DELTA_CONSTANT)
    }

    pub fn is_exact(&self) -> bool {
        self.delta_constant_override
            .is_none_or(|c| c >= DELTA_CONSTANT)
    }
}

/// Which side of the greedy prefix a part lies on. Every part is entirely
/// on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `g_i = 1`
    Picked,
    /// `g_i = 0`
    Unpicked,
}

/// One part `I_j` of the partitioning with its proximity bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    /// Item indices in increasing order.
    pub indices: Vec<usize>,
    /// The bound used by the solver (after [`cap_delta`]).
    pub delta: u128,
    /// The uncapped bound from the step formula.
    pub uncapped_delta: u128,
    /// Number of distinct weights among `indices`.
    pub support: usize,
    pub side: Side,
}

/// Internals of one [`single_step`] call, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleStepState {
    /// Largest power of two with a non-empty weight class.
    pub m: u64,
    /// Weights whose multiplicity in `U` lies in `(m/2, m]`, ascending.
    pub weight_class: Vec<u64>,
    pub j: Vec<usize>,
    pub j_minus: Vec<usize>,
    pub j_plus: Vec<usize>,
    pub i_minus: Vec<usize>,
    pub i_plus: Vec<usize>,
    pub chosen: Side,
}

impl SingleStepState {
    pub fn chosen_set(&self) -> &[usize] {
        match self.chosen {
            Side::Picked => &self.i_minus,
            Side::Unpicked => &self.i_plus,
        }
    }
}

/// Per-iteration record of a [`partition`] run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepTrace {
    pub live: usize,
    pub m: u64,
    pub class_size: usize,
    pub j_len: usize,
    pub i_len: usize,
    pub potential: u64,
}

/// Weight ids shared by all steps of one run.
struct Context<'a> {
    instance: &'a Instance01,
    g: &'a PrefixSolution,
    rank: Vec<u32>,
    weight_of_rank: Vec<u64>,
    log2_2n: f64,
    ceil_log43_n: u64,
    w_max: u64,
    config: ProximityConfig,
}

impl<'a> Context<'a> {
    fn new(instance: &'a Instance01, g: &'a PrefixSolution, config: ProximityConfig) -> Self {
        let mut weight_of_rank: Vec<u64> = instance.items().iter().map(|it| it.weight).collect();
        weight_of_rank.sort_unstable();
        weight_of_rank.dedup();
        let ids: HashMap<u64, u32> = weight_of_rank
            .iter()
            .enumerate()
            .map(|(r, &w)| (w, r as u32))
            .collect();
        let rank = instance.items().iter().map(|it| ids[&it.weight]).collect();
        let n = instance.len() as u64;
        Context {
            instance,
            g,
            rank,
            weight_of_rank,
            log2_2n: ((2 * n) as f64).log2(),
            ceil_log43_n: ceil_log_four_thirds(n),
            w_max: instance.max_weight(),
            config,
        }
    }

    /// `m_U`, the class mask and `J_U` for the live set.
    fn weight_class(&self, live: &[usize]) -> (u64, Vec<bool>, Vec<usize>) {
        let mut counts = vec![0u64; self.weight_of_rank.len()];
        for &i in live {
            counts[self.rank[i] as usize] += 1;
        }
        let top = counts.iter().copied().max().unwrap_or(0);
        let m = top.next_power_of_two();
        let in_class: Vec<bool> = counts.iter().map(|&c| c > m / 2 && c <= m).collect();
        let j = live
            .iter()
            .copied()
            .filter(|&i| in_class[self.rank[i] as usize])
            .collect();
        (m, in_class, j)
    }

    fn potential_of(&self, m: u64, j_len: usize) -> u64 {
        m.trailing_zeros() as u64 * 2 * self.ceil_log43_n + ceil_log_four_thirds(j_len as u64)
    }

    fn step(&self, live: &[usize]) -> Result<(Part, SingleStepState)> {
        if live.is_empty() {
            return Err(Error::Precondition(
                "single_step needs a non-empty item set".into(),
            ));
        }
        let (m, in_class, j) = self.weight_class(live);
        let (j_minus, j_plus): (Vec<usize>, Vec<usize>) = j.iter().partition(|&&i| self.g.picks(i));
        let i_minus = j_minus[..j_minus.len().div_ceil(2)].to_vec();
        let i_plus = j_plus[j_plus.len() - j_plus.len().div_ceil(2)..].to_vec();
        let chosen = if i_minus.len() > i_plus.len() {
            Side::Picked
        } else {
            Side::Unpicked
        };
        let weight_class = in_class
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(r, _)| self.weight_of_rank[r])
            .collect();
        let state = SingleStepState {
            m,
            weight_class,
            j,
            j_minus,
            j_plus,
            i_minus,
            i_plus,
            chosen,
        };
        let indices = state.chosen_set().to_vec();
        debug_assert!(4 * indices.len() >= state.j.len());

        let mut seen = vec![false; self.weight_of_rank.len()];
        let mut support = 0;
        for &i in &indices {
            let r = self.rank[i] as usize;
            if !seen[r] {
                seen[r] = true;
                support += 1;
            }
        }
        let uncapped_delta = step_delta(
            self.config.delta_constant(),
            self.log2_2n,
            m,
            self.w_max,
            indices.len(),
        );
        let part = Part {
            indices,
            delta: uncapped_delta,
            uncapped_delta,
            support,
            side: chosen,
        };
        Ok((cap_delta(part, self.instance), state))
    }
}

/// `ceil(c * log2(2n)^3 * m * w_max^2 / size)`, saturating at `u128::MAX`.
fn step_delta(constant: f64, log2_2n: f64, m: u64, w_max: u64, size: usize) -> u128 {
    let w = w_max as f64;
    let raw = constant * log2_2n.powi(3) * m as f64 * w * w / size as f64;
    raw.ceil() as u128
}

/// `ceil(log_{4/3} x)` for `x >= 1`, exact: the least `c` with `4^c >= x * 3^c`.
pub fn ceil_log_four_thirds(x: u64) -> u64 {
    assert!(x >= 1, "log of zero");
    let x = BigUint::from(x);
    let mut four = BigUint::from(1u32);
    let mut three = BigUint::from(1u32);
    let mut c = 0;
    while four < &x * &three {
        four *= 4u32;
        three *= 3u32;
        c += 1;
    }
    c
}

/// The right-hand side `300000000 * log2(2n)^3 * w_max^2` of the product
/// bound, in floating point.
pub fn product_bound(n: usize, w_max: u64) -> f64 {
    let w = w_max as f64;
    PRODUCT_CONSTANT * ((2 * n) as f64).log2().powi(3) * w * w
}

/// One partitioning step on the live set `live` (indices into `instance`,
/// increasing).
pub fn single_step(
    instance: &Instance01,
    g: &PrefixSolution,
    live: &[usize],
    config: ProximityConfig,
) -> Result<(Part, SingleStepState)> {
    Context::new(instance, g, config).step(live)
}

/// `min(uncapped_delta, (2 w_max - 1) * w_max, sum of weights in the part)`.
pub fn cap_delta(mut part: Part, instance: &Instance01) -> Part {
    let w_max = instance.max_weight() as u128;
    let classic = (2 * w_max).saturating_sub(1) * w_max;
    let mass: u128 = part
        .indices
        .iter()
        .map(|&i| instance.items()[i].weight as u128)
        .sum();
    part.delta = part.delta.min(classic).min(mass);
    part
}

/// The potential of a non-empty live set.
pub fn potential(live: &[usize], instance: &Instance01) -> Result<u64> {
    if live.is_empty() {
        return Err(Error::Precondition("potential of an empty set".into()));
    }
    let g = instance.maximal_prefix();
    let ctx = Context::new(instance, &g, ProximityConfig::default());
    let (m, _, j) = ctx.weight_class(live);
    Ok(ctx.potential_of(m, j.len()))
}

/// Splits all items into parts, in discovery order.
pub fn partition(
    instance: &Instance01,
    g: &PrefixSolution,
    config: ProximityConfig,
) -> Result<Vec<Part>> {
    partition_traced(instance, g, config).map(|(parts, _)| parts)
}

/// [`partition`] plus one [`StepTrace`] per iteration.
pub fn partition_traced(
    instance: &Instance01,
    g: &PrefixSolution,
    config: ProximityConfig,
) -> Result<(Vec<Part>, Vec<StepTrace>)> {
    if instance.is_empty() {
        return Err(Error::Precondition(
            "partition needs at least one item".into(),
        ));
    }
    let ctx = Context::new(instance, g, config);
    let mut live: Vec<usize> = (0..instance.len()).collect();
    let mut taken = vec![false; instance.len()];
    let mut parts = Vec::new();
    let mut trace: Vec<StepTrace> = Vec::new();
    while !live.is_empty() {
        let (part, state) = ctx.step(&live)?;
        let step = StepTrace {
            live: live.len(),
            m: state.m,
            class_size: state.weight_class.len(),
            j_len: state.j.len(),
            i_len: part.indices.len(),
            potential: ctx.potential_of(state.m, state.j.len()),
        };
        if let Some(prev) = trace.last() {
            debug_assert!(step.potential < prev.potential, "potential did not drop");
        }
        trace.push(step);
        for &i in &part.indices {
            taken[i] = true;
        }
        live.retain(|&i| !taken[i]);
        parts.push(part);
    }
    Ok((parts, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Item01;

    fn inst(items: &[(u64, i128)], cap: u64) -> Instance01 {
        Instance01::new(items.iter().map(|&(w, p)| Item01::new(w, p)).collect(), cap).unwrap()
    }

    #[test]
    fn single_step_trace() {
        // ratios 10/2 > 9/2 > 5/3; g takes only the first item
        let i = inst(&[(2, 10), (2, 9), (3, 5)], 3);
        let g = i.maximal_prefix();
        assert_eq!(g.cut, 1);
        let (part, st) = single_step(&i, &g, &[0, 1, 2], ProximityConfig::default()).unwrap();
        assert_eq!(st.m, 2);
        assert_eq!(st.weight_class, vec![2]);
        assert_eq!(st.j, vec![0, 1]);
        assert_eq!((st.j_minus.clone(), st.j_plus.clone()), (vec![0], vec![1]));
        assert_eq!((st.i_minus.clone(), st.i_plus.clone()), (vec![0], vec![1]));
        assert_eq!(st.chosen, Side::Unpicked);
        assert_eq!(part.indices, vec![1]);
        assert_eq!(part.support, 1);
        assert_eq!(part.delta, 2);
    }

    #[test]
    fn single_item() {
        let i = inst(&[(4, 1)], 10);
        let g = i.maximal_prefix();
        let (part, st) = single_step(&i, &g, &[0], ProximityConfig::default()).unwrap();
        assert_eq!(st.m, 1);
        assert_eq!(
            (st.j.clone(), st.j_minus.clone(), st.i_minus.clone()),
            (vec![0], vec![0], vec![0])
        );
        assert_eq!(part.indices, vec![0]);
        assert_eq!(part.side, Side::Picked);
        assert!(single_step(&i, &g, &[], ProximityConfig::default()).is_err());
    }

    #[test]
    fn log_four_thirds() {
        assert_eq!(ceil_log_four_thirds(1), 0);
        assert_eq!(ceil_log_four_thirds(2), 3);
        assert_eq!(ceil_log_four_thirds(4), 5);
        assert_eq!(ceil_log_four_thirds(100_000), 41);
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential(&[0], &inst(&[(1, 1)], 0)).unwrap(), 0);
        let four = inst(&[(3, 4), (3, 3), (3, 2), (3, 1)], 5);
        assert_eq!(potential(&[0, 1, 2, 3], &four).unwrap(), 25);
    }

    #[test]
    fn cap_takes_minimum() {
        let i = inst(&[(10, 1), (10, 1), (10, 1), (10, 1), (10, 1), (5, 1)], 0);
        let part = |d| Part {
            indices: vec![0, 1, 2, 3, 4, 5],
            delta: d,
            uncapped_delta: d,
            support: 2,
            side: Side::Unpicked,
        };
        assert_eq!(cap_delta(part(1_000_000_000), &i).delta, 55);
        assert_eq!(cap_delta(part(3), &i).delta, 3);
    }

    #[test]
    fn equal_weights_partition() {
        let n = 37;
        let items: Vec<(u64, i128)> = (0..n).map(|k| (7, 1000 - k as i128)).collect();
        let i = inst(&items, 7 * 12);
        let g = i.maximal_prefix();
        let (parts, trace) = partition_traced(&i, &g, ProximityConfig::default()).unwrap();
        assert_eq!(trace[0].m, 64);
        assert!(parts.iter().all(|p| p.support == 1));
        assert!(trace.windows(2).all(|w| w[1].j_len * 4 <= w[0].j_len * 3));
        let bound = ceil_log_four_thirds(n as u64) + 1;
        assert!(parts.len() as u64 <= bound, "{} parts", parts.len());
    }
}
