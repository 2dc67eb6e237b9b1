//! Seeded random instances.
//!
//! The stream is ChaCha8 (`rand_chacha`) seeded with `seed_from_u64`, and
//! each item draws weight, profit and multiplicity in that order with
//! `gen_range` over the inclusive ranges `[1, w_max]`, `[1, p_max]`,
//! `[1, u_max]`. The same seed always yields the same file.

use knapsack_core::{BoundedInstance, BoundedItem, Instance01, Item01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::InstanceFile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapacityRule {
    /// `floor(f * sum_i u_i w_i)` with `0 < f <= 1`.
    Fraction(f64),
    Explicit(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub w_max: u64,
    pub p_max: u64,
    /// 1 produces a 0-1 instance.
    pub u_max: u64,
    pub capacity: CapacityRule,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.w_max == 0 || self.p_max == 0 || self.u_max == 0 {
            return Err("w_max, p_max and u_max must be positive".into());
        }
        if let CapacityRule::Fraction(f) = self.capacity {
            if !(f > 0.0 && f <= 1.0) {
                return Err(format!("capacity fraction {f} outside (0, 1]"));
            }
        }
        Ok(())
    }
}

pub fn gen(spec: &GenSpec) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let items: Vec<BoundedItem> = (0..spec.n)
        .map(|_| {
            let w = rng.gen_range(1..=spec.w_max);
            let p = rng.gen_range(1..=spec.p_max);
            let u = rng.gen_range(1..=spec.u_max);
            BoundedItem::new(w, p as i128, u)
        })
        .collect();
    let total: u128 = items
        .iter()
        .map(|it| it.weight as u128 * it.multiplicity as u128)
        .sum();
    let capacity = match spec.capacity {
        CapacityRule::Fraction(f) => (total as f64 * f).floor() as u64,
        CapacityRule::Explicit(w) => w,
    };
    if spec.u_max == 1 {
        let items = items
            .iter()
            .map(|it| Item01::new(it.weight, it.profit))
            .collect();
        InstanceFile::ZeroOne(Instance01::new(items, capacity).expect("generated items are valid"))
    } else {
        InstanceFile::Bounded(
            BoundedInstance::new(items, capacity).expect("generated items are valid"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::emit;

    fn spec(seed: u64, n: usize) -> GenSpec {
        GenSpec {
            seed,
            n,
            w_max: 17,
            p_max: 40,
            u_max: 6,
            capacity: CapacityRule::Fraction(0.5),
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(emit(&gen(&spec(5, 30))), emit(&gen(&spec(5, 30))));
        assert_ne!(emit(&gen(&spec(5, 30))), emit(&gen(&spec(6, 30))));
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(emit(&gen(&spec(1, 0))), "0 0\n");
    }

    #[test]
    fn respects_ranges() {
        for seed in 0..50 {
            let b = gen(&spec(seed, 40)).to_bounded();
            assert!(b.max_weight() <= 17);
            assert!(b
                .items()
                .iter()
                .all(|it| it.profit <= 40 && it.multiplicity <= 6));
            assert_eq!(b.capacity() as u128, b.total_weight() / 2);
        }
        let s = GenSpec {
            u_max: 1,
            ..spec(3, 10)
        };
        assert!(matches!(gen(&s), InstanceFile::ZeroOne(_)));
        assert!(GenSpec {
            capacity: CapacityRule::Fraction(0.0),
            ..s
        }
        .validate()
        .is_err());
    }
}
