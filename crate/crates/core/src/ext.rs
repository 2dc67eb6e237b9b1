//! Extended-precision profit values with an absorbing `-inf`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg};

/// A profit in `Z ∪ {-inf}` backed by an `i128`.
///
/// `i128::MIN` is reserved for [`ExtProfit::NEG_INF`]; every other `i128`
/// is a finite value. Addition is exact: `-inf` absorbs, and finite overflow
/// panics instead of wrapping. Ordering is the natural integer order with
/// `-inf` strictly below every finite value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtProfit(i128);

impl ExtProfit {
    pub const NEG_INF: ExtProfit = ExtProfit(i128::MIN);
    pub const ZERO: ExtProfit = ExtProfit(0);

    /// Wraps a finite value. Panics on `i128::MIN`, which is reserved.
    #[inline]
    pub fn new(value: i128) -> Self {
        assert!(value != i128::MIN, "i128::MIN is reserved for -inf");
        ExtProfit(value)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0 != i128::MIN
    }

    #[inline]
    pub fn is_neg_inf(self) -> bool {
        self.0 == i128::MIN
    }

    /// The finite value, or `None` for `-inf`.
    #[inline]
    pub fn finite(self) -> Option<i128> {
        self.is_finite().then_some(self.0)
    }

    /// Addition that reports finite overflow instead of panicking.
    #[inline]
    pub fn checked_add(self, rhs: ExtProfit) -> Option<ExtProfit> {
        if self.is_neg_inf() || rhs.is_neg_inf() {
            return Some(Self::NEG_INF);
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v != i128::MIN => Some(ExtProfit(v)),
            _ => None,
        }
    }
}

impl Add for ExtProfit {
    type Output = ExtProfit;

    #[inline]
    fn add(self, rhs: ExtProfit) -> ExtProfit {
        self.checked_add(rhs)
            .unwrap_or_else(|| panic!("ExtProfit overflow: {self} + {rhs}"))
    }
}

impl Neg for ExtProfit {
    type Output = ExtProfit;

    /// Negates a finite value. `-inf` has no negation in this type and panics.
    #[inline]
    fn neg(self) -> ExtProfit {
        assert!(self.is_finite(), "cannot negate -inf");
        ExtProfit(-self.0)
    }
}

impl Sum for ExtProfit {
    fn sum<I: Iterator<Item = ExtProfit>>(iter: I) -> ExtProfit {
        iter.fold(ExtProfit::ZERO, |acc, x| acc + x)
    }
}

impl From<i64> for ExtProfit {
    fn from(v: i64) -> Self {
        ExtProfit(v as i128)
    }
}

impl From<u64> for ExtProfit {
    fn from(v: u64) -> Self {
        ExtProfit(v as i128)
    }
}

impl fmt::Display for ExtProfit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("-inf"),
        }
    }
}

impl fmt::Debug for ExtProfit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
