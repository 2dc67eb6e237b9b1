//! Exact solvers for 0-1 and Bounded Knapsack running in
//! `O~(n + w_max^2)` time.
//!
//! The pipeline for a Bounded Knapsack instance is
//!
//! 1. [`reduction::trim_bounded`] fixes all but `O(w_max)` copies per weight
//!    class using the classic proximity bound, leaving at most `4 w_max^2`
//!    copies;
//! 2. [`reduction::expand_to_01`] and [`reduction::perturb_profits`] turn the
//!    rest into a 0-1 instance with pairwise distinct profit-to-weight ratios;
//! 3. [`proximity::partition`] splits the items into `O(log^2 n)` parts, each
//!    with a bound on how far an optimal solution strays from the greedy
//!    prefix inside that part;
//! 4. [`solver01::solve_01`] combines equal-weight greedy profiles of every
//!    part with concave (max,+)-convolutions ([`maxplus`], [`smawk`]).
//!
//! [`oracles`] holds the classical dynamic programs and exhaustive search the
//! fast path is checked against.

pub mod error;
pub mod ext;
pub mod maxplus;
pub mod model;
pub mod oracles;
pub mod proximity;
pub mod reduction;
pub mod smawk;
pub mod solver01;

pub use error::{Error, Result};
pub use ext::ExtProfit;
pub use model::{BoundedInstance, BoundedItem, Instance01, Item01, PrefixSolution};
