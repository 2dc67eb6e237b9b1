//! (max,+)-convolution of profit sequences.
//!
//! A profit sequence is indexed by total weight; `-inf` marks weights with no
//! realising subset. [`conv_concave`] convolves an arbitrary sequence with a
//! [`ConcaveSeq`] in linear time by running SMAWK once per residue class
//! modulo the concave sequence's offset.

use crate::error::{Error, Result};
use crate::ext::ExtProfit;
use crate::smawk;

pub type ProfitSeq = Vec<ExtProfit>;

/// A sequence finite exactly at `0, h, 2h, .., count*h` whose successive
/// differences along that progression are non-increasing.
///
/// Only the finite entries are stored; `len` is the length of the dense
/// sequence (at least `count*h + 1`, trailing entries are `-inf`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcaveSeq {
    steps: Vec<ExtProfit>,
    offset: usize,
    len: usize,
}

impl ConcaveSeq {
    /// `steps[i]` is the value at index `i * offset`.
    pub fn new(steps: Vec<ExtProfit>, offset: usize, len: usize) -> Result<Self> {
        if offset == 0 {
            return Err(Error::Precondition(
                "concave offset must be positive".into(),
            ));
        }
        if steps.is_empty() {
            return Err(Error::Precondition("concave sequence needs y[0]".into()));
        }
        if (steps.len() - 1) * offset + 1 > len {
            return Err(Error::Precondition(format!(
                "{} steps of offset {offset} do not fit in length {len}",
                steps.len()
            )));
        }
        let seq = ConcaveSeq { steps, offset, len };
        if !seq.is_concave() {
            return Err(Error::Precondition("sequence is not concave".into()));
        }
        Ok(seq)
    }

    /// All steps finite and differences non-increasing.
    pub fn is_concave(&self) -> bool {
        if self.steps.iter().any(|s| s.is_neg_inf()) {
            return false;
        }
        let v: Vec<i128> = self.steps.iter().map(|s| s.finite().unwrap()).collect();
        v.windows(3).all(|w| w[1] - w[0] >= w[2] - w[1])
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Number of increments `l`; finite entries sit at `0..=l*offset`.
    pub fn count(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> &[ExtProfit] {
        &self.steps
    }

    #[inline]
    pub fn get(&self, index: usize) -> ExtProfit {
        if index.is_multiple_of(self.offset) {
            self.steps
                .get(index / self.offset)
                .copied()
                .unwrap_or(ExtProfit::NEG_INF)
        } else {
            ExtProfit::NEG_INF
        }
    }

    pub fn to_seq(&self) -> ProfitSeq {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// `z[k] = max_i x[i] + y[k - i]` by the definition, in `O(|x| * |y|)`.
pub fn conv_naive(x: &[ExtProfit], y: &[ExtProfit]) -> ProfitSeq {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut z = vec![ExtProfit::NEG_INF; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        if a.is_neg_inf() {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            let v = a + b;
            if v > z[i + j] {
                z[i + j] = v;
            }
        }
    }
    z
}

/// `x ⋆ y` for concave `y`, of length `|x| + |y| - 1`.
pub fn conv_concave(x: &[ExtProfit], y: &ConcaveSeq) -> ProfitSeq {
    if x.is_empty() {
        return Vec::new();
    }
    conv_concave_truncated(x, y, x.len() + y.len() - 1)
}

/// The first `out_len` entries of `x ⋆ y`.
pub fn conv_concave_truncated(x: &[ExtProfit], y: &ConcaveSeq, out_len: usize) -> ProfitSeq {
    assert!(
        y.is_concave(),
        "conv_concave called with a non-concave sequence"
    );
    let full = if x.is_empty() {
        0
    } else {
        x.len() + y.len() - 1
    };
    let out_len = out_len.min(full);
    let mut z = vec![ExtProfit::NEG_INF; out_len];
    if out_len == 0 {
        return z;
    }

    let h = y.offset;
    let steps: Vec<i128> = y.steps.iter().map(|s| s.finite().unwrap()).collect();
    let ell = steps.len() - 1;
    let (y_min, y_max) = min_max(steps.iter().copied()).unwrap();

    for r in 0..h.min(out_len) {
        if r >= x.len() {
            break;
        }
        let xs: Vec<ExtProfit> = x[r..].iter().step_by(h).copied().collect();
        let Some((x_min, x_max)) = min_max(xs.iter().filter_map(|v| v.finite())) else {
            continue;
        };
        let rows = (out_len - r).div_ceil(h);
        let cols = xs.len();

        // The residue matrix is M[i][j] = x[r + j*h] + y[(i - j)*h] with -inf
        // outside the band 0 <= i - j <= l and in -inf columns of x. SMAWK runs
        // on a finite inverse-Monge surrogate: -inf columns become -col_pen and
        // y is extended linearly with slope band_pen on both sides of the
        // band. Both penalties push every surrogate entry below every genuine
        // finite entry of the same row, so the surrogate's leftmost argmax is
        // genuine whenever the row has any finite entry.
        let band_pen = (x_max - x_min) + (y_max - y_min) + 1;
        let col_pen = (y_max - y_min) - x_min + 1;
        let reach = (rows + cols) as i128 + 1;
        band_pen
            .checked_mul(reach)
            .and_then(|b| b.checked_add(x_max.abs().max(x_min.abs())))
            .and_then(|b| b.checked_add(col_pen.abs()))
            .and_then(|b| b.checked_add(y_max.abs().max(y_min.abs())))
            .expect("profit magnitudes too large for the SMAWK surrogate");

        let xkey: Vec<i128> = xs.iter().map(|v| v.finite().unwrap_or(-col_pen)).collect();
        let (first, last) = (steps[0], steps[ell]);
        // ykey[d + cols - 1] is the surrogate y at offset d = i - j.
        let ykey: Vec<i128> = (-(cols as isize - 1)..rows as isize)
            .map(|d| {
                if d < 0 {
                    first + band_pen * d as i128
                } else if d as usize > ell {
                    last - band_pen * (d as usize - ell) as i128
                } else {
                    steps[d as usize]
                }
            })
            .collect();
        let mut eval = |i: usize, j: usize| xkey[j] + ykey[i + cols - 1 - j];
        let argmax = smawk::smawk(rows, cols, &mut eval);
        for (i, j) in argmax.into_iter().enumerate() {
            let d = i as isize - j as isize;
            if d >= 0 && d as usize <= ell {
                z[r + i * h] = xs[j] + y.steps[d as usize];
            }
        }
    }
    z
}

/// `s[i] = max(x[0..=i])`.
pub fn prefix_max(x: &[ExtProfit]) -> ProfitSeq {
    let mut out = Vec::with_capacity(x.len());
    let mut best = ExtProfit::NEG_INF;
    for &v in x {
        best = best.max(v);
        out.push(best);
    }
    out
}

fn min_max(it: impl Iterator<Item = i128>) -> Option<(i128, i128)> {
    it.fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}
