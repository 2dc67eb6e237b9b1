//! Row maxima of totally monotone matrices.
//!
//! Matrices are implicit: an `eval(row, col)` closure is called on demand and
//! nothing is materialised. [`row_maxima`] is the SMAWK algorithm
//! (REDUCE followed by recursion on the odd rows and INTERPOLATE on the even
//! rows) and evaluates `O(rows + cols)` entries. It requires every row's
//! leftmost maximum to be at a column no smaller than the previous row's,
//! in every submatrix; inverse-Monge matrices
//! (`M[i][j] + M[i+1][j+1] >= M[i+1][j] + M[i][j+1]`) have this property.
//!
//! Ties always resolve to the smallest column. A row that is entirely `-inf`
//! therefore reports column 0.

/// Leftmost row maxima of a totally monotone `rows x cols` matrix.
///
/// Returns one `(column, value)` pair per row. Empty when either dimension
/// is zero.
pub fn row_maxima<T, F>(rows: usize, cols: usize, mut eval: F) -> Vec<(usize, T)>
where
    T: Ord + Copy,
    F: FnMut(usize, usize) -> T,
{
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let argmax = smawk(rows, cols, &mut eval);
    argmax
        .into_iter()
        .enumerate()
        .map(|(r, c)| (c, eval(r, c)))
        .collect()
}

/// Leftmost argmax column of every row of a `rows x cols` matrix.
pub(crate) fn smawk<T, F>(rows: usize, cols: usize, eval: &mut F) -> Vec<usize>
where
    T: Ord + Copy,
    F: FnMut(usize, usize) -> T,
{
    let mut out = vec![0usize; rows];
    if rows > 0 && cols > 0 {
        let all: Vec<usize> = (0..cols).collect();
        solve(0, 1, rows, &all, eval, &mut out);
    }
    out
}

/// Fills `out[r]` for the rows `r = start + k * stride`, `k < count`.
fn solve<T, F>(
    start: usize,
    stride: usize,
    count: usize,
    cols: &[usize],
    eval: &mut F,
    out: &mut [usize],
) where
    T: Ord + Copy,
    F: FnMut(usize, usize) -> T,
{
    if count == 0 {
        return;
    }
    let row = |k: usize| start + k * stride;

    // REDUCE: keep at most `count` columns, dropping only columns that
    // cannot hold a leftmost maximum of any row.
    let mut kept: Vec<usize> = Vec::with_capacity(count.min(cols.len()));
    for &c in cols {
        while let Some(&top) = kept.last() {
            let r = row(kept.len() - 1);
            if eval(r, top) < eval(r, c) {
                kept.pop();
            } else {
                break;
            }
        }
        if kept.len() < count {
            kept.push(c);
        }
    }

    solve(start + stride, 2 * stride, count / 2, &kept, eval, out);

    // INTERPOLATE the even rows between their odd neighbours.
    let last = *kept.last().expect("cols non-empty");
    let mut pos = 0usize;
    for k in (0..count).step_by(2) {
        let stop = if k + 1 < count { out[row(k + 1)] } else { last };
        let r = row(k);
        let mut best = kept[pos];
        let mut best_val = eval(r, best);
        while kept[pos] != stop {
            pos += 1;
            let v = eval(r, kept[pos]);
            if v > best_val {
                best_val = v;
                best = kept[pos];
            }
        }
        out[r] = best;
    }
}

/// Exhaustive `O(rows * cols)` scan with the same contract as [`row_maxima`].
/// Does not need any monotonicity.
pub fn row_maxima_bruteforce<T, F>(rows: usize, cols: usize, mut eval: F) -> Vec<(usize, T)>
where
    T: Ord + Copy,
    F: FnMut(usize, usize) -> T,
{
    if cols == 0 {
        return Vec::new();
    }
    (0..rows)
        .map(|r| {
            let mut best = (0, eval(r, 0));
            for c in 1..cols {
                let v = eval(r, c);
                if v > best.1 {
                    best = (c, v);
                }
            }
            best
        })
        .collect()
}
