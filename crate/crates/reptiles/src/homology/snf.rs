//! Smith normal form of integer matrices, exact over Z.
//!
//! Boundary matrices of cubical complexes are large, sparse, and dominated
//! by unit entries, so elimination runs in two phases: a sparse phase that
//! pivots only on entries of absolute value one (choosing a pivot of minimal
//! Markowitz cost to limit fill-in), followed by a dense pass over whatever
//! small block remains, carried out in arbitrary-precision integers so
//! coefficient growth can never wrap.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix in triplet-backed row storage.
#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    row_data: Vec<HashMap<usize, i128>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            row_data: vec![HashMap::new(); rows],
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Self {
        let mut m = SparseIntMatrix::new(rows, cols);
        for &(r, c, v) in triplets {
            m.add(r, c, v as i128);
        }
        m
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut m = SparseIntMatrix::new(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add(r, c, v as i128);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_data.iter().map(|r| r.len()).sum()
    }

    fn add(&mut self, r: usize, c: usize, v: i128) {
        if v == 0 {
            return;
        }
        let entry = self.row_data[r].entry(c).or_insert(0);
        *entry += v;
        if *entry == 0 {
            self.row_data[r].remove(&c);
        }
    }
}

/// Rank and elementary divisors `d_1 | d_2 | ... | d_r` of an integer
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub divisors: Vec<u64>,
}

/// Compute the Smith normal form invariants of `m`.
pub fn smith_normal_form(m: &SparseIntMatrix) -> Result<SmithForm> {
    let mut rows: Vec<HashMap<usize, i128>> = m.row_data.clone();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut unit_rank = 0usize;

    // Sparse phase: repeatedly eliminate on a +-1 pivot of minimal
    // Markowitz cost. Each pivot contributes an elementary divisor of 1.
    loop {
        let mut best: Option<(usize, usize, u128)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !row_alive[r] {
                continue;
            }
            let row_len = row.len();
            for (&c, &v) in row.iter() {
                if v != 1 && v != -1 {
                    continue;
                }
                let cost = (row_len as u128 - 1) * (col_rows[c].len() as u128 - 1);
                if best.map_or(true, |(_, _, b)| cost < b) {
                    best = Some((r, c, cost));
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_val = rows[pr][&pc];
        let pivot_row: Vec<(usize, i128)> = rows[pr].iter().map(|(&c, &v)| (c, v)).collect();
        let targets: Vec<usize> = col_rows[pc]
            .iter()
            .copied()
            .filter(|&r| r != pr && row_alive[r])
            .collect();
        let mut overflow = false;
        for r in targets {
            let factor = rows[r][&pc] * pivot_val; // pivot_val in {1,-1}
            for &(c, v) in &pivot_row {
                let delta = match factor.checked_mul(v) {
                    Some(d) => d,
                    None => {
                        overflow = true;
                        break;
                    }
                };
                let entry = rows[r].entry(c).or_insert(0);
                let next = match entry.checked_sub(delta) {
                    Some(n) => n,
                    None => {
                        overflow = true;
                        break;
                    }
                };
                *entry = next;
                if next == 0 {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
            if overflow {
                break;
            }
        }
        if overflow {
            // hand everything still alive to the wide-integer dense pass
            break;
        }
        // retire the pivot row and column
        for (c, _) in rows[pr].drain() {
            col_rows[c].remove(&pr);
        }
        row_alive[pr] = false;
        col_alive[pc] = false;
        unit_rank += 1;
    }

    // Dense wide-integer phase on the remaining block.
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| row_alive[r]).collect();
    let live_cols: Vec<usize> = (0..m.cols)
        .filter(|&c| col_alive[c] && !col_rows[c].is_empty())
        .collect();
    let col_pos: HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense: Vec<Vec<BigInt>> =
        vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (&c, &v) in &rows[r] {
            dense[i][col_pos[&c]] = BigInt::from(v);
        }
    }
    let tail = dense_smith(dense);

    let mut divisors: Vec<u64> = vec![1; unit_rank];
    for d in &tail {
        let v = u64::try_from(d.magnitude().clone()).map_err(|_| Error::DivisorOverflow)?;
        divisors.push(v);
    }
    Ok(SmithForm {
        rank: unit_rank + tail.len(),
        divisors,
    })
}

/// Textbook Smith reduction over `BigInt`; returns the nonzero diagonal in
/// divisibility order.
fn dense_smith(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diagonal = Vec::new();
    let mut k = 0usize;
    while k < rows && k < cols {
        // move a minimal-magnitude nonzero entry of the trailing block to (k,k)
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if m[i][j].magnitude() < m[pi][pj].magnitude() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        // Each re-entry either strictly shrinks |m[k][k]| or makes progress
        // toward the divisibility condition, so this terminates.
        'reduce: loop {
            if m[k][k].is_negative() {
                for j in k..cols {
                    m[k][j] = -m[k][j].clone();
                }
            }
            // clear the pivot column below
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = &m[i][k] / &m[k][k];
                if !q.is_zero() {
                    for j in k..cols {
                        let sub = &q * &m[k][j];
                        m[i][j] -= sub;
                    }
                }
                if !m[i][k].is_zero() {
                    // remainder is strictly smaller than the pivot
                    m.swap(k, i);
                    continue 'reduce;
                }
            }
            // clear the pivot row to the right
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let q = &m[k][j] / &m[k][k];
                if !q.is_zero() {
                    for i in k..rows {
                        let sub = &q * &m[i][k];
                        m[i][j] -= sub;
                    }
                }
                if !m[k][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                    continue 'reduce;
                }
            }
            // enforce divisibility of the trailing block by the pivot
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if (&m[i][j] % &m[k][k]).is_zero() {
                        continue;
                    }
                    let row_i = m[i].clone();
                    for (jj, v) in row_i.into_iter().enumerate() {
                        m[k][jj] += v;
                    }
                    continue 'reduce;
                }
            }
            break;
        }
        diagonal.push(m[k][k].clone());
        k += 1;
    }
    diagonal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(dense: &[Vec<i64>]) -> SmithForm {
        smith_normal_form(&SparseIntMatrix::from_dense(dense)).unwrap()
    }

    /// Brute-force oracle: rank and divisors from gcds of k x k minors.
    /// Exponential; only for tiny matrices.
    fn minor_oracle(dense: &[Vec<i64>]) -> SmithForm {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        fn det(m: &[Vec<i128>]) -> i128 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0i128;
            for j in 0..n {
                let sub: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = m[0][j] * det(&sub);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
        fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        let mut dks = vec![1i128]; // d_0 = 1
        let maxk = rows.min(cols);
        for k in 1..=maxk {
            let mut g = 0i128;
            for ri in combinations(rows, k) {
                for ci in combinations(cols, k) {
                    let sub: Vec<Vec<i128>> = ri
                        .iter()
                        .map(|&r| ci.iter().map(|&c| dense[r][c] as i128).collect())
                        .collect();
                    let d = det(&sub).abs();
                    g = num_integer::gcd(g, d);
                }
            }
            if g == 0 {
                break;
            }
            dks.push(g);
        }
        let rank = dks.len() - 1;
        let divisors = (1..=rank).map(|k| (dks[k] / dks[k - 1]) as u64).collect();
        SmithForm { rank, divisors }
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(
            snf(&[vec![1, 0], vec![0, 1]]),
            SmithForm { rank: 2, divisors: vec![1, 1] }
        );
        assert_eq!(
            snf(&[vec![0, 0], vec![0, 0]]),
            SmithForm { rank: 0, divisors: vec![] }
        );
    }

    #[test]
    fn two_by_two_with_torsion() {
        // gcd of entries 2, |det| = 8 => divisors (2, 4)
        let got = snf(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(got, SmithForm { rank: 2, divisors: vec![2, 4] });
        assert_eq!(got, minor_oracle(&[vec![2, 4], vec![6, 8]]));
    }

    #[test]
    fn divisibility_chain_holds() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![6, 4, 2], vec![4, 4, 4], vec![2, 4, 6]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
            vec![vec![0, 5], vec![5, 0]],
            vec![vec![3]],
            vec![vec![-4, 2], vec![2, -4]],
        ];
        for dense in cases {
            let got = snf(&dense);
            for w in got.divisors.windows(2) {
                assert_eq!(w[1] % w[0], 0, "chain broken in {dense:?}: {got:?}");
            }
            assert_eq!(got, minor_oracle(&dense), "mismatch on {dense:?}");
        }
    }

    #[test]
    fn wide_and_tall_shapes() {
        let got = snf(&[vec![1, 0, 2, 0, 3]]);
        assert_eq!(got.rank, 1);
        let got = snf(&[vec![2], vec![4], vec![6]]);
        assert_eq!(got, SmithForm { rank: 1, divisors: vec![2] });
    }

    #[test]
    fn random_matrices_match_minor_oracle() {
        // deterministic pseudo-random small matrices
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let rows = (next() % 4 + 1) as usize;
            let cols = (next() % 4 + 1) as usize;
            let dense: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| (next() % 13) as i64 - 6).collect())
                .collect();
            assert_eq!(snf(&dense), minor_oracle(&dense), "mismatch on {dense:?}");
        }
    }
}
