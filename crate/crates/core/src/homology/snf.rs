//! Exact rank and invariant factors of sparse integer matrices.
//!
//! Elimination runs in two phases. The sparse phase repeatedly pivots on a
//! unit entry (±1) in a column of minimal fill, which is exact over both the
//! integers and the rationals and contributes an invariant factor 1. Whatever
//! has no unit entry left is copied into a small dense big-integer matrix and
//! finished by a full Smith normal form (integers) or fraction-free Bareiss
//! elimination (rationals).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-major sparse integer matrix; every column is sorted by row.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, i64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order. Empty for
    /// rational reductions.
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Integers,
}

trait Scalar: Clone + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    fn unit(&self) -> bool;
    /// `a - f * b`, or `None` on overflow.
    fn mul_sub(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul_sub(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul_sub(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// Rank (and, over the integers, the non-unit invariant factors).
pub fn reduce(m: &SparseMatrix, field: Field) -> Reduction {
    let small: Vec<Vec<(u32, i64)>> = m.cols.clone();
    let (units, rest) = match sparse_phase(m.rows, small) {
        Ok(r) => r,
        Err(Overflow) => {
            let big = m.cols.iter().map(|c| c.iter().map(|(r, v)| (*r, BigInt::from(*v))).collect()).collect();
            match sparse_phase::<BigInt>(m.rows, big) {
                Ok(r) => r,
                Err(Overflow) => unreachable!("big integers do not overflow"),
            }
        }
    };
    if rest.is_empty() {
        return Reduction { rank: units, torsion: Vec::new() };
    }
    match field {
        Field::Rationals => Reduction { rank: units + bareiss_rank(rest), torsion: Vec::new() },
        Field::Integers => {
            let diag = smith_diagonal(rest);
            let mut torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
            torsion.sort();
            Reduction { rank: units + diag.len(), torsion }
        }
    }
}

/// Unit-pivot elimination. Returns the number of unit pivots and the dense
/// remainder (rows x cols) with no unit entries left.
fn sparse_phase<T: Scalar>(rows: usize, mut cols: Vec<Vec<(u32, T)>>) -> Result<(usize, Vec<Vec<BigInt>>), Overflow> {
    let ncols = cols.len();
    let mut alive = vec![true; ncols];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); rows];
    for (c, col) in cols.iter().enumerate() {
        for (r, _) in col {
            row_cols[*r as usize].push(c as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        cols.iter().enumerate().map(|(c, col)| Reverse((col.len(), c as u32))).collect();
    let mut stamp = vec![u32::MAX; ncols];
    let mut epoch = 0u32;
    let mut units = 0usize;
    while let Some(Reverse((nnz, c))) = heap.pop() {
        let c = c as usize;
        if !alive[c] || cols[c].len() != nnz {
            continue;
        }
        if nnz == 0 {
            alive[c] = false;
            continue;
        }
        let pivot =
            cols[c].iter().filter(|(_, v)| v.unit()).min_by_key(|(r, _)| (row_cols[*r as usize].len(), *r)).cloned();
        let Some((prow, pval)) = pivot else {
            // left for the dense phase unless a later update changes it
            continue;
        };
        epoch += 1;
        let others = std::mem::take(&mut row_cols[prow as usize]);
        let pivot_col = std::mem::take(&mut cols[c]);
        alive[c] = false;
        for &o in &others {
            let o = o as usize;
            if o == c || !alive[o] || stamp[o] == epoch {
                continue;
            }
            stamp[o] = epoch;
            let Ok(pos) = cols[o].binary_search_by_key(&prow, |(r, _)| *r) else {
                continue;
            };
            // factor = a / p = a * p for a unit p
            let factor = T::mul(&cols[o][pos].1, &pval).ok_or(Overflow)?;
            let merged = axpy(&cols[o], &factor, &pivot_col, &mut row_cols, o as u32)?;
            cols[o] = merged;
            heap.push(Reverse((cols[o].len(), o as u32)));
        }
        units += 1;
    }
    // dense remainder
    let rest: Vec<usize> = (0..ncols).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    if rest.is_empty() {
        return Ok((units, Vec::new()));
    }
    let mut used_rows: Vec<u32> = rest.iter().flat_map(|&c| cols[c].iter().map(|(r, _)| *r)).collect();
    used_rows.sort_unstable();
    used_rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); rest.len()]; used_rows.len()];
    for (j, &c) in rest.iter().enumerate() {
        for (r, v) in &cols[c] {
            let i = used_rows.binary_search(r).unwrap();
            dense[i][j] = v.to_big();
        }
    }
    Ok((units, dense))
}

/// `target - factor * pivot` for sorted sparse columns; registers new rows
/// of `col_id` in `row_cols`.
fn axpy<T: Scalar>(
    target: &[(u32, T)],
    factor: &T,
    pivot: &[(u32, T)],
    row_cols: &mut [Vec<u32>],
    col_id: u32,
) -> Result<Vec<(u32, T)>, Overflow> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ri = target.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let rj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ri < rj {
            out.push(target[i].clone());
            i += 1;
        } else if rj < ri {
            let v = T::mul(factor, &pivot[j].1).ok_or(Overflow)?.neg().ok_or(Overflow)?;
            row_cols[rj as usize].push(col_id);
            out.push((rj, v));
            j += 1;
        } else {
            let v = T::mul_sub(&target[i].1, factor, &pivot[j].1).ok_or(Overflow)?;
            if !v.vanishes() {
                out.push((ri, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Nonzero diagonal of the Smith normal form, as positive integers in
/// divisibility order.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                        *x -= &q * p;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().skip(t) {
                        let p = row[t].clone();
                        row[j] -= &q * &p;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                }
                if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let piv = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank over the rationals by fraction-free Gaussian elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in col + 1..n {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn sparse(rows: &[&[i64]]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i as u32, rows[i][j])).collect())
            .collect();
        SparseMatrix { rows: nrows, cols }
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(
            smith_diagonal(big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        // diag(2, 3) has invariant factors 1, 6
        assert_eq!(smith_diagonal(big(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn bareiss_matches_known_ranks() {
        assert_eq!(bareiss_rank(big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(big(&[&[0, 2, 1], &[0, 4, 2], &[3, 0, 0]])), 2);
        assert_eq!(bareiss_rank(big(&[&[2, 0], &[0, 3]])), 2);
    }

    #[test]
    fn reduce_mixes_phases() {
        let m = sparse(&[&[1, 1, 0], &[0, 2, 2], &[0, 0, 2]]);
        let z = reduce(&m, Field::Integers);
        assert_eq!(z.rank, 3);
        assert_eq!(z.torsion, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(reduce(&m, Field::Rationals).rank, 3);
        let zero = sparse(&[&[0, 0], &[0, 0]]);
        assert_eq!(reduce(&zero, Field::Integers).rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 2;
        let m = sparse(&[&[1, huge], &[1, -huge]]);
        let z = reduce(&m, Field::Integers);
        assert_eq!(z.rank, 2);
        assert_eq!(z.torsion, vec![BigInt::from(huge) * 2]);
    }
}
