//! Integer matrices and Smith normal form over arbitrary-precision integers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -core::mem::take(&mut self.data[idx]);
        }
    }

    fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -core::mem::take(&mut self.data[idx]);
        }
    }
}

/// Result of a full Smith decomposition `u * a * v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal of `d`: nonnegative, each nonzero entry divides the next.
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.u.add_row(dst, src, q);
        self.u_inv.add_col(src, dst, &-q);
    }
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.v.add_col(dst, src, q);
        self.v_inv.add_row(src, dst, &-q);
    }
    fn neg_row(&mut self, i: usize) {
        self.u.neg_row(i);
        self.u_inv.neg_col(i);
    }
}

/// Core elimination, optionally recording the transforms.
fn smith_in_place(a: &mut IntMatrix, mut tr: Option<&mut Transforms>) {
    let (m, n) = (a.rows, a.cols);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(tr) = tr.as_deref_mut() {
            tr.swap_rows(t, pi);
            tr.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.add_row(i, t, &q);
                }
                if !a.get(i, t).is_zero() {
                    a.swap_rows(t, i);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.swap_rows(t, i);
                    }
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.add_col(j, t, &q);
                }
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.swap_cols(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.neg_row(t);
            if let Some(tr) = tr.as_deref_mut() {
                tr.neg_row(t);
            }
        }
        t += 1;
    }
}

/// Full Smith decomposition with unimodular transforms.
pub fn smith(a: &IntMatrix) -> Smith {
    let mut d = a.clone();
    let mut tr = Transforms {
        u: IntMatrix::identity(a.rows),
        u_inv: IntMatrix::identity(a.rows),
        v: IntMatrix::identity(a.cols),
        v_inv: IntMatrix::identity(a.cols),
    };
    smith_in_place(&mut d, Some(&mut tr));
    let diag = (0..a.rows.min(a.cols)).map(|i| d.get(i, i).clone()).collect();
    Smith { diag, u: tr.u, u_inv: tr.u_inv, v: tr.v, v_inv: tr.v_inv }
}

/// Sparse integer matrix, used for large bar-resolution boundaries.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// row -> (col -> entry)
    pub entries: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        let e = self.entries[i].entry(j).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries[i].remove(&j);
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&j, &v) in row {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = SparseMatrix::new(self.rows, o.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&k, &a) in row {
                for (&j, &b) in &o.entries[k] {
                    out.add(i, j, a * b);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_empty())
    }
}

/// Diagonal of the Smith form (nonzero entries only, ascending), without
/// transforms. Unit pivots are eliminated sparsely first; the residual block
/// goes through the dense big-integer reduction.
pub fn invariant_factors(a: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, i64>> = a.entries.clone();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            cols[j].insert(i);
        }
    }
    let mut units = 0usize;
    let mut alive_rows: BTreeSet<usize> = (0..a.rows).filter(|&i| !rows[i].is_empty()).collect();
    let mut overflow = false;
    'outer: loop {
        // unit pivot with the sparsest row
        let mut pick: Option<(usize, usize, usize)> = None;
        for &i in &alive_rows {
            let len = rows[i].len();
            if pick.is_some_and(|(_, _, l)| l <= len) {
                continue;
            }
            if let Some((&j, _)) = rows[i].iter().find(|(_, v)| v.abs() == 1) {
                pick = Some((i, j, len));
                if len == 1 {
                    break;
                }
            }
        }
        let Some((pi, pj, _)) = pick else { break };
        let prow = rows[pi].clone();
        let pv = prow[&pj];
        let others: Vec<usize> = cols[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in others {
            let f = rows[i][&pj] * pv; // pv = ±1, so -f/pv == -f*pv
            for (&j, &v) in &prow {
                let Some(delta) = f.checked_mul(v) else {
                    overflow = true;
                    break 'outer;
                };
                let e = rows[i].entry(j).or_insert(0);
                let Some(nv) = e.checked_sub(delta) else {
                    overflow = true;
                    break 'outer;
                };
                *e = nv;
                if nv == 0 {
                    rows[i].remove(&j);
                    cols[j].remove(&i);
                } else {
                    cols[j].insert(i);
                }
            }
            if rows[i].is_empty() {
                alive_rows.remove(&i);
            }
        }
        for &j in prow.keys() {
            cols[j].remove(&pi);
        }
        rows[pi].clear();
        alive_rows.remove(&pi);
        units += 1;
    }
    if overflow {
        return dense_factors(&a.to_dense());
    }
    // residual block
    let live_cols: Vec<usize> = (0..a.cols).filter(|&j| !cols[j].is_empty()).collect();
    let live_rows: Vec<usize> = alive_rows.iter().copied().collect();
    let cidx: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut res = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &i) in live_rows.iter().enumerate() {
        for (&j, &v) in &rows[i] {
            res.set(k, cidx[&j], BigInt::from(v));
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_factors(&res));
    out.sort();
    out
}

fn dense_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    smith_in_place(&mut d, None);
    let mut out: Vec<BigInt> = (0..d.rows.min(d.cols)).map(|i| d.get(i, i).clone()).filter(|x| !x.is_zero()).collect();
    out.sort();
    out
}

/// Converts a factor to `u64`, `None` if it does not fit.
pub fn factor_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        let d: Vec<i64> = s.diag.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let prod = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(prod.get(i, j), &want);
            }
        }
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
    }

    #[test]
    fn sparse_factors_agree_with_dense() {
        let rows = [vec![1, 2, 0, 3], vec![0, 2, 4, 0], vec![3, 0, 2, 2], vec![0, 0, 0, 8]];
        let mut sp = SparseMatrix::new(4, 4);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if *v != 0 {
                    sp.add(i, j, *v);
                }
            }
        }
        let dense = dense_factors(&IntMatrix::from_rows(&rows));
        assert_eq!(invariant_factors(&sp), dense);
    }
}
