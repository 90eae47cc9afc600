//! Smith normal form of sparse integer matrices.
//!
//! Boundary matrices of order complexes are large, very sparse and almost
//! entirely `±1`. Elimination therefore runs in two phases: a sparse phase
//! that only pivots on unit entries (Markowitz-style, shortest row first,
//! sparsest column second), and a dense phase over arbitrary-precision
//! integers for the leftover block, pivoting on the entry of smallest
//! absolute value. The sparse phase works in `i64` with checked arithmetic
//! and restarts in `BigInt` if anything overflows.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Row-major sparse integer matrix; rows are sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn with_cols(cols: usize) -> Self {
        Self::new(0, cols)
    }

    /// Appends a row given as `(column, value)` pairs in any order;
    /// duplicates are summed and zeros dropped.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (u32, i64)>) {
        let mut row: BTreeMap<u32, i64> = BTreeMap::new();
        for (c, v) in entries {
            assert!((c as usize) < self.cols, "column {c} out of range");
            *row.entry(c).or_insert(0) += v;
        }
        self.data.push(row.into_iter().filter(|&(_, v)| v != 0).collect());
        self.rows += 1;
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::with_cols(cols);
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c as u32, v)));
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Result<Self> {
        let mut per_row: Vec<Vec<(u32, i64)>> = vec![Vec::new(); rows];
        for &(i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Parse(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            per_row[i].push((j as u32, v));
        }
        let mut m = Self::with_cols(cols);
        for r in per_row {
            m.push_row(r);
        }
        Ok(m)
    }

    /// Parses the sparse triplet text format: a `rows cols` header followed
    /// by `row col value` lines, zero-based; `#` starts a comment.
    pub fn parse_triplets(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let mut triplets = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad entry `{line}`")));
            }
            let bad = || Error::Parse(format!("bad entry `{line}`"));
            triplets.push((
                parts[0].parse().map_err(|_| bad())?,
                parts[1].parse().map_err(|_| bad())?,
                parts[2].parse().map_err(|_| bad())?,
            ));
        }
        Self::from_triplets(dims[0], dims[1], &triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.data[i]
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.data
            .iter()
            .map(|r| {
                let mut d = vec![0; self.cols];
                for &(c, v) in r {
                    d[c as usize] = v;
                }
                d
            })
            .collect()
    }
}

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub invariant_factors: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Coeff: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn unit_sign(&self) -> Option<i64>;
    /// `a - f * b`
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn unit_sign(&self) -> Option<i64> {
        matches!(*self, 1 | -1).then_some(*self)
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
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

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit_sign(&self) -> Option<i64> {
        if self.is_one() {
            Some(1)
        } else if (-self).is_one() {
            Some(-1)
        } else {
            None
        }
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
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

type Row<C> = Vec<(u32, C)>;

/// `target - f * pivot`, reporting column occupancy changes.
fn combine<C: Coeff>(
    target: &Row<C>,
    f: &C,
    pivot: &Row<C>,
    col_count: &mut [usize],
    added: &mut Vec<u32>,
) -> Option<Row<C>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(u32::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = C::mul(f, &pivot[j].1)?.neg()?;
            col_count[cj as usize] += 1;
            added.push(cj);
            out.push((cj, v));
            j += 1;
        } else {
            let v = C::sub_mul(&target[i].1, f, &pivot[j].1)?;
            if v.is_nil() {
                col_count[ci as usize] -= 1;
            } else {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Sparse unit-pivot elimination. Returns the number of unit pivots and the
/// rows that remain, or `None` on overflow.
fn unit_phase<C: Coeff>(m: &SparseIntMatrix) -> Option<(usize, Vec<Row<C>>)> {
    let mut rows: Vec<Option<Row<C>>> =
        m.data.iter().map(|r| Some(r.iter().map(|&(c, v)| (c, C::from_i64(v))).collect())).collect();
    let mut col_count = vec![0usize; m.cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    let mut heap = BinaryHeap::new();
    for (i, r) in m.data.iter().enumerate() {
        for &(c, _) in r {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(i as u32);
        }
        if !r.is_empty() {
            heap.push(Reverse((r.len(), i as u32)));
        }
    }
    let mut rank = 0;
    let mut added = Vec::new();
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        let Some(row) = rows[r].as_ref() else { continue };
        if row.len() != len {
            continue;
        }
        let pivot = row.iter().filter_map(|(c, v)| v.unit_sign().map(|s| (col_count[*c as usize], *c, s))).min();
        let Some((_, pc, sign)) = pivot else { continue };
        let prow = rows[r].take().expect("live row");
        let members = std::mem::take(&mut col_rows[pc as usize]);
        for r2 in members {
            let r2 = r2 as usize;
            if r2 == r {
                continue;
            }
            let Some(target) = rows[r2].as_ref() else { continue };
            let Ok(pos) = target.binary_search_by_key(&pc, |e| e.0) else { continue };
            let f = C::mul(&target[pos].1, &C::from_i64(sign))?;
            added.clear();
            let new_row = combine(target, &f, &prow, &mut col_count, &mut added)?;
            for &c in &added {
                col_rows[c as usize].push(r2 as u32);
            }
            if new_row.is_empty() {
                rows[r2] = None;
            } else {
                heap.push(Reverse((new_row.len(), r2 as u32)));
                rows[r2] = Some(new_row);
            }
        }
        for (c, _) in &prow {
            col_count[*c as usize] -= 1;
        }
        rank += 1;
    }
    Some((rank, rows.into_iter().flatten().collect()))
}

/// Diagonalizes a dense matrix by row and column operations, pivoting on the
/// smallest absolute value; returns the absolute diagonal entries.
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() {
                    let av = v.abs();
                    if best.as_ref().is_none_or(|b| av < b.0) {
                        best = Some((av, i, j));
                    }
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    let pivot_row = &head[t];
                    for (x, p) in tail[0].iter_mut().zip(pivot_row).skip(t) {
                        *x -= &q * p;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let p = row[t].clone();
                        row[j] -= &q * p;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Turns a list of nonzero diagonal entries into invariant factors.
fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort();
    d
}

fn finish<C: Coeff>(ncols: usize, units: usize, rest: Vec<Row<C>>) -> SmithForm {
    let mut used: Vec<u32> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let col_pos = |c: u32| used.binary_search(&c).expect("used column");
    let dense: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); used.len()];
            for (c, v) in r {
                d[col_pos(*c)] = v.to_big();
            }
            d
        })
        .collect();
    debug_assert!(used.len() <= ncols);
    let tail = normalize(dense_diagonal(dense));
    let mut factors = vec![BigInt::one(); units];
    factors.extend(tail);
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

/// Rank and invariant factors of an integer matrix.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    match unit_phase::<i64>(m) {
        Some((units, rest)) => finish(m.cols, units, rest),
        None => {
            let (units, rest) = unit_phase::<BigInt>(m).expect("bigint arithmetic cannot overflow");
            finish(m.cols, units, rest)
        }
    }
}
