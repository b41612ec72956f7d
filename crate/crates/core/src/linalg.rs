//! Exact dense linear algebra over the Gaussian rationals.
//!
//! Everything canonicalizes through reduced row echelon form: pivots are 1,
//! pivot columns are cleared, rows are ordered by pivot column. Two row
//! spaces are equal exactly when their canonical bases are literally equal.

use crate::scalar::Scalar;

pub(crate) type Row = Vec<Scalar>;

/// A row space kept in reduced row echelon form at all times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RowSpace {
    ncols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Row>>(ncols: usize, rows: I) -> Self {
        let mut space = RowSpace::new(ncols);
        for row in rows {
            space.insert(row);
        }
        space
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds a row, returns whether the rank grew.
    pub fn insert(&mut self, mut row: Row) -> bool {
        assert_eq!(row.len(), self.ncols, "row width mismatch");
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for j in p..self.ncols {
                    row[j] = &row[j] - &(&c * &r[j]);
                }
            }
        }
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("pivot is nonzero");
        for v in row.iter_mut().skip(p) {
            *v = &*v * &inv;
        }
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for j in p..self.ncols {
                    r[j] = &r[j] - &(&c * &row[j]);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, row);
        self.pivots.insert(at, p);
        true
    }

    /// Residual of a row after eliminating every pivot coordinate.
    pub fn reduce(&self, row: &Row) -> Row {
        let mut out = row.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for j in p..self.ncols {
                    out[j] = &out[j] - &(&c * &r[j]);
                }
            }
        }
        out
    }

    pub fn contains(&self, row: &Row) -> bool {
        self.reduce(row).iter().all(Scalar::is_zero)
    }

    /// Coefficients of `row` over the canonical basis, if it lies in the space.
    pub fn coords_of(&self, row: &Row) -> Option<Vec<Scalar>> {
        let mut out = row.clone();
        let mut coeffs = vec![Scalar::zero(); self.rows.len()];
        for (k, (r, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for j in p..self.ncols {
                    out[j] = &out[j] - &(&c * &r[j]);
                }
                coeffs[k] = c;
            }
        }
        if out.iter().all(Scalar::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// Canonical basis of the right kernel: all x with (each row) . x = 0.
pub(crate) fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let space = RowSpace::from_rows(ncols, rows.iter().cloned());
    let mut is_pivot = vec![false; ncols];
    for &p in space.pivots() {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (r, &p) in space.rows().iter().zip(space.pivots()) {
            v[p] = -&r[f];
        }
        out.push(v);
    }
    out
}

pub(crate) fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            let mut row = vec![Scalar::zero(); n];
            row[i] = Scalar::one();
            row
        })
        .collect()
}

pub(crate) fn matmul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let n = a.len();
    let inner = b.len();
    let m = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        assert_eq!(a[i].len(), inner, "matrix shape mismatch");
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

pub(crate) fn matvec(a: &[Row], v: &[Scalar]) -> Row {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}

/// Row vector times matrix.
pub(crate) fn vecmat(v: &[Scalar], a: &[Row]) -> Row {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![Scalar::zero(); m];
    for (x, row) in v.iter().zip(a) {
        if x.is_zero() {
            continue;
        }
        for j in 0..m {
            out[j] = &out[j] + &(x * &row[j]);
        }
    }
    out
}

pub(crate) fn trace(a: &[Row]) -> Scalar {
    a.iter()
        .enumerate()
        .fold(Scalar::zero(), |acc, (i, row)| &acc + &row[i])
}

pub(crate) fn invert(m: &[Row]) -> Option<Vec<Row>> {
    let n = m.len();
    let mut space = RowSpace::new(2 * n);
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n, "inverting a nonsquare matrix");
        let mut aug = row.clone();
        aug.resize(2 * n, Scalar::zero());
        aug[n + i] = Scalar::one();
        space.insert(aug);
    }
    if space.pivots() != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(
        space
            .rows()
            .iter()
            .map(|row| row[n..].to_vec())
            .collect(),
    )
}
