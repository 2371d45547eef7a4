//! Dense matrices over `F_p` and Gaussian elimination.

use crate::field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v % field.characteristic());
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// `row[target] -= factor * row[source]`, columns from `start` on.
    fn eliminate(&mut self, target: usize, source: usize, factor: u64, start: usize) {
        let f = self.field;
        let cols = self.cols;
        let (src, dst) = if source < target {
            let (lo, hi) = self.data.split_at_mut(target * cols);
            (&lo[source * cols..source * cols + cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(source * cols);
            (&hi[..cols], &mut lo[target * cols..target * cols + cols])
        };
        for c in start..cols {
            if src[c] != 0 {
                dst[c] = f.sub(dst[c], f.mul(factor, src[c]));
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, factor);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(self.get(row, col)).expect("nonzero pivot");
            self.scale_row(row, inv);
            for r in 0..self.rows {
                if r != row {
                    let factor = self.get(r, col);
                    if factor != 0 {
                        self.eliminate(r, row, factor, col);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
            for r in row + 1..m.rows {
                let v = m.get(r, col);
                if v != 0 {
                    m.eliminate(r, row, f.mul(v, inv), col);
                }
            }
            row += 1;
        }
        row
    }

    /// Some `x` with `self * x = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for (r, &b) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b % self.field.characteristic());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        let f = self.field;
        (0..self.rows).map(|r| (0..self.cols).fold(0, |acc, c| f.add(acc, f.mul(self.get(r, c), x[c])))).collect()
    }

    /// Rows and columns reordered: entry `(i, j)` of the result is
    /// `self[row_perm[i], col_perm[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, self.rows, self.cols);
        for (i, &r) in row_perm.iter().enumerate() {
            for (j, &c) in col_perm.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }
}
