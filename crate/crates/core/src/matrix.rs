//! Dense matrices over an exact coefficient field, with Gaussian
//! elimination for rank, reduced row echelon form, and linear solving.
//!
//! Pivoting picks the first nonzero entry; there are no magnitude
//! heuristics because the arithmetic is exact.

use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

impl DenseMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        DenseMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from integer literals; convenient for fixtures.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        let entries = entries.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, rows, cols, entries)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        assert!(i < self.rows, "row index out of range");
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        assert!(j < self.cols, "column index out of range");
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(a, other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = f.add(&acc, &f.mul(a, &v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Submatrix over the given row and column index sets (in order).
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> DenseMatrix {
        let mut out = Self::zeros(self.field, row_idx.len(), col_idx.len());
        for (i, &ri) in row_idx.iter().enumerate() {
            for (j, &cj) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(ri, cj).clone());
            }
        }
        out
    }

    /// Concatenate matrices horizontally; all must share the row count.
    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&DenseMatrix]) -> DenseMatrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "row count mismatch in hstack");
            assert_eq!(m.field, field, "field mismatch in hstack");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    /// Concatenate matrices vertically; all must share the column count.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&DenseMatrix]) -> DenseMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "column count mismatch in vstack");
            assert_eq!(m.field, field, "field mismatch in vstack");
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank over the coefficient field.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// One solution of `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // a row reduced to [0 .. 0 | nonzero]
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl std::fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// Independent rank oracle: eliminate columns right-to-left with
    /// last-nonzero pivoting, counting nonzero rows at the end.
    fn rank_by_reverse_elimination(m: &DenseMatrix) -> usize {
        let f = m.field();
        let mut w = m.clone();
        let mut bound = w.rows(); // rows below are already consumed
        for c in (0..w.cols()).rev() {
            let Some(pr) = (0..bound).rev().find(|&i| !w.get(i, c).is_zero()) else {
                continue;
            };
            let last = bound - 1;
            if pr != last {
                for j in 0..w.cols() {
                    let a = w.get(last, j).clone();
                    let b = w.get(pr, j).clone();
                    w.set(last, j, b);
                    w.set(pr, j, a);
                }
            }
            let pivot_inv = f.inv(w.get(last, c));
            for i in 0..last {
                if w.get(i, c).is_zero() {
                    continue;
                }
                let factor = f.mul(w.get(i, c), &pivot_inv);
                for j in 0..w.cols() {
                    let v = f.sub(w.get(i, j), &f.mul(&factor, w.get(last, j)));
                    w.set(i, j, v);
                }
            }
            bound -= 1;
        }
        (0..w.rows())
            .filter(|&i| (0..w.cols()).any(|j| !w.get(i, j).is_zero()))
            .count()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(DenseMatrix::from_i64(f2(), 1, 2, &[1, 1]).rank(), 1);
        assert_eq!(DenseMatrix::zeros(q(), 3, 4).rank(), 0);
        assert_eq!(DenseMatrix::zeros(f2(), 0, 5).rank(), 0);
        assert_eq!(DenseMatrix::identity(q(), 4).rank(), 4);
        // row 3 = row 1 + row 2
        let m = DenseMatrix::from_i64(q(), 3, 3, &[1, 2, 3, 4, 5, 6, 5, 7, 9]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_empty_systems() {
        let a = DenseMatrix::zeros(f2(), 2, 0);
        assert_eq!(a.solve(&[f2().zero(), f2().zero()]), Some(vec![]));
        assert_eq!(a.solve(&[f2().one(), f2().one()]), None);
        let b = DenseMatrix::zeros(f2(), 0, 3);
        assert_eq!(b.solve(&[]), Some(vec![f2().zero(); 3]));
    }

    #[test]
    fn solve_column_of_ones_over_f2() {
        // rows of degree >= (2,0) against the first generator column
        let a = DenseMatrix::from_i64(f2(), 2, 1, &[1, 1]);
        let b = vec![f2().one(), f2().one()];
        let x = a.solve(&b).unwrap();
        assert_eq!(x, vec![f2().one()]);
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = DenseMatrix::from_i64(q(), 2, 1, &[1, 1]);
        assert!(a.solve(&[q().from_i64(1), q().from_i64(2)]).is_none());
    }

    #[test]
    fn rref_is_reduced() {
        let m = DenseMatrix::from_i64(q(), 3, 4, &[2, 4, 1, 8, 1, 2, 0, 3, 0, 0, 1, 2]);
        let (r, pivots) = m.rref();
        for (ri, &c) in pivots.iter().enumerate() {
            assert!(r.get(ri, c).is_one());
            for i in 0..r.rows() {
                if i != ri {
                    assert!(r.get(i, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn huge_rationals_eliminate_exactly() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let big = BigInt::from(2u32).pow(256);
        let f = q();
        // [[2^256, 1], [1, 2^-256]] has rank 1: the rows are proportional.
        let m = DenseMatrix::new(
            f,
            2,
            2,
            vec![
                Scalar::Rat(BigRational::from_integer(big.clone())),
                f.one(),
                f.one(),
                Scalar::Rat(BigRational::new(BigInt::from(1), big)),
            ],
        );
        assert_eq!(m.rank(), 1);
    }

    fn small_matrix(
        field: FieldSpec,
        rows: usize,
        cols: usize,
    ) -> impl Strategy<Value = DenseMatrix> {
        prop::collection::vec(-4i64..=4, rows * cols)
            .prop_map(move |v| DenseMatrix::from_i64(field, rows, cols, &v))
    }

    proptest! {
        #[test]
        fn rank_matches_transpose_and_reverse_oracle(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(FieldSpec::Rationals, r, c))) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), rank_by_reverse_elimination(&m));
        }

        #[test]
        fn rank_oracle_over_f5(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(FieldSpec::prime(5).unwrap(), r, c))) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), rank_by_reverse_elimination(&m));
        }

        #[test]
        fn solutions_verify_exactly(
            m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(FieldSpec::Rationals, r, c)),
            v in prop::collection::vec(-4i64..=4, 0..5),
        ) {
            // build a consistent right-hand side, then re-check the witness
            let x: Vec<Scalar> = v.iter().take(m.cols()).map(|&t| m.field().from_i64(t)).collect();
            if x.len() == m.cols() {
                let b = m.mul_vec(&x);
                let got = m.solve(&b).expect("consistent system must be solvable");
                prop_assert_eq!(m.mul_vec(&got), b);
            }
        }
    }
}
