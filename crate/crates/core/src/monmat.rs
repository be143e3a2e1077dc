//! Monomial matrices: field-valued matrices with degree labels on rows
//! (cogenerator degrees) and columns (generator degrees), nonzero only
//! where the row degree dominates the column degree.
//!
//! A monomial matrix represents a graded map from a free module (one
//! summand per column, shifted by the generator degree) into a cofree
//! module (one shifted copy of the graded dual of the ring per row); its
//! image is the module it presents.

use crate::degree::{box_degrees, Degree};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::module::GradedModuleData;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonomialMatrixError {
    #[error(
        "support condition violated at entries {0:?} (row degree must dominate column degree)"
    )]
    SupportViolations(Vec<(usize, usize)>),
    #[error("bounding box misses nonzero image dimension at {0}")]
    BoxTooSmall(Degree),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialMatrix {
    n: usize,
    row_degrees: Vec<Degree>,
    col_degrees: Vec<Degree>,
    entries: DenseMatrix,
}

impl MonomialMatrix {
    pub fn new(
        n: usize,
        row_degrees: Vec<Degree>,
        col_degrees: Vec<Degree>,
        entries: DenseMatrix,
    ) -> Self {
        assert_eq!(entries.rows(), row_degrees.len(), "row label count");
        assert_eq!(entries.cols(), col_degrees.len(), "column label count");
        assert!(
            row_degrees.iter().chain(&col_degrees).all(|d| d.len() == n),
            "degree arity mismatch"
        );
        MonomialMatrix {
            n,
            row_degrees,
            col_degrees,
            entries,
        }
    }

    /// The empty 0x0 matrix.
    pub fn empty(field: FieldSpec, n: usize) -> Self {
        Self::new(n, Vec::new(), Vec::new(), DenseMatrix::zeros(field, 0, 0))
    }

    pub fn field(&self) -> FieldSpec {
        self.entries.field()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[Degree] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[Degree] {
        &self.col_degrees
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    /// Check the support condition `a_ij = 0 unless row_i >= col_j`;
    /// violations are listed as (row, column) pairs.
    pub fn validate(&self) -> Result<(), MonomialMatrixError> {
        let mut bad = Vec::new();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if !self.entries.get(i, j).is_zero()
                    && !self.col_degrees[j].leq(&self.row_degrees[i])
                {
                    bad.push((i, j));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(MonomialMatrixError::SupportViolations(bad))
        }
    }

    /// Matlis dual: transpose the entries and negate both label families,
    /// swapping their roles. An involution; the result always satisfies
    /// the support condition because negation reverses the order.
    pub fn matlis_dual(&self) -> MonomialMatrix {
        MonomialMatrix::new(
            self.n,
            self.col_degrees.iter().map(Degree::negate).collect(),
            self.row_degrees.iter().map(Degree::negate).collect(),
            self.entries.transpose(),
        )
    }

    /// Truncation at column `j0`: the columns with degree dominated by
    /// `col_j0` (except `j0` itself, returned as the second component, in
    /// ascending index order), each multiplied up to degree `col_j0`. The
    /// multiplication annihilates every row whose degree does not dominate
    /// `col_j0`, so those rows are zeroed.
    pub fn trunc(&self, j0: usize) -> (DenseMatrix, Vec<usize>) {
        assert!(j0 < self.ncols(), "column index out of range");
        let b0 = &self.col_degrees[j0];
        let selected: Vec<usize> = (0..self.ncols())
            .filter(|&j| j != j0 && self.col_degrees[j].leq(b0))
            .collect();
        let f = self.field();
        let mut out = DenseMatrix::zeros(f, self.nrows(), selected.len());
        for i in 0..self.nrows() {
            if !b0.leq(&self.row_degrees[i]) {
                continue; // annihilated by the shift into degree col_j0
            }
            for (t, &j) in selected.iter().enumerate() {
                out.set(i, t, self.entries.get(i, j).clone());
            }
        }
        (out, selected)
    }

    /// Remove column `j` and its label; everything else is unchanged.
    pub fn remove_column(&self, j: usize) -> MonomialMatrix {
        assert!(j < self.ncols(), "column index out of range");
        let keep: Vec<usize> = (0..self.ncols()).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    /// Keep exactly the given columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> MonomialMatrix {
        let all_rows: Vec<usize> = (0..self.nrows()).collect();
        MonomialMatrix::new(
            self.n,
            self.row_degrees.clone(),
            keep.iter().map(|&j| self.col_degrees[j].clone()).collect(),
            self.entries.submatrix(&all_rows, keep),
        )
    }

    /// Row indices whose degree dominates `g` and column indices whose
    /// degree is dominated by `g`: the support of the degree-g component.
    fn degree_component(&self, g: &Degree) -> (Vec<usize>, Vec<usize>) {
        let rows = (0..self.nrows())
            .filter(|&i| g.leq(&self.row_degrees[i]))
            .collect();
        let cols = (0..self.ncols())
            .filter(|&j| self.col_degrees[j].leq(g))
            .collect();
        (rows, cols)
    }

    /// Dimension of the degree-g component of the image: the rank of the
    /// submatrix over rows dominating `g` and columns dominated by `g`.
    pub fn image_dim(&self, g: &Degree) -> usize {
        let (rows, cols) = self.degree_component(g);
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        self.entries.submatrix(&rows, &cols).rank()
    }

    /// Componentwise (min column degree, max row degree): outside this box
    /// the image vanishes. `None` when there are no rows or no columns.
    pub fn natural_box(&self) -> Option<(Degree, Degree)> {
        let mut cols = self.col_degrees.iter();
        let mut lo = cols.next()?.clone();
        for d in cols {
            lo = lo.meet(d);
        }
        let mut rows = self.row_degrees.iter();
        let mut hi = rows.next()?.clone();
        for d in rows {
            hi = hi.join(d);
        }
        Some((lo, hi))
    }

    /// Materialize the image as graded module data over the box `[lo, hi]`.
    ///
    /// Per degree the component basis is the reduced column echelon basis
    /// of the degree component's column space, expressed in the ambient
    /// coordinates indexed by the rows dominating the degree; structure
    /// maps project onto the rows dominating the shifted degree and are
    /// re-expressed in the target basis by exact solving.
    pub fn image_module(
        &self,
        lo: &Degree,
        hi: &Degree,
    ) -> Result<GradedModuleData, MonomialMatrixError> {
        let f = self.field();
        // the image must vanish on the shell just outside the box
        for g in box_degrees(lo, hi) {
            for axis in 0..self.n {
                for neighbor in [
                    g.add(&Degree::unit(self.n, axis)),
                    g.sub(&Degree::unit(self.n, axis)),
                ] {
                    let inside = lo.leq(&neighbor) && neighbor.leq(hi);
                    if !inside && self.image_dim(&neighbor) > 0 {
                        return Err(MonomialMatrixError::BoxTooSmall(neighbor));
                    }
                }
            }
        }

        // reduced column echelon basis per degree: rref of the transpose,
        // nonzero rows transposed back to columns over the ambient rows
        let mut bases: BTreeMap<Degree, (Vec<usize>, DenseMatrix)> = BTreeMap::new();
        for g in box_degrees(lo, hi) {
            let (rows, cols) = self.degree_component(&g);
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let sub = self.entries.submatrix(&rows, &cols);
            let (reduced, pivots) = sub.transpose().rref();
            if pivots.is_empty() {
                continue;
            }
            let basis_rows: Vec<usize> = (0..pivots.len()).collect();
            let all_cols: Vec<usize> = (0..reduced.cols()).collect();
            let basis = reduced.submatrix(&basis_rows, &all_cols).transpose();
            bases.insert(g.clone(), (rows, basis));
        }

        let mut components = BTreeMap::new();
        for (g, (_, basis)) in &bases {
            components.insert(g.clone(), basis.cols());
        }
        let mut maps = BTreeMap::new();
        for (g, (rows, basis)) in &bases {
            for axis in 0..self.n {
                let target = g.add(&Degree::unit(self.n, axis));
                let Some((target_rows, target_basis)) = bases.get(&target) else {
                    continue;
                };
                // position of each target ambient row within the source rows
                let positions: Vec<usize> = target_rows
                    .iter()
                    .map(|ri| {
                        rows.binary_search(ri)
                            .expect("rows dominating g+e also dominate g")
                    })
                    .collect();
                let mut mat = DenseMatrix::zeros(f, target_basis.cols(), basis.cols());
                for bj in 0..basis.cols() {
                    let projected: Vec<Scalar> = positions
                        .iter()
                        .map(|&pos| basis.get(pos, bj).clone())
                        .collect();
                    let coords = target_basis
                        .solve(&projected)
                        .expect("image of a component must land in the next component");
                    for (bi, v) in coords.into_iter().enumerate() {
                        mat.set(bi, bj, v);
                    }
                }
                maps.insert((g.clone(), axis), mat);
            }
        }
        Ok(GradedModuleData::from_parts(f, self.n, components, maps))
    }

    /// True iff no column is a combination of the other columns of
    /// dominated degree, shifted up to its degree: for every column the
    /// truncated linear system is infeasible.
    pub fn is_generator_minimal(&self) -> bool {
        (0..self.ncols()).all(|j0| self.column_dependence(j0, None).is_none())
    }

    /// True iff generator-minimal on both sides of Matlis duality.
    pub fn is_minimal(&self) -> bool {
        self.is_generator_minimal() && self.matlis_dual().is_generator_minimal()
    }

    /// Solve for column `j0` against the truncation, restricted to the
    /// rows dominating its degree; `alive` masks the candidate columns.
    /// Returns the witness coefficients paired with column indices.
    pub(crate) fn column_dependence(
        &self,
        j0: usize,
        alive: Option<&[bool]>,
    ) -> Option<Vec<(usize, Scalar)>> {
        let b0 = &self.col_degrees[j0];
        let selected: Vec<usize> = (0..self.ncols())
            .filter(|&j| j != j0 && alive.is_none_or(|a| a[j]) && self.col_degrees[j].leq(b0))
            .collect();
        let rows: Vec<usize> = (0..self.nrows())
            .filter(|&i| b0.leq(&self.row_degrees[i]))
            .collect();
        let system = self.entries.submatrix(&rows, &selected);
        let target: Vec<Scalar> = rows
            .iter()
            .map(|&i| self.entries.get(i, j0).clone())
            .collect();
        let solution = system.solve(&target)?;
        Some(
            selected
                .into_iter()
                .zip(solution)
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    /// Rows and columns stably sorted by (degree lex, original index),
    /// entries permuted accordingly.
    pub fn canonicalize(&self) -> MonomialMatrix {
        let mut row_perm: Vec<usize> = (0..self.nrows()).collect();
        row_perm.sort_by_key(|&i| self.row_degrees[i].clone());
        let mut col_perm: Vec<usize> = (0..self.ncols()).collect();
        col_perm.sort_by_key(|&j| self.col_degrees[j].clone());
        MonomialMatrix::new(
            self.n,
            row_perm
                .iter()
                .map(|&i| self.row_degrees[i].clone())
                .collect(),
            col_perm
                .iter()
                .map(|&j| self.col_degrees[j].clone())
                .collect(),
            self.entries.submatrix(&row_perm, &col_perm),
        )
    }
}
